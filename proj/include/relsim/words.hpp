#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace relsim {

// An ordered pair of lowercase word tokens. The relation between a and b is
// what the engine models; (a, b) and (b, a) are distinct.
struct WordPair {
    std::string a;
    std::string b;

    WordPair() = default;
    WordPair(std::string a_, std::string b_) : a(std::move(a_)), b(std::move(b_)) {}

    WordPair reversed() const { return WordPair(b, a); }

    bool operator==(const WordPair& o) const { return a == o.a && b == o.b; }
    bool operator<(const WordPair& o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

// Validates lowercase/nonempty/distinct members; throws parse errors with
// `context` in the message.
WordPair make_word_pair(std::string_view a, std::string_view b, const std::string& context = "");

// Parses "wordA:wordB".
WordPair parse_word_pair(std::string_view text, const std::string& context = "");

struct WordPairHash {
    std::size_t operator()(const WordPair& p) const;
};

bool is_ascii_alpha(char c);
bool is_all_alpha(std::string_view s);
std::string to_lower(std::string_view s);

// Suffix set used when matching a query word against corpus tokens.
// "quart" matches "quart" and "quarts" but not "quarterly".
inline constexpr std::array<std::string_view, 7> kMatchSuffixes = {
    "s", "es", "ed", "ing", "ly", "er", "ers"};

// True iff token == word or token == word + s for a suffix s in kMatchSuffixes.
bool suffix_insensitive_match(std::string_view word, std::string_view token);

// word plus all its suffix variants, in a fixed order.
std::vector<std::string> suffix_variants(std::string_view word);

// 64-bit FNV-1a, used for cache keys and content fingerprints.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull);
std::string hash_hex(std::uint64_t h);

}  // namespace relsim
