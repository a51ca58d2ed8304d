#include "relsim/words.hpp"

#include <cctype>

#include "relsim/errors.hpp"

namespace relsim {

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_all_alpha(std::string_view s) {
    for (char c : s)
        if (!is_ascii_alpha(c)) return false;
    return !s.empty();
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

WordPair make_word_pair(std::string_view a, std::string_view b, const std::string& context) {
    std::string la = to_lower(a);
    std::string lb = to_lower(b);
    auto fail = [&](const std::string& why) -> Error {
        std::string where = context.empty() ? "" : (context + ": ");
        return parse_error(where + "bad word pair '" + std::string(a) + ":" + std::string(b) + "' (" + why + ")");
    };
    if (la.empty() || lb.empty()) throw fail("empty member");
    if (la == lb) throw fail("identical members");
    return WordPair(std::move(la), std::move(lb));
}

WordPair parse_word_pair(std::string_view text, const std::string& context) {
    auto pos = text.find(':');
    if (pos == std::string_view::npos) {
        std::string where = context.empty() ? "" : (context + ": ");
        throw parse_error(where + "expected 'wordA:wordB', got '" + std::string(text) + "'");
    }
    return make_word_pair(text.substr(0, pos), text.substr(pos + 1), context);
}

std::size_t WordPairHash::operator()(const WordPair& p) const {
    std::uint64_t h = fnv1a64(p.a);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(p.b, h);
    return static_cast<std::size_t>(h);
}

bool suffix_insensitive_match(std::string_view word, std::string_view token) {
    if (token == word) return true;
    if (token.size() <= word.size()) return false;
    if (token.compare(0, word.size(), word) != 0) return false;
    std::string_view tail = token.substr(word.size());
    for (auto s : kMatchSuffixes)
        if (tail == s) return true;
    return false;
}

std::vector<std::string> suffix_variants(std::string_view word) {
    std::vector<std::string> out;
    out.reserve(kMatchSuffixes.size() + 1);
    out.emplace_back(word);
    for (auto s : kMatchSuffixes) out.emplace_back(std::string(word) + std::string(s));
    return out;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace relsim
