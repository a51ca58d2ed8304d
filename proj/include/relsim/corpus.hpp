#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relsim/pattern.hpp"
#include "relsim/words.hpp"

namespace relsim {

enum class TokenChars : std::uint8_t { alphabetic = 0, alphanumeric = 1 };

// Lowercasing is always applied; the only knob is which characters count as
// token characters. Everything else is a separator.
struct TokenizerConfig {
    TokenChars token_chars = TokenChars::alphabetic;
};

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

// One distinct phrase realization for a pair query: the literal corpus
// tokens, first and last being the (suffix-matched) pair members.
struct PhraseMatch {
    std::string first;
    std::vector<std::string> intervening;  // length >= 1
    std::string last;
    std::uint64_t count = 0;  // occurrences in the corpus

    std::size_t length() const { return intervening.size() + 2; }
    std::string text() const;
};

// An immutable tokenized corpus with a positional index. Answers exact-count
// passage queries: windows never span document boundaries, pair members are
// matched suffix-insensitively, and at least one word must separate them.
// Safe for concurrent reads once built.
class Corpus {
public:
    Corpus() = default;

    // Each path may be a file or a directory (read recursively, in sorted
    // order). One file = one document, or one line = one document when
    // line_documents is set. Unreadable sources raise an io error naming
    // the source. An empty corpus is valid.
    static Corpus ingest_files(const std::vector<std::string>& paths,
                               const TokenizerConfig& config = {},
                               bool line_documents = false);

    // One string = one document.
    static Corpus ingest_texts(const std::vector<std::string>& texts,
                               const TokenizerConfig& config = {});

    std::uint64_t token_count() const { return token_count_; }
    std::size_t document_count() const { return docs_.size(); }

    // Number of phrase occurrences that begin with one member of the pair
    // and end with the other (either order), total length <= max_phrase,
    // with at least one intervening word. max_phrase must be >= 3.
    std::uint64_t cooccurrence_frequency(const WordPair& pair, int max_phrase) const;

    // Every distinct (first, intervening, last) realization with its exact
    // count, both orders included, sorted lexicographically.
    std::vector<PhraseMatch> enumerate_phrases(const WordPair& pair, int max_phrase) const;

    // Occurrences of the directed pattern: forward counts phrases
    // "pair.a <slots> pair.b", reversed counts "pair.b <slots> pair.a".
    // Literal slots match tokens exactly; a wildcard matches exactly one
    // word; members are matched suffix-insensitively.
    std::uint64_t pattern_frequency(const WordPair& pair, const DirectedPattern& pattern,
                                    int max_phrase) const;

    // FNV-1a fingerprint of the tokenized content; identical corpora hash
    // identically regardless of how they were ingested.
    std::uint64_t content_hash() const { return content_hash_; }

    // Serialization support (see serialize.hpp).
    const std::vector<std::vector<std::int32_t>>& documents() const { return docs_; }
    const std::vector<std::string>& vocabulary() const { return id_to_token_; }
    static Corpus from_token_documents(std::vector<std::vector<std::string>> docs);

private:
    struct Posting {
        std::int32_t doc;
        std::int32_t pos;
    };

    void add_document(std::vector<std::string> tokens);
    void finalize();

    std::int32_t token_id(std::string_view token) const;
    std::vector<std::int32_t> variant_ids(std::string_view word) const;

    // Calls fn(doc, start, end, start_matches_a, end token index) for every
    // window [start, end] whose endpoints suffix-match the pair members in
    // either order. Each window is visited once.
    void for_each_span(const WordPair& pair, int max_phrase,
                       const std::function<void(std::int32_t doc, std::int32_t start,
                                                std::int32_t end)>& fn) const;

    std::vector<std::vector<std::int32_t>> docs_;
    std::vector<std::string> id_to_token_;
    std::unordered_map<std::string, std::int32_t> token_to_id_;
    std::vector<std::vector<Posting>> postings_;
    std::uint64_t token_count_ = 0;
    std::uint64_t content_hash_ = 0;
};

}  // namespace relsim
