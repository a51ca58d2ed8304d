#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace relsim {

struct ThesaurusNeighbour {
    std::string word;  // lowercase
    double score = 0;  // in (0, 1]
};

// One head word with its neighbours sorted by decreasing similarity
// (ties broken lexicographically).
struct ThesaurusEntry {
    std::string word;
    std::vector<ThesaurusNeighbour> neighbours;
};

// True iff the word looks unusual: hyphenated, three characters or less,
// non-alphabetic characters, embedded whitespace, or capitalized in its raw
// source form.
bool is_unusual_token(std::string_view word, bool capitalized_in_source);

// A ranked synonym table loaded from a file. Immutable after load; safe for
// concurrent reads.
//
// File format: UTF-8, one entry per line,
//   headword<TAB>neighbour:score,neighbour:score,...
// Scores are decimal reals in (0, 1]; '#' begins a comment line. A head or
// neighbour may carry a part-of-speech tag as a trailing parenthesized
// suffix, e.g. "quart(n)"; tags are stripped and same-head sections from
// different tags are merged by max score. A duplicate head within the same
// (or no) tag is an error.
class Thesaurus {
public:
    Thesaurus() = default;

    static Thesaurus load_file(const std::string& path);
    static Thesaurus load_text(std::string_view text, const std::string& source_name = "<text>");

    std::size_t size() const { return entries_.size(); }

    const ThesaurusEntry* find(std::string_view word) const;

    // First num_sim neighbours of `word` after removing unusual words;
    // shorter if the entry runs out; empty if the word is absent.
    std::vector<ThesaurusNeighbour> top_similar(std::string_view word, int num_sim) const;

    // Applies is_unusual_token using this thesaurus's record of which words
    // appeared capitalized in the source file.
    bool is_unusual(std::string_view word) const;

    // Thesaurus score between two words, looking in either entry; nullopt
    // when neither lists the other.
    std::optional<double> similarity_score(std::string_view x, std::string_view y) const;

    const std::vector<std::string>& load_warnings() const { return warnings_; }
    std::uint64_t content_hash() const { return content_hash_; }

private:
    std::unordered_map<std::string, ThesaurusEntry> entries_;
    std::unordered_set<std::string> capitalized_in_source_;
    std::vector<std::string> warnings_;
    std::uint64_t content_hash_ = 0;
};

}  // namespace relsim
