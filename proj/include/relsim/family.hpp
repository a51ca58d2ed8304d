#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relsim/corpus.hpp"
#include "relsim/thesaurus.hpp"
#include "relsim/words.hpp"

namespace relsim {

// An alternate pair: the original with one member replaced by a thesaurus
// neighbour, plus the provenance used for filtering and reporting.
struct AlternatePair {
    WordPair pair;
    double thesaurus_score = 0;
    std::uint64_t frequency = 0;  // step-2 co-occurrence frequency, filled by filtering
};

// An original pair and the alternates that survived frequency filtering.
struct PairFamily {
    WordPair original;
    std::uint64_t original_frequency = 0;
    std::vector<AlternatePair> alternates;  // at most num_filter

    // original first, then alternates: the "versions" compared in step 11.
    std::vector<WordPair> versions() const {
        std::vector<WordPair> out;
        out.reserve(alternates.size() + 1);
        out.push_back(original);
        for (const auto& a : alternates) out.push_back(a.pair);
        return out;
    }
};

// For each of the top num_sim neighbours of a, the pair (a', b); for each of
// b, the pair (a, b'). Duplicates and pairs equal to the original (or with
// identical members) are removed. Missing thesaurus entries just yield fewer
// alternates.
std::vector<AlternatePair> find_alternates(const WordPair& pair, const Thesaurus& thesaurus,
                                           int num_sim);

using FrequencyFn = std::function<std::uint64_t(const WordPair&)>;

// Ranks alternates by co-occurrence frequency (ties: higher thesaurus score,
// then lexicographic) and keeps the top num_filter. The original is always
// kept regardless of its frequency.
PairFamily filter_alternates(const WordPair& original, std::vector<AlternatePair> alternates,
                             const FrequencyFn& frequency, int num_filter);

PairFamily filter_alternates(const WordPair& original, std::vector<AlternatePair> alternates,
                             const Corpus& corpus, int max_phrase, int num_filter);

}  // namespace relsim
