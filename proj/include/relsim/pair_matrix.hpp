#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "relsim/corpus.hpp"
#include "relsim/family.hpp"
#include "relsim/pattern.hpp"
#include "relsim/sparse.hpp"

namespace relsim {

// Phrase realizations for one distinct pair, both orders included. `pair`
// is the canonical orientation (first occurrence wins).
struct PairPhrases {
    WordPair pair;
    std::vector<PhraseMatch> phrases;
};

// All distinct pairs across the families with their phrase lists, in a
// deterministic order. `index` maps both orientations of a pair to its
// entry.
struct PhraseBank {
    std::vector<PairPhrases> entries;
    std::unordered_map<WordPair, std::size_t, WordPairHash> index;

    const PairPhrases* find(const WordPair& p) const {
        auto it = index.find(p);
        return it == index.end() ? nullptr : &entries[it->second];
    }
};

PhraseBank collect_phrases(const std::vector<PairFamily>& families, const Corpus& corpus,
                           int max_phrase, int threads = 0);

// Ranked patterns kept for the matrix columns. In symmetric mode the ranking
// is over undirected templates (each becomes a forward and a reversed
// column); otherwise directed patterns are ranked separately and columns map
// one-to-one.
struct HarvestResult {
    bool symmetric = true;
    std::vector<PatternTemplate> templates;    // symmetric mode, rank order
    std::vector<DirectedPattern> directed;     // asymmetric mode, rank order
    std::size_t distinct_available = 0;
    bool fewer_than_requested = false;

    std::size_t column_count() const {
        return symmetric ? templates.size() * 2 : directed.size();
    }
};

// Scores each pattern by the number of distinct pairs having at least one
// matching phrase and keeps the most frequent ones (ties broken by pattern
// text). num_patterns counts undirected templates in symmetric mode; the
// asymmetric variant keeps 2*num_patterns directed patterns so the total
// column count stays comparable.
HarvestResult harvest_patterns(const PhraseBank& bank, int num_patterns, bool symmetric);

// The pair-pattern frequency matrix. Symmetric layout: rows come in
// (A:B, B:A) mates at indices (2t, 2t+1) and columns in (forward, reversed)
// mates at (2p, 2p+1), so the row vector of B:A is the row vector of A:B
// under the global column permutation that swaps direction mates.
struct PairPatternMatrix {
    SparseMatrix cells;
    std::vector<WordPair> row_pairs;
    std::unordered_map<WordPair, std::size_t, WordPairHash> row_index;
    std::vector<DirectedPattern> columns;
    bool symmetric = true;
    bool weighted = false;

    std::size_t rows() const { return cells.rows(); }
    std::size_t cols() const { return cells.cols(); }

    const WordPair& pair_of_row(std::size_t i) const { return row_pairs[i]; }
    std::optional<std::size_t> row_of_pair(const WordPair& p) const {
        auto it = row_index.find(p);
        if (it == row_index.end()) return std::nullopt;
        return it->second;
    }
    std::size_t zero_row_count() const;
};

// Rows for the family pairs (both orders when symmetric, one row per
// distinct input-order pair otherwise); cell (i, j) counts phrases of the
// i-th pair matching the j-th directed pattern.
PairPatternMatrix build_matrix(const std::vector<PairFamily>& families, const PhraseBank& bank,
                               const HarvestResult& patterns);

// Log-entropy weighting: each raw cell x becomes w_j * log(x + 1) with
// w_j = 1 - H_j / log(m), H_j the entropy of column j's raw frequencies.
// All-zero columns get w_j = 0. Requires m >= 2. In symmetric matrices the
// weight is computed once per direction-mate column pair (their raw value
// multisets are identical by construction), which keeps the weighted matrix
// exactly symmetric in floating point.
PairPatternMatrix apply_log_entropy(const PairPatternMatrix& raw);

// Column entropy weights alone (exposed for tests and inspection).
std::vector<double> log_entropy_weights(const SparseMatrix& raw, bool share_direction_mates);

}  // namespace relsim
