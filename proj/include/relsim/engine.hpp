#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relsim/corpus.hpp"
#include "relsim/family.hpp"
#include "relsim/pair_matrix.hpp"
#include "relsim/svd.hpp"
#include "relsim/thesaurus.hpp"

namespace relsim {

struct LraParams {
    int num_sim = 10;
    int max_phrase = 5;
    int num_filter = 3;
    int num_patterns = 4000;
    int k = 300;
    int threads = 0;  // 0 => all available CPUs
    SvdOptions svd;

    void validate() const;
};

// Pipeline variants used by the ablation experiments. The defaults are the
// full system.
struct AblationConfig {
    bool use_svd = true;
    bool use_synonyms = true;
    bool symmetric = true;
    bool better_alternates_only = true;  // false => average all combination cosines
    std::optional<int> top_n;  // keep only the N largest entries of each reconstructed row

    void validate() const;
};

struct StepTime {
    std::string step;
    double seconds = 0;
};

struct BuildStats {
    std::size_t input_pairs = 0;
    std::size_t families = 0;
    std::size_t family_pairs = 0;  // originals plus surviving alternates
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    double density = 0;
    std::size_t zero_rows = 0;
    std::size_t patterns_available = 0;
    std::size_t patterns_kept = 0;
    std::size_t effective_k = 0;
    bool k_truncated_to_rank = false;
    std::vector<StepTime> step_times;
    std::vector<std::string> warnings;
};

struct Combination {
    WordPair pair1;
    WordPair pair2;
    double cosine = 0;
    bool originals = false;
};

struct SimilarityResult {
    std::optional<double> value;  // empty => skipped (an original maps to a zero or missing row)
    double original_cosine = 0;
    std::vector<Combination> combinations;

    bool skipped() const { return !value.has_value(); }
};

// Step 12: the average of the cosines that are >= the original-pairs cosine
// (the original itself always participates). With better_only=false, the
// plain average of all cosines.
double relational_similarity(const std::vector<double>& cosines, double original_cosine,
                             bool better_only = true);

// The built LRA model: pair families, the weighted pair-pattern matrix, and
// the row space cosines are computed in (SVD projection, reconstructed
// truncated rows, or the sparse weighted rows themselves, depending on the
// ablation flags). Immutable after build; queries are safe concurrently.
class LraEngine {
public:
    LraEngine() = default;  // empty engine; populate via build or from_parts

    static LraEngine build(const Corpus& corpus, const Thesaurus& thesaurus,
                           const std::vector<WordPair>& input_pairs, const LraParams& params,
                           const AblationConfig& ablation = {}, BuildStats* stats = nullptr);

    // Reassembles an engine from cached artifacts (see serialize.hpp).
    static LraEngine from_parts(std::vector<PairFamily> families, PairPatternMatrix weighted,
                                std::optional<SvdResult> svd, const LraParams& params,
                                const AblationConfig& ablation);

    // Full LRA relational similarity between two input pairs (steps 11-12).
    SimilarityResult similarity(const WordPair& x, const WordPair& y) const;

    // Cosine of the original rows only (no alternates); empty on zero rows.
    // This is the stage-1 measure of the two-stage classifier speedup.
    std::optional<double> original_cosine(const WordPair& x, const WordPair& y) const;

    // The N largest entries of the pair's reconstructed row, with their
    // column patterns. Requires an SVD-backed build.
    std::vector<std::pair<DirectedPattern, double>> top_pattern_weights(const WordPair& pair,
                                                                        int n) const;

    const std::vector<PairFamily>& families() const { return families_; }
    const PairPatternMatrix& weighted_matrix() const { return weighted_; }
    const std::optional<SvdResult>& svd() const { return svd_; }
    const LraParams& params() const { return params_; }
    const AblationConfig& ablation() const { return ablation_; }
    bool knows(const WordPair& pair) const { return family_of(pair).has_value(); }

private:
    struct FamilyRef {
        std::size_t index;
        bool reversed;
    };
    std::optional<FamilyRef> family_of(const WordPair& pair) const;

    // Row id for an oriented pair, provided the row is usable (nonzero).
    std::optional<std::size_t> usable_row(const WordPair& pair) const;
    double row_cosine(std::size_t i, std::size_t j) const;

    void finalize_rows();

    std::vector<PairFamily> families_;
    std::unordered_map<WordPair, FamilyRef, WordPairHash> family_lookup_;
    PairPatternMatrix weighted_;
    std::optional<SvdResult> svd_;
    DenseMatrix row_space_;   // projection or truncated reconstruction; unused when svd off
    std::vector<bool> row_usable_;
    LraParams params_;
    AblationConfig ablation_;
};

}  // namespace relsim
