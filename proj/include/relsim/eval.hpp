#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relsim/engine.hpp"
#include "relsim/words.hpp"

namespace relsim {

// A five-choice analogy question.
struct AnalogyQuestion {
    WordPair stem;
    std::vector<WordPair> choices;  // exactly 5
    std::size_t answer = 0;         // index into choices
};

// SAT question file: blocks of 7 lines (stem pair, five choice pairs as
// word:word, answer letter a-e); '#' comments and blank lines are ignored.
std::vector<AnalogyQuestion> load_sat_file(const std::string& path);
std::vector<AnalogyQuestion> parse_sat_text(std::string_view text,
                                            const std::string& source_name = "<text>");

// A labeled noun-modifier pair.
struct NounModifierExample {
    std::string modifier;
    std::string head;
    std::string class30;  // abbreviated label, e.g. "ag"

    WordPair pair() const { return WordPair(modifier, head); }
};

// Noun-modifier file: comma-separated "modifier,head,class30" with a header
// line; '#' comments are ignored.
std::vector<NounModifierExample> load_noun_modifier_file(const std::string& path);
std::vector<NounModifierExample> parse_noun_modifier_text(std::string_view text,
                                                          const std::string& source_name = "<text>");

// The 30 abbreviated relation labels, and the collapse onto the five groups
// (Causality, Temporality, Spatial, Participant, Quality). Unknown labels
// raise a parse error.
const std::vector<std::string>& noun_modifier_classes30();
std::string collapse_classes(const std::string& class30);

// ----------------------------------------------------------------------
// Scoring

enum class Outcome { correct, incorrect, skipped };

struct ClassMetrics {
    std::string label;
    std::size_t actual = 0;
    std::size_t predicted = 0;
    std::size_t correct = 0;
    double precision = 0;  // percent; 0 when undefined (no predictions)
    bool precision_defined = true;
    double recall = 0;  // percent
    double f = 0;       // percent
};

struct EvalReport {
    std::size_t correct = 0;
    std::size_t incorrect = 0;
    std::size_t skipped = 0;
    std::size_t ties_flagged = 0;

    std::optional<double> precision;  // percent; absent when no guesses were made
    double recall = 0;                // percent (equals percent correct)
    std::optional<double> f;          // percent

    std::vector<ClassMetrics> per_class;  // classification runs only
    std::optional<double> macro_precision;
    std::optional<double> macro_recall;
    std::optional<double> macro_f;

    std::string to_text() const;
};

// precision = correct / guesses, recall = correct / all, F = 2PR/(P+R).
EvalReport score_run(const std::vector<Outcome>& outcomes);

// ----------------------------------------------------------------------
// Analogy solving

// Relational similarity between a stem and a choice; empty means the
// comparison is skipped.
using PairMeasure = std::function<std::optional<double>(const WordPair&, const WordPair&)>;

struct QuestionResult {
    std::optional<std::size_t> guess;  // empty => skipped
    bool tie = false;                  // argmax tie, first choice taken
    std::vector<std::optional<double>> scores;
};

// Argmax of the measure over the choices; skip when no choice is scorable.
// Ties take the first choice in file order and are flagged.
QuestionResult solve_question(const AnalogyQuestion& q, const PairMeasure& measure);

struct SatRun {
    EvalReport report;
    std::vector<QuestionResult> results;
};

SatRun run_sat(const std::vector<AnalogyQuestion>& questions, const PairMeasure& measure,
               int threads = 0);

// Builds the engine with the given ablation flags and evaluates the
// questions; stats and per-question details are optional outputs.
EvalReport run_ablation(const Corpus& corpus, const Thesaurus& thesaurus,
                        const std::vector<AnalogyQuestion>& questions, const LraParams& params,
                        const AblationConfig& ablation, BuildStats* stats = nullptr,
                        SatRun* details = nullptr);

// ----------------------------------------------------------------------
// Noun-modifier classification

struct KnnOptions {
    int scheme = 30;                  // 30 or 5 (collapsed labels)
    std::size_t stage1_neighbours = 30;  // 0 => exhaustive search with the full measure
    int threads = 0;
};

struct KnnPrediction {
    std::optional<std::string> label;  // empty => skipped
    std::optional<std::size_t> neighbour;
    bool tie = false;
};

struct KnnRun {
    EvalReport report;
    std::vector<KnnPrediction> predictions;
    std::size_t stage1_neighbours = 0;  // 0 => exhaustive
    std::size_t cosine_evaluations = 0;
};

// Leave-one-out single-nearest-neighbour classification. `full` is the
// relational-similarity measure; `stage1` (when given along with
// options.stage1_neighbours > 0) preselects candidates cheaply and the full
// measure re-ranks only those.
KnnRun knn_classify(const std::vector<NounModifierExample>& examples, const PairMeasure& full,
                    const PairMeasure& stage1, const KnnOptions& options);

// Accuracy of always guessing the most frequent class (percent).
double majority_baseline_accuracy(const std::vector<NounModifierExample>& examples, int scheme);

// Agreement between the two-stage shortcut and exhaustive search. The
// invariant: whenever the exhaustive nearest neighbour survives stage 1,
// the predictions match.
struct TwoStageAgreement {
    std::size_t examples = 0;
    std::size_t eligible = 0;         // exhaustive NN was among the stage-1 candidates
    std::size_t agreed = 0;           // same predicted label
    std::size_t eligible_agreed = 0;  // agreements among eligible examples
};

TwoStageAgreement two_stage_agreement(const std::vector<NounModifierExample>& examples,
                                      const PairMeasure& full, const PairMeasure& stage1,
                                      const KnnOptions& options);

}  // namespace relsim
