#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relsim/config.hpp"
#include "relsim/engine.hpp"
#include "relsim/eval.hpp"

namespace relsim {

// Command implementations behind the CLI subcommands. They throw Error on
// failure; the CLI maps error kinds to exit codes. `out` receives the
// human-readable output.

// Ingests the corpus and persists the index artifact; a rerun with unchanged
// input is a cache hit and does not recompute.
void cmd_index(const RunConfig& config, std::ostream& out);

// Runs the pipeline with stage-level caching (families, weighted matrix,
// SVD keyed by content hashes) and reports build statistics.
void cmd_build(const RunConfig& config, std::ostream& out);

// Answers the question file with the configured strategy (lra, vsm,
// attributional, freq-highest, freq-lowest, random) and writes reports.
void cmd_solve_sat(const RunConfig& config, std::ostream& out);

// Leave-one-out noun-modifier classification, 30-class and 5-class reports
// (strategy "majority" reports the majority-class baseline instead).
void cmd_classify_nm(const RunConfig& config, std::ostream& out);

// cmd_solve_sat under the configured ablation flags, with the variant
// spelled out in the report.
void cmd_ablate(const RunConfig& config, std::ostream& out);

// The fixed-connective vector-space baseline on the question file.
void cmd_baseline_vsm(const RunConfig& config, std::ostream& out);

// Dumps the top-n reconstructed pattern weights for one pair.
void cmd_inspect(const RunConfig& config, const std::string& pair_text, int top_n,
                 std::ostream& out);

// Shared machinery, exposed for tests.

// The corpus per config: loaded from the index artifact when present,
// ingested from the raw paths otherwise.
Corpus resolve_corpus(const RunConfig& config);

struct BuildOutput {
    LraEngine engine;
    BuildStats stats;
    std::vector<std::string> cache_notes;
};

BuildOutput build_engine_cached(const RunConfig& config, const Corpus& corpus,
                                const Thesaurus& thesaurus, const std::vector<WordPair>& pairs);

// Input pairs for a build: the pairs file when configured, otherwise derived
// from the question or noun-modifier file.
std::vector<WordPair> resolve_input_pairs(const RunConfig& config);

std::string report_to_json(const EvalReport& report);

}  // namespace relsim
