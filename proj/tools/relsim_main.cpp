#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relsim/commands.hpp"
#include "relsim/errors.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> corpus_paths;
    std::optional<bool> line_documents;
    std::optional<std::string> index_path;
    std::optional<std::string> thesaurus_path;
    std::optional<std::string> pairs_path;
    std::optional<std::string> sat_path;
    std::optional<std::string> nm_path;
    std::optional<std::string> joining_terms_path;
    std::optional<int> num_sim, max_phrase, num_filter, num_patterns, k, threads;
    std::optional<int> top_n;
    bool no_svd = false, no_synonyms = false, no_symmetry = false, all_alternates = false;
    std::optional<std::string> cache_dir, report_path, log_path, strategy;
    std::optional<std::uint64_t> seed;

    // inspect
    std::string inspect_pair;
    int inspect_n = 10;
};

void add_common_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--config", o.config_path, "Config file; flags override its values");
    cmd->add_option("--corpus", o.corpus_paths, "Corpus file or directory (repeatable)");
    cmd->add_flag("--line-docs,!--no-line-docs",
                  [&o](std::int64_t count) { o.line_documents = count > 0; },
                  "Treat each line as one document");
    cmd->add_option_function<std::string>("--index", [&o](const std::string& v) { o.index_path = v; },
                                          "Corpus index artifact path");
    cmd->add_option_function<std::string>(
        "--thesaurus", [&o](const std::string& v) { o.thesaurus_path = v; }, "Thesaurus file");
    cmd->add_option_function<std::string>("--pairs", [&o](const std::string& v) { o.pairs_path = v; },
                                          "Pair-list file (wordA:wordB per line)");
    cmd->add_option_function<std::string>("--sat", [&o](const std::string& v) { o.sat_path = v; },
                                          "Analogy question file");
    cmd->add_option_function<std::string>("--nm", [&o](const std::string& v) { o.nm_path = v; },
                                          "Noun-modifier file");
    cmd->add_option_function<std::string>(
        "--joining-terms", [&o](const std::string& v) { o.joining_terms_path = v; },
        "Joining-term list for the vsm baseline");
    cmd->add_option_function<int>("--num-sim", [&o](int v) { o.num_sim = v; },
                                  "Thesaurus neighbours per word");
    cmd->add_option_function<int>("--max-phrase", [&o](int v) { o.max_phrase = v; },
                                  "Maximum phrase length");
    cmd->add_option_function<int>("--num-filter", [&o](int v) { o.num_filter = v; },
                                  "Alternates kept per pair");
    cmd->add_option_function<int>("--num-patterns", [&o](int v) { o.num_patterns = v; },
                                  "Patterns kept");
    cmd->add_option_function<int>("-k,--k", [&o](int v) { o.k = v; }, "Projection dimensions");
    cmd->add_option_function<int>("--threads", [&o](int v) { o.threads = v; },
                                  "Worker threads (0 = all CPUs)");
    cmd->add_flag("--no-svd", o.no_svd, "Skip the SVD stage (cosines on weighted rows)");
    cmd->add_flag("--no-synonyms", o.no_synonyms, "Skip thesaurus alternates");
    cmd->add_flag("--no-symmetry", o.no_symmetry, "One row per input pair, directed patterns");
    cmd->add_flag("--all-alternates", o.all_alternates, "Average all cosines, not only better ones");
    cmd->add_option_function<int>("--top-n", [&o](int v) { o.top_n = v; },
                                  "Truncate reconstructed rows to their N largest entries");
    cmd->add_option_function<std::string>(
        "--cache-dir", [&o](const std::string& v) { o.cache_dir = v; },
        "Cache directory (env RELSIM_CACHE_DIR overrides)");
    cmd->add_option_function<std::string>(
        "--report", [&o](const std::string& v) { o.report_path = v; }, "Structured report path");
    cmd->add_option_function<std::string>("--log", [&o](const std::string& v) { o.log_path = v; },
                                          "Per-question cosine log path");
    cmd->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t v) { o.seed = v; },
                                            "Seed for the random strategy");
    cmd->add_option_function<std::string>(
        "--strategy", [&o](const std::string& v) { o.strategy = v; },
        "lra | vsm | attributional | freq-highest | freq-lowest | random | majority");
}

relsim::RunConfig make_config(const CliOptions& o) {
    relsim::RunConfig c;
    if (!o.config_path.empty()) c = relsim::RunConfig::load_file(o.config_path);
    if (!o.corpus_paths.empty()) c.corpus_paths = o.corpus_paths;
    if (o.line_documents) c.line_documents = *o.line_documents;
    if (o.index_path) c.index_path = *o.index_path;
    if (o.thesaurus_path) c.thesaurus_path = *o.thesaurus_path;
    if (o.pairs_path) c.pairs_path = *o.pairs_path;
    if (o.sat_path) c.sat_path = *o.sat_path;
    if (o.nm_path) c.noun_modifier_path = *o.nm_path;
    if (o.joining_terms_path) c.joining_terms_path = *o.joining_terms_path;
    if (o.num_sim) c.params.num_sim = *o.num_sim;
    if (o.max_phrase) c.params.max_phrase = *o.max_phrase;
    if (o.num_filter) c.params.num_filter = *o.num_filter;
    if (o.num_patterns) c.params.num_patterns = *o.num_patterns;
    if (o.k) c.params.k = *o.k;
    if (o.threads) c.params.threads = *o.threads;
    if (o.no_svd) c.ablation.use_svd = false;
    if (o.no_synonyms) c.ablation.use_synonyms = false;
    if (o.no_symmetry) c.ablation.symmetric = false;
    if (o.all_alternates) c.ablation.better_alternates_only = false;
    if (o.top_n) c.ablation.top_n = *o.top_n;
    if (o.cache_dir) c.cache_dir = *o.cache_dir;
    if (o.report_path) c.report_path = *o.report_path;
    if (o.log_path) c.log_path = *o.log_path;
    if (o.seed) c.seed = *o.seed;
    if (o.strategy) c.strategy = *o.strategy;
    return c;
}

int exit_code_for(const relsim::Error& e) {
    switch (e.kind()) {
        case relsim::ErrorKind::config: return 2;
        case relsim::ErrorKind::io: return 3;
        case relsim::ErrorKind::parse: return 4;
        case relsim::ErrorKind::numeric: return 5;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relsim: corpus-based relational similarity engine"};
    app.require_subcommand(1);

    CliOptions o;
    auto* index = app.add_subcommand("index", "Ingest a corpus and persist the index");
    auto* build = app.add_subcommand("build", "Build the pair-pattern matrix and projection");
    auto* solve = app.add_subcommand("solve-sat", "Answer a five-choice analogy question file");
    auto* classify = app.add_subcommand("classify-nm", "Classify noun-modifier relations");
    auto* ablate = app.add_subcommand("ablate", "Run the pipeline with ablation flags");
    auto* vsm = app.add_subcommand("baseline-vsm", "Fixed-connective vector-space baseline");
    auto* inspect = app.add_subcommand("inspect", "Dump top pattern weights for a pair");
    for (auto* cmd : {index, build, solve, classify, ablate, vsm, inspect})
        add_common_options(cmd, o);
    inspect->add_option("pair", o.inspect_pair, "Pair as wordA:wordB")->required();
    inspect->add_option("-n,--top", o.inspect_n, "How many pattern weights to dump");

    CLI11_PARSE(app, argc, argv);

    try {
        relsim::RunConfig config = make_config(o);
        if (index->parsed()) relsim::cmd_index(config, std::cout);
        if (build->parsed()) relsim::cmd_build(config, std::cout);
        if (solve->parsed()) relsim::cmd_solve_sat(config, std::cout);
        if (classify->parsed()) relsim::cmd_classify_nm(config, std::cout);
        if (ablate->parsed()) relsim::cmd_ablate(config, std::cout);
        if (vsm->parsed()) relsim::cmd_baseline_vsm(config, std::cout);
        if (inspect->parsed()) relsim::cmd_inspect(config, o.inspect_pair, o.inspect_n, std::cout);
        return 0;
    } catch (const relsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
