#include "relsim/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "relsim/baselines.hpp"
#include "relsim/errors.hpp"
#include "relsim/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace relsim {

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StepTime>* sink) : sink_(sink) {}

    template <typename Fn>
    auto time(const std::string& label, Fn&& fn) {
        auto start = std::chrono::steady_clock::now();
        auto out = fn();
        if (sink_)
            sink_->push_back(
                {label, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
        return out;
    }

private:
    std::vector<StepTime>* sink_;
};

std::uint64_t hash_params_for_families(const RunConfig& config, std::uint64_t base,
                                       const std::vector<WordPair>& pairs) {
    std::uint64_t h = base;
    for (const auto& p : pairs) {
        h = fnv1a64(p.a, h);
        h = fnv1a64(":", h);
        h = fnv1a64(p.b, h);
        h = fnv1a64("\n", h);
    }
    std::ostringstream os;
    os << "num_sim=" << config.params.num_sim << ";max_phrase=" << config.params.max_phrase
       << ";num_filter=" << config.params.num_filter
       << ";synonyms=" << (config.ablation.use_synonyms ? 1 : 0);
    return fnv1a64(os.str(), h);
}

std::uint64_t hash_params_for_matrix(const RunConfig& config, std::uint64_t families_key) {
    std::ostringstream os;
    os << "num_patterns=" << config.params.num_patterns
       << ";symmetric=" << (config.ablation.symmetric ? 1 : 0);
    return fnv1a64(os.str(), families_key);
}

std::uint64_t hash_params_for_svd(const RunConfig& config, std::uint64_t matrix_key) {
    std::ostringstream os;
    os << "k=" << config.params.k << ";tol=" << format_double(config.params.svd.tol)
       << ";rank=" << format_double(config.params.svd.rank_rel_tol)
       << ";seed=" << config.params.svd.seed;
    return fnv1a64(os.str(), matrix_key);
}

json params_json(const LraParams& p) {
    return json{{"num_sim", p.num_sim},   {"max_phrase", p.max_phrase},
                {"num_filter", p.num_filter}, {"num_patterns", p.num_patterns},
                {"k", p.k},               {"threads", p.threads}};
}

json ablation_json(const AblationConfig& a) {
    json j{{"svd", a.use_svd},
           {"synonyms", a.use_synonyms},
           {"symmetry", a.symmetric},
           {"alternates", a.better_alternates_only ? "better" : "all"}};
    if (a.top_n) j["top_n"] = *a.top_n;
    return j;
}

json stats_json(const BuildStats& s) {
    // Wall times stay out of report files so identical runs stay
    // bit-identical; they are printed to the console instead.
    return json{{"input_pairs", s.input_pairs},
                {"families", s.families},
                {"family_pairs", s.family_pairs},
                {"rows", s.rows},
                {"cols", s.cols},
                {"nnz", s.nnz},
                {"density", s.density},
                {"zero_rows", s.zero_rows},
                {"patterns_available", s.patterns_available},
                {"patterns_kept", s.patterns_kept},
                {"effective_k", s.effective_k},
                {"k_truncated_to_rank", s.k_truncated_to_rank},
                {"warnings", s.warnings}};
}

json report_json_value(const EvalReport& r) {
    json j{{"correct", r.correct},
           {"incorrect", r.incorrect},
           {"skipped", r.skipped},
           {"ties_flagged", r.ties_flagged},
           {"recall", r.recall}};
    j["precision"] = r.precision ? json(*r.precision) : json(nullptr);
    j["f"] = r.f ? json(*r.f) : json(nullptr);
    if (r.macro_precision) j["macro_precision"] = *r.macro_precision;
    if (r.macro_recall) j["macro_recall"] = *r.macro_recall;
    if (r.macro_f) j["macro_f"] = *r.macro_f;
    if (!r.per_class.empty()) {
        json classes = json::array();
        for (const auto& c : r.per_class) {
            classes.push_back(json{{"label", c.label},
                                   {"actual", c.actual},
                                   {"predicted", c.predicted},
                                   {"correct", c.correct},
                                   {"precision", c.precision_defined ? json(c.precision) : json(nullptr)},
                                   {"recall", c.recall},
                                   {"f", c.f}});
        }
        j["per_class"] = classes;
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw io_error("error writing '" + path + "'");
}

void print_step_times(const std::vector<StepTime>& times, std::ostream& out) {
    for (const auto& t : times) {
        std::ostringstream s;
        s.precision(3);
        s << std::fixed << t.seconds;
        out << "  step " << t.step << ": " << s.str() << "s\n";
    }
}

std::string pair_text(const WordPair& p) { return p.a + ":" + p.b; }

json question_json(const AnalogyQuestion& q, const QuestionResult& r) {
    json scores = json::array();
    for (const auto& s : r.scores) scores.push_back(s ? json(*s) : json(nullptr));
    json choices = json::array();
    for (const auto& c : q.choices) choices.push_back(pair_text(c));
    json j{{"stem", pair_text(q.stem)},
           {"choices", choices},
           {"answer", q.answer},
           {"scores", scores},
           {"tie", r.tie}};
    j["guess"] = r.guess ? json(*r.guess) : json(nullptr);
    return j;
}

}  // namespace

std::string report_to_json(const EvalReport& report) { return report_json_value(report).dump(2); }

Corpus resolve_corpus(const RunConfig& config) {
    if (!config.index_path.empty() && fs::exists(config.index_path))
        return load_corpus(config.index_path);
    if (config.corpus_paths.empty())
        throw config_error("no corpus configured: set [corpus] path or index");
    TokenizerConfig tok;
    return Corpus::ingest_files(config.corpus_paths, tok, config.line_documents);
}

std::vector<WordPair> resolve_input_pairs(const RunConfig& config) {
    std::vector<WordPair> pairs;
    if (!config.pairs_path.empty()) {
        auto listed = load_pair_list(config.pairs_path);
        pairs.insert(pairs.end(), listed.begin(), listed.end());
    }
    if (!config.sat_path.empty()) {
        for (const auto& q : load_sat_file(config.sat_path)) {
            pairs.push_back(q.stem);
            for (const auto& c : q.choices) pairs.push_back(c);
        }
    }
    if (!config.noun_modifier_path.empty()) {
        for (const auto& ex : load_noun_modifier_file(config.noun_modifier_path))
            pairs.push_back(ex.pair());
    }
    if (pairs.empty())
        throw config_error("no input pairs: set [input] pairs, sat, or noun_modifiers");
    return pairs;
}

void cmd_index(const RunConfig& config, std::ostream& out) {
    if (config.index_path.empty()) throw config_error("index command needs [corpus] index = <path>");
    if (config.corpus_paths.empty()) throw config_error("index command needs [corpus] path");

    TokenizerConfig tok;
    Corpus corpus = Corpus::ingest_files(config.corpus_paths, tok, config.line_documents);

    if (auto existing = peek_corpus_hash(config.index_path)) {
        if (*existing == corpus.content_hash()) {
            out << "index up to date (" << corpus.token_count() << " tokens, "
                << corpus.document_count() << " documents): " << config.index_path << "\n";
            return;
        }
    }
    fs::path p(config.index_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    save_corpus(corpus, config.index_path);
    out << "indexed " << corpus.token_count() << " tokens in " << corpus.document_count()
        << " documents -> " << config.index_path << "\n";
}

BuildOutput build_engine_cached(const RunConfig& config, const Corpus& corpus,
                                const Thesaurus& thesaurus, const std::vector<WordPair>& pairs) {
    config.params.validate();
    config.ablation.validate();

    BuildOutput result;
    result.stats.input_pairs = pairs.size();
    StageClock clock(&result.stats.step_times);

    const std::string cache_dir = config.effective_cache_dir();
    fs::create_directories(cache_dir);

    std::uint64_t base = fnv1a64(hash_hex(corpus.content_hash()) + "/" +
                                 hash_hex(thesaurus.content_hash()));
    const std::uint64_t fam_key = hash_params_for_families(config, base, pairs);
    const std::uint64_t mat_key = hash_params_for_matrix(config, fam_key);
    const std::uint64_t svd_key = hash_params_for_svd(config, mat_key);

    const std::string fam_path = cache_dir + "/families-" + hash_hex(fam_key) + ".txt";
    const std::string mat_base = cache_dir + "/matrix-" + hash_hex(mat_key);
    const std::string mat_stats_path = mat_base + ".stats";
    const std::string svd_path = cache_dir + "/svd-" + hash_hex(svd_key) + ".txt";

    std::vector<PairFamily> families;
    if (fs::exists(fam_path)) {
        families = load_families(fam_path);
        result.cache_notes.push_back("families: cache hit");
    } else {
        auto originals = [&] {
            std::vector<WordPair> uniq;
            std::unordered_map<WordPair, bool, WordPairHash> seen;
            for (const auto& p : pairs)
                if (seen.emplace(p, true).second) uniq.push_back(p);
            return uniq;
        }();
        auto alternates = clock.time("1 find alternates", [&] {
            std::vector<std::vector<AlternatePair>> alts(originals.size());
            if (config.ablation.use_synonyms) {
                for (std::size_t i = 0; i < originals.size(); ++i)
                    alts[i] = find_alternates(originals[i], thesaurus, config.params.num_sim);
            }
            return alts;
        });
        families = clock.time("2 filter alternates", [&] {
            std::vector<PairFamily> fams(originals.size());
            for (std::size_t i = 0; i < originals.size(); ++i)
                fams[i] = filter_alternates(originals[i], std::move(alternates[i]), corpus,
                                            config.params.max_phrase, config.params.num_filter);
            return fams;
        });
        save_families(families, fam_path);
        result.cache_notes.push_back("families: computed");
    }
    result.stats.families = families.size();
    for (const auto& f : families) result.stats.family_pairs += 1 + f.alternates.size();

    PairPatternMatrix weighted;
    if (fs::exists(mat_base + ".coo")) {
        weighted = load_pair_matrix(mat_base);
        result.cache_notes.push_back("matrix: cache hit");
        if (fs::exists(mat_stats_path)) {
            std::ifstream in(mat_stats_path);
            json j = json::parse(in, nullptr, true);
            result.stats.patterns_available = j.value("patterns_available", std::size_t{0});
            result.stats.patterns_kept = j.value("patterns_kept", std::size_t{0});
            for (const auto& w : j.value("warnings", std::vector<std::string>{}))
                result.stats.warnings.push_back(w);
        }
    } else {
        auto bank = clock.time("3 find phrases", [&] {
            return collect_phrases(families, corpus, config.params.max_phrase,
                                   config.params.threads);
        });
        auto harvest = clock.time("4 find patterns", [&] {
            return harvest_patterns(bank, config.params.num_patterns, config.ablation.symmetric);
        });
        result.stats.patterns_available = harvest.distinct_available;
        result.stats.patterns_kept =
            harvest.symmetric ? harvest.templates.size() : harvest.directed.size();
        if (harvest.fewer_than_requested)
            result.stats.warnings.push_back(
                "only " + std::to_string(result.stats.patterns_kept) +
                " distinct patterns available; requested " + std::to_string(config.params.num_patterns));
        auto raw = clock.time("5-7 generate sparse matrix",
                              [&] { return build_matrix(families, bank, harvest); });
        weighted = clock.time("8 calculate entropy", [&] { return apply_log_entropy(raw); });
        save_pair_matrix(weighted, mat_base);
        write_text_file(mat_stats_path,
                        json{{"patterns_available", result.stats.patterns_available},
                             {"patterns_kept", result.stats.patterns_kept},
                             {"warnings", result.stats.warnings}}
                            .dump(2));
        result.cache_notes.push_back("matrix: computed");
    }

    std::optional<SvdResult> svd;
    if (config.ablation.use_svd && weighted.cells.nnz() > 0) {
        if (fs::exists(svd_path)) {
            svd = load_svd(svd_path);
            result.cache_notes.push_back("svd: cache hit");
        } else {
            svd = clock.time("9-10 apply svd and projection", [&] {
                SvdOptions opts = config.params.svd;
                const std::size_t dim = std::min(weighted.rows(), weighted.cols());
                opts.max_iter = std::max(opts.max_iter, static_cast<int>(dim));
                return truncated_svd(weighted.cells, config.params.k, opts);
            });
            save_svd(*svd, svd_path);
            result.cache_notes.push_back("svd: computed");
        }
    } else if (config.ablation.use_svd) {
        result.stats.warnings.push_back("weighted matrix is empty; skipping SVD");
    }

    result.stats.rows = weighted.rows();
    result.stats.cols = weighted.cols();
    result.stats.nnz = weighted.cells.nnz();
    result.stats.density = weighted.cells.density();
    result.stats.zero_rows = weighted.zero_row_count();
    result.stats.effective_k = svd ? svd->k() : 0;
    result.stats.k_truncated_to_rank = svd && svd->k_truncated_to_rank;

    result.engine = LraEngine::from_parts(std::move(families), std::move(weighted), std::move(svd),
                                          config.params, config.ablation);
    return result;
}

namespace {

void print_build_stats(const BuildStats& s, const std::vector<std::string>& notes,
                       std::ostream& out) {
    out << "pairs: " << s.input_pairs << " input, " << s.families << " families, "
        << s.family_pairs << " with alternates\n";
    out << "matrix: " << s.rows << " rows x " << s.cols << " columns, nnz " << s.nnz
        << " (density " << s.density * 100.0 << "%), zero rows " << s.zero_rows << "\n";
    out << "patterns: kept " << s.patterns_kept << " of " << s.patterns_available << "\n";
    if (s.effective_k)
        out << "projection: k = " << s.effective_k << (s.k_truncated_to_rank ? " (rank-limited)" : "")
            << "\n";
    for (const auto& n : notes) out << "  " << n << "\n";
    for (const auto& w : s.warnings) out << "  warning: " << w << "\n";
    print_step_times(s.step_times, out);
}

json build_json(const RunConfig& config, const BuildStats& stats) {
    return json{{"params", params_json(config.params)},
                {"ablation", ablation_json(config.ablation)},
                {"build", stats_json(stats)}};
}

struct SatContext {
    std::vector<AnalogyQuestion> questions;
    SatRun run;
    json question_log = json::array();
};

SatContext run_sat_with_strategy(const RunConfig& config, std::ostream& out, json* report_body) {
    if (config.sat_path.empty()) throw config_error("set [input] sat = <question file>");
    SatContext ctx;
    ctx.questions = load_sat_file(config.sat_path);

    const std::string& strategy = config.strategy;
    if (strategy == "lra") {
        Corpus corpus = resolve_corpus(config);
        Thesaurus thesaurus = Thesaurus::load_file(config.thesaurus_path);
        auto build = build_engine_cached(config, corpus, thesaurus, resolve_input_pairs(config));
        print_build_stats(build.stats, build.cache_notes, out);
        const LraEngine& engine = build.engine;
        auto measure = [&engine](const WordPair& a, const WordPair& b) {
            return engine.similarity(a, b).value;
        };
        ctx.run = run_sat(ctx.questions, measure, config.params.threads);
        for (std::size_t i = 0; i < ctx.questions.size(); ++i) {
            const auto& q = ctx.questions[i];
            json combos = json::array();
            for (const auto& choice : q.choices) {
                auto sim = engine.similarity(q.stem, choice);
                json cj = json::array();
                for (const auto& c : sim.combinations)
                    cj.push_back(json{{"pair1", pair_text(c.pair1)},
                                      {"pair2", pair_text(c.pair2)},
                                      {"cosine", c.cosine},
                                      {"originals", c.originals}});
                combos.push_back(json{{"choice", pair_text(choice)},
                                      {"skipped", sim.skipped()},
                                      {"cosines", cj}});
            }
            ctx.question_log.push_back(
                json{{"stem", pair_text(q.stem)}, {"comparisons", combos}});
        }
        if (report_body) *report_body = build_json(config, build.stats);
    } else if (strategy == "vsm") {
        Corpus corpus = resolve_corpus(config);
        if (config.joining_terms_path.empty())
            throw config_error("set [input] joining_terms for the vsm strategy");
        JoiningTermList terms = JoiningTermList::load_file(config.joining_terms_path);
        auto measure = [&](const WordPair& a, const WordPair& b) {
            return vsm_similarity(a, b, terms, corpus, config.params.max_phrase);
        };
        ctx.run = run_sat(ctx.questions, measure, config.params.threads);
        if (report_body)
            (*report_body)["joining_terms"] = terms.size();
    } else if (strategy == "attributional") {
        Thesaurus thesaurus = Thesaurus::load_file(config.thesaurus_path);
        auto sim = thesaurus_sim(thesaurus);
        auto measure = [&](const WordPair& a, const WordPair& b) -> std::optional<double> {
            return attributional_analogy_score(a, b, sim);
        };
        ctx.run = run_sat(ctx.questions, measure, config.params.threads);
    } else if (strategy == "freq-highest" || strategy == "freq-lowest") {
        Corpus corpus = resolve_corpus(config);
        const auto mode = strategy == "freq-highest" ? FrequencyGuessMode::highest
                                                     : FrequencyGuessMode::lowest;
        std::vector<Outcome> outcomes;
        ctx.run.results.resize(ctx.questions.size());
        for (std::size_t i = 0; i < ctx.questions.size(); ++i) {
            std::size_t guess =
                frequency_guess(ctx.questions[i].choices, corpus, config.params.max_phrase, mode);
            ctx.run.results[i].guess = guess;
            outcomes.push_back(guess == ctx.questions[i].answer ? Outcome::correct
                                                                : Outcome::incorrect);
        }
        ctx.run.report = score_run(outcomes);
    } else if (strategy == "random") {
        std::mt19937_64 rng(config.seed);
        std::vector<Outcome> outcomes;
        ctx.run.results.resize(ctx.questions.size());
        for (std::size_t i = 0; i < ctx.questions.size(); ++i) {
            std::size_t guess = static_cast<std::size_t>(rng() % ctx.questions[i].choices.size());
            ctx.run.results[i].guess = guess;
            outcomes.push_back(guess == ctx.questions[i].answer ? Outcome::correct
                                                                : Outcome::incorrect);
        }
        ctx.run.report = score_run(outcomes);
    } else {
        throw config_error("unknown strategy '" + strategy + "'");
    }
    return ctx;
}

void emit_sat_outputs(const RunConfig& config, const char* command, SatContext& ctx,
                      json report_body, std::ostream& out) {
    out << ctx.run.report.to_text();
    if (!config.report_path.empty()) {
        report_body["command"] = command;
        report_body["strategy"] = config.strategy;
        report_body["report"] = report_json_value(ctx.run.report);
        json questions = json::array();
        for (std::size_t i = 0; i < ctx.questions.size(); ++i)
            questions.push_back(question_json(ctx.questions[i], ctx.run.results[i]));
        report_body["questions"] = questions;
        write_text_file(config.report_path, report_body.dump(2) + "\n");
        out << "report: " << config.report_path << "\n";
    }
    if (!config.log_path.empty() && !ctx.question_log.empty()) {
        write_text_file(config.log_path, ctx.question_log.dump(2) + "\n");
        out << "log: " << config.log_path << "\n";
    }
}

}  // namespace

void cmd_build(const RunConfig& config, std::ostream& out) {
    Corpus corpus = resolve_corpus(config);
    if (config.thesaurus_path.empty()) throw config_error("set [thesaurus] path");
    Thesaurus thesaurus = Thesaurus::load_file(config.thesaurus_path);
    for (const auto& w : thesaurus.load_warnings()) out << "thesaurus warning: " << w << "\n";

    auto build = build_engine_cached(config, corpus, thesaurus, resolve_input_pairs(config));
    print_build_stats(build.stats, build.cache_notes, out);

    if (!config.report_path.empty()) {
        json j = build_json(config, build.stats);
        j["command"] = "build";
        write_text_file(config.report_path, j.dump(2) + "\n");
        out << "report: " << config.report_path << "\n";
    }
}

void cmd_solve_sat(const RunConfig& config, std::ostream& out) {
    json body;
    SatContext ctx = run_sat_with_strategy(config, out, &body);
    emit_sat_outputs(config, "solve-sat", ctx, std::move(body), out);
}

void cmd_ablate(const RunConfig& config, std::ostream& out) {
    const auto& a = config.ablation;
    out << "ablation: svd=" << (a.use_svd ? "on" : "off")
        << " synonyms=" << (a.use_synonyms ? "on" : "off")
        << " symmetry=" << (a.symmetric ? "on" : "off")
        << " alternates=" << (a.better_alternates_only ? "better" : "all");
    if (a.top_n) out << " top_n=" << *a.top_n;
    out << "\n";
    json body;
    SatContext ctx = run_sat_with_strategy(config, out, &body);
    emit_sat_outputs(config, "ablate", ctx, std::move(body), out);
}

void cmd_baseline_vsm(const RunConfig& config, std::ostream& out) {
    RunConfig vsm = config;
    vsm.strategy = "vsm";
    json body;
    SatContext ctx = run_sat_with_strategy(vsm, out, &body);
    emit_sat_outputs(vsm, "baseline-vsm", ctx, std::move(body), out);
}

void cmd_classify_nm(const RunConfig& config, std::ostream& out) {
    if (config.noun_modifier_path.empty())
        throw config_error("set [input] noun_modifiers = <file>");
    auto examples = load_noun_modifier_file(config.noun_modifier_path);

    if (config.strategy == "majority") {
        double a30 = majority_baseline_accuracy(examples, 30);
        double a5 = majority_baseline_accuracy(examples, 5);
        out << "majority baseline: 30-class accuracy " << a30 << "%, 5-class accuracy " << a5
            << "%\n";
        if (!config.report_path.empty()) {
            json j{{"command", "classify-nm"},
                   {"strategy", "majority"},
                   {"accuracy_30", a30},
                   {"accuracy_5", a5}};
            write_text_file(config.report_path, j.dump(2) + "\n");
            out << "report: " << config.report_path << "\n";
        }
        return;
    }
    if (config.strategy != "lra") throw config_error("classify-nm supports strategies lra, majority");

    Corpus corpus = resolve_corpus(config);
    Thesaurus thesaurus = Thesaurus::load_file(config.thesaurus_path);
    RunConfig cfg = config;
    cfg.noun_modifier_path = config.noun_modifier_path;
    auto build = build_engine_cached(cfg, corpus, thesaurus, resolve_input_pairs(cfg));
    print_build_stats(build.stats, build.cache_notes, out);
    const LraEngine& engine = build.engine;

    auto full = [&engine](const WordPair& a, const WordPair& b) {
        return engine.similarity(a, b).value;
    };
    auto stage1 = [&engine](const WordPair& a, const WordPair& b) {
        return engine.original_cosine(a, b);
    };

    json body = build_json(config, build.stats);
    body["command"] = "classify-nm";
    body["strategy"] = "lra";
    for (int scheme : {30, 5}) {
        KnnOptions opts;
        opts.scheme = scheme;
        opts.threads = config.params.threads;
        KnnRun run = knn_classify(examples, full, stage1, opts);
        out << scheme << "-class (stage-1 neighbours: " << run.stage1_neighbours
            << ", cosines: " << run.cosine_evaluations << ")\n";
        out << run.report.to_text();
        body[scheme == 30 ? "report_30" : "report_5"] = report_json_value(run.report);
        body[scheme == 30 ? "stage1_neighbours_30" : "stage1_neighbours_5"] = run.stage1_neighbours;
    }
    if (!config.report_path.empty()) {
        write_text_file(config.report_path, body.dump(2) + "\n");
        out << "report: " << config.report_path << "\n";
    }
}

void cmd_inspect(const RunConfig& config, const std::string& pair_text_arg, int top_n,
                 std::ostream& out) {
    WordPair pair = parse_word_pair(pair_text_arg, "inspect");
    Corpus corpus = resolve_corpus(config);
    Thesaurus thesaurus = Thesaurus::load_file(config.thesaurus_path);
    auto build = build_engine_cached(config, corpus, thesaurus, resolve_input_pairs(config));

    auto weights = build.engine.top_pattern_weights(pair, top_n);
    out << "top " << weights.size() << " pattern weights for " << pair_text(pair) << ":\n";
    for (const auto& [pattern, weight] : weights) {
        const char* dir = pattern.dir == Direction::forward ? "w1 .. w2" : "w2 .. w1";
        out << "  " << format_double(weight) << "  [" << dir << "]  " << pattern.tmpl.text()
            << "\n";
    }
}

}  // namespace relsim
