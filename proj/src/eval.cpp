#include "relsim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "relsim/errors.hpp"
#include "relsim/parallel.hpp"

namespace relsim {

namespace {

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(std::string("cannot open ") + what + " file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct LineReader {
    std::string_view text;
    std::string source;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    // Next non-empty, non-comment line; empty optional at end of input.
    std::optional<std::pair<std::string_view, std::size_t>> next() {
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            std::string_view line =
                nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            return std::make_pair(line, line_no);
        }
        return std::nullopt;
    }
};

}  // namespace

std::vector<AnalogyQuestion> parse_sat_text(std::string_view text, const std::string& source_name) {
    std::vector<AnalogyQuestion> out;
    LineReader reader{text, source_name};
    for (;;) {
        auto stem_line = reader.next();
        if (!stem_line) break;
        AnalogyQuestion q;
        q.stem = parse_word_pair(stem_line->first,
                                 source_name + ":" + std::to_string(stem_line->second));
        for (int c = 0; c < 5; ++c) {
            auto line = reader.next();
            if (!line)
                throw parse_error(source_name + ": question starting at line " +
                                  std::to_string(stem_line->second) + " is missing choice " +
                                  std::to_string(c + 1));
            q.choices.push_back(
                parse_word_pair(line->first, source_name + ":" + std::to_string(line->second)));
        }
        auto answer = reader.next();
        if (!answer)
            throw parse_error(source_name + ": question starting at line " +
                              std::to_string(stem_line->second) + " is missing the answer line");
        std::string a(answer->first);
        if (a.size() != 1 || a[0] < 'a' || a[0] > 'e')
            throw parse_error(source_name + ":" + std::to_string(answer->second) +
                              ": expected answer letter a-e, got '" + a + "'");
        q.answer = static_cast<std::size_t>(a[0] - 'a');
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<AnalogyQuestion> load_sat_file(const std::string& path) {
    return parse_sat_text(read_file(path, "question"), path);
}

namespace {

// Table of the 30 relation labels and their groups.
const std::vector<std::pair<std::string, std::string>>& class_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"cs", "Causality"},      {"eff", "Causality"},     {"prp", "Causality"},
        {"detr", "Causality"},    {"freq", "Temporality"},  {"tat", "Temporality"},
        {"tthr", "Temporality"},  {"dir", "Spatial"},       {"loc", "Spatial"},
        {"lat", "Spatial"},       {"lfr", "Spatial"},       {"ag", "Participant"},
        {"ben", "Participant"},   {"inst", "Participant"},  {"obj", "Participant"},
        {"obj_prop", "Participant"}, {"part", "Participant"}, {"posr", "Participant"},
        {"prop", "Participant"},  {"prod", "Participant"},  {"src", "Participant"},
        {"st", "Participant"},    {"whl", "Participant"},   {"cntr", "Quality"},
        {"cont", "Quality"},      {"eq", "Quality"},        {"mat", "Quality"},
        {"meas", "Quality"},      {"top", "Quality"},       {"type", "Quality"},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& noun_modifier_classes30() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [abbr, group] : class_table()) {
            (void)group;
            out.push_back(abbr);
        }
        return out;
    }();
    return names;
}

std::string collapse_classes(const std::string& class30) {
    for (const auto& [abbr, group] : class_table())
        if (abbr == class30) return group;
    throw parse_error("unknown relation class '" + class30 + "'");
}

std::vector<NounModifierExample> parse_noun_modifier_text(std::string_view text,
                                                          const std::string& source_name) {
    std::vector<NounModifierExample> out;
    LineReader reader{text, source_name};
    auto header = reader.next();
    if (!header) return out;
    // Header line required; verify it looks like one rather than data.
    {
        std::string h = to_lower(header->first);
        if (h.find("modifier") == std::string::npos || h.find("head") == std::string::npos)
            throw parse_error(source_name + ":" + std::to_string(header->second) +
                              ": expected header line 'modifier,head,class30'");
    }
    while (auto line = reader.next()) {
        auto where = source_name + ":" + std::to_string(line->second);
        std::string_view s = line->first;
        auto c1 = s.find(',');
        auto c2 = c1 == std::string_view::npos ? std::string_view::npos : s.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw parse_error(where + ": expected 'modifier,head,class30'");
        NounModifierExample ex;
        ex.modifier = to_lower(trim(s.substr(0, c1)));
        ex.head = to_lower(trim(s.substr(c1 + 1, c2 - c1 - 1)));
        ex.class30 = std::string(trim(s.substr(c2 + 1)));
        if (ex.modifier.empty() || ex.head.empty()) throw parse_error(where + ": empty word");
        if (ex.modifier == ex.head) throw parse_error(where + ": modifier equals head");
        collapse_classes(ex.class30);  // validates the label
        out.push_back(std::move(ex));
    }
    return out;
}

std::vector<NounModifierExample> load_noun_modifier_file(const std::string& path) {
    return parse_noun_modifier_text(read_file(path, "noun-modifier"), path);
}

// ----------------------------------------------------------------------

EvalReport score_run(const std::vector<Outcome>& outcomes) {
    EvalReport r;
    for (auto o : outcomes) {
        switch (o) {
            case Outcome::correct: ++r.correct; break;
            case Outcome::incorrect: ++r.incorrect; break;
            case Outcome::skipped: ++r.skipped; break;
        }
    }
    const std::size_t guesses = r.correct + r.incorrect;
    const std::size_t total = guesses + r.skipped;
    if (guesses > 0)
        r.precision = 100.0 * static_cast<double>(r.correct) / static_cast<double>(guesses);
    r.recall = total > 0 ? 100.0 * static_cast<double>(r.correct) / static_cast<double>(total) : 0.0;
    if (r.precision && (*r.precision + r.recall) > 0)
        r.f = 2.0 * *r.precision * r.recall / (*r.precision + r.recall);
    return r;
}

std::string EvalReport::to_text() const {
    std::ostringstream os;
    auto pct = [](std::optional<double> v) {
        if (!v) return std::string("n/a");
        std::ostringstream s;
        s.precision(1);
        s << std::fixed << *v;
        return s.str();
    };
    os << "correct " << correct << ", incorrect " << incorrect << ", skipped " << skipped;
    if (ties_flagged) os << " (" << ties_flagged << " tie" << (ties_flagged == 1 ? "" : "s") << ")";
    os << "\n";
    os << "precision " << pct(precision) << "  recall " << pct(recall) << "  F " << pct(f) << "\n";
    if (!per_class.empty()) {
        os << "macro precision " << pct(macro_precision) << "  macro recall " << pct(macro_recall)
           << "  macro F " << pct(macro_f) << "\n";
        for (const auto& c : per_class) {
            os << "  " << c.label << ": actual " << c.actual << ", predicted " << c.predicted
               << ", correct " << c.correct << ", P " << (c.precision_defined ? pct(c.precision) : "n/a")
               << ", R " << pct(c.recall) << ", F " << pct(c.f) << "\n";
        }
    }
    return os.str();
}

QuestionResult solve_question(const AnalogyQuestion& q, const PairMeasure& measure) {
    QuestionResult r;
    r.scores.reserve(q.choices.size());
    for (const auto& choice : q.choices) r.scores.push_back(measure(q.stem, choice));

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
        if (!r.scores[i]) continue;
        if (!best) {
            best = i;
        } else if (*r.scores[i] > *r.scores[*best]) {
            best = i;
        } else if (*r.scores[i] == *r.scores[*best]) {
            r.tie = true;  // keep the earlier choice
        }
    }
    r.guess = best;
    return r;
}

SatRun run_sat(const std::vector<AnalogyQuestion>& questions, const PairMeasure& measure,
               int threads) {
    SatRun run;
    run.results.resize(questions.size());
    parallel_for(questions.size(), threads, [&](std::size_t i) {
        run.results[i] = solve_question(questions[i], measure);
    });
    std::vector<Outcome> outcomes;
    outcomes.reserve(questions.size());
    std::size_t ties = 0;
    for (std::size_t i = 0; i < questions.size(); ++i) {
        const auto& r = run.results[i];
        if (!r.guess)
            outcomes.push_back(Outcome::skipped);
        else
            outcomes.push_back(*r.guess == questions[i].answer ? Outcome::correct
                                                               : Outcome::incorrect);
        if (r.tie) ++ties;
    }
    run.report = score_run(outcomes);
    run.report.ties_flagged = ties;
    return run;
}

EvalReport run_ablation(const Corpus& corpus, const Thesaurus& thesaurus,
                        const std::vector<AnalogyQuestion>& questions, const LraParams& params,
                        const AblationConfig& ablation, BuildStats* stats, SatRun* details) {
    std::vector<WordPair> pairs;
    for (const auto& q : questions) {
        pairs.push_back(q.stem);
        for (const auto& c : q.choices) pairs.push_back(c);
    }
    LraEngine engine = LraEngine::build(corpus, thesaurus, pairs, params, ablation, stats);
    auto measure = [&engine](const WordPair& a, const WordPair& b) {
        return engine.similarity(a, b).value;
    };
    SatRun run = run_sat(questions, measure, params.threads);
    if (details) *details = std::move(run);
    return details ? details->report : run.report;
}

// ----------------------------------------------------------------------

namespace {

std::string label_of(const NounModifierExample& ex, int scheme) {
    if (scheme == 30) return ex.class30;
    if (scheme == 5) return collapse_classes(ex.class30);
    throw config_error("scheme must be 30 or 5");
}

void fill_class_metrics(EvalReport& report, const std::vector<std::string>& actual,
                        const std::vector<std::optional<std::string>>& predicted) {
    std::map<std::string, ClassMetrics> per;
    for (const auto& a : actual) {
        auto& c = per[a];
        c.label = a;
        ++c.actual;
    }
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!predicted[i]) continue;
        auto it = per.find(*predicted[i]);
        if (it == per.end()) continue;  // cannot happen: predictions are training labels
        ++it->second.predicted;
        if (*predicted[i] == actual[i]) ++it->second.correct;
    }
    double sp = 0, sr = 0, sf = 0;
    for (auto& [label, c] : per) {
        (void)label;
        c.precision_defined = c.predicted > 0;
        // Undefined per-class precision counts as 0 in the macro average.
        c.precision = c.precision_defined
                          ? 100.0 * static_cast<double>(c.correct) / static_cast<double>(c.predicted)
                          : 0.0;
        c.recall = c.actual > 0
                       ? 100.0 * static_cast<double>(c.correct) / static_cast<double>(c.actual)
                       : 0.0;
        c.f = (c.precision + c.recall) > 0 ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
                                           : 0.0;
        sp += c.precision;
        sr += c.recall;
        sf += c.f;
        report.per_class.push_back(c);
    }
    const double n = static_cast<double>(report.per_class.size());
    if (n > 0) {
        report.macro_precision = sp / n;
        report.macro_recall = sr / n;
        report.macro_f = sf / n;
    }
}

}  // namespace

KnnRun knn_classify(const std::vector<NounModifierExample>& examples, const PairMeasure& full,
                    const PairMeasure& stage1, const KnnOptions& options) {
    if (examples.size() < 2) throw config_error("leave-one-out needs at least 2 examples");
    const bool two_stage = options.stage1_neighbours > 0 && stage1 != nullptr;

    KnnRun run;
    run.stage1_neighbours = two_stage ? options.stage1_neighbours : 0;
    run.predictions.resize(examples.size());

    std::vector<std::size_t> cosines(examples.size(), 0);
    parallel_for(examples.size(), options.threads, [&](std::size_t i) {
        const WordPair test = examples[i].pair();
        std::vector<std::size_t> candidates;
        if (two_stage) {
            // Stage 1: rank training pairs by the cheap measure, keep the top N.
            std::vector<std::pair<double, std::size_t>> ranked;
            for (std::size_t j = 0; j < examples.size(); ++j) {
                if (j == i) continue;
                auto s = stage1(test, examples[j].pair());
                ++cosines[i];
                if (s) ranked.push_back({*s, j});
            }
            std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
                return x.first > y.first;
            });
            if (ranked.size() > options.stage1_neighbours) ranked.resize(options.stage1_neighbours);
            for (const auto& [s, j] : ranked) {
                (void)s;
                candidates.push_back(j);
            }
            std::sort(candidates.begin(), candidates.end());  // first-in-order tie break
        } else {
            for (std::size_t j = 0; j < examples.size(); ++j)
                if (j != i) candidates.push_back(j);
        }

        std::optional<std::size_t> best;
        std::optional<double> best_score;
        bool tie = false;
        for (std::size_t j : candidates) {
            auto s = full(test, examples[j].pair());
            ++cosines[i];
            if (!s) continue;
            if (!best_score || *s > *best_score) {
                best = j;
                best_score = s;
                tie = false;
            } else if (*s == *best_score) {
                tie = true;
            }
        }
        if (best) {
            run.predictions[i].label = label_of(examples[*best], options.scheme);
            run.predictions[i].neighbour = best;
            run.predictions[i].tie = tie;
        }
    });

    std::vector<Outcome> outcomes;
    std::vector<std::string> actual;
    std::vector<std::optional<std::string>> predicted;
    std::size_t ties = 0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        actual.push_back(label_of(examples[i], options.scheme));
        predicted.push_back(run.predictions[i].label);
        if (!run.predictions[i].label)
            outcomes.push_back(Outcome::skipped);
        else
            outcomes.push_back(*run.predictions[i].label == actual.back() ? Outcome::correct
                                                                          : Outcome::incorrect);
        if (run.predictions[i].tie) ++ties;
        run.cosine_evaluations += cosines[i];
    }
    run.report = score_run(outcomes);
    run.report.ties_flagged = ties;
    fill_class_metrics(run.report, actual, predicted);
    return run;
}

double majority_baseline_accuracy(const std::vector<NounModifierExample>& examples, int scheme) {
    if (examples.empty()) throw config_error("no examples");
    std::map<std::string, std::size_t> counts;
    for (const auto& ex : examples) ++counts[label_of(ex, scheme)];
    std::size_t best = 0;
    for (const auto& [label, n] : counts) {
        (void)label;
        best = std::max(best, n);
    }
    return 100.0 * static_cast<double>(best) / static_cast<double>(examples.size());
}

TwoStageAgreement two_stage_agreement(const std::vector<NounModifierExample>& examples,
                                      const PairMeasure& full, const PairMeasure& stage1,
                                      const KnnOptions& options) {
    KnnOptions exhaustive_opts = options;
    exhaustive_opts.stage1_neighbours = 0;
    KnnRun exhaustive = knn_classify(examples, full, nullptr, exhaustive_opts);
    KnnRun staged = knn_classify(examples, full, stage1, options);

    TwoStageAgreement agg;
    agg.examples = examples.size();
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& ex_pred = exhaustive.predictions[i];
        const auto& st_pred = staged.predictions[i];
        const bool same_label = ex_pred.label == st_pred.label;
        if (same_label) ++agg.agreed;

        if (!ex_pred.neighbour) continue;
        // Eligible: the exhaustive nearest neighbour survived stage 1. We
        // re-derive the stage-1 candidate set to test membership.
        const WordPair test = examples[i].pair();
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t j = 0; j < examples.size(); ++j) {
            if (j == i) continue;
            auto s = stage1(test, examples[j].pair());
            if (s) ranked.push_back({*s, j});
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        if (ranked.size() > options.stage1_neighbours) ranked.resize(options.stage1_neighbours);
        bool eligible = false;
        for (const auto& [s, j] : ranked) {
            (void)s;
            if (j == *ex_pred.neighbour) eligible = true;
        }
        if (eligible) {
            ++agg.eligible;
            if (same_label) ++agg.eligible_agreed;
        }
    }
    return agg;
}

}  // namespace relsim
