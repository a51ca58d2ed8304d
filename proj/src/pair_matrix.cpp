#include "relsim/pair_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "relsim/errors.hpp"
#include "relsim/parallel.hpp"

namespace relsim {

namespace {

// Distinct pairs across families, originals before alternates, input order
// preserved. The unordered key collapses (a, b) with (b, a).
std::vector<WordPair> distinct_pairs(const std::vector<PairFamily>& families, bool unordered) {
    std::vector<WordPair> out;
    std::unordered_set<WordPair, WordPairHash> seen;
    auto add = [&](const WordPair& p) {
        WordPair key = p;
        if (unordered && !(key.a < key.b)) key = key.reversed();
        if (!seen.insert(key).second) return;
        out.push_back(p);
    };
    for (const auto& f : families) {
        add(f.original);
        for (const auto& alt : f.alternates) add(alt.pair);
    }
    return out;
}

}  // namespace

PhraseBank collect_phrases(const std::vector<PairFamily>& families, const Corpus& corpus,
                           int max_phrase, int threads) {
    PhraseBank bank;
    auto pairs = distinct_pairs(families, /*unordered=*/true);
    bank.entries.resize(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        bank.entries[i].pair = pairs[i];
        bank.entries[i].phrases = corpus.enumerate_phrases(pairs[i], max_phrase);
    });
    for (std::size_t i = 0; i < bank.entries.size(); ++i) {
        bank.index.emplace(bank.entries[i].pair, i);
        bank.index.emplace(bank.entries[i].pair.reversed(), i);
    }
    return bank;
}

HarvestResult harvest_patterns(const PhraseBank& bank, int num_patterns, bool symmetric) {
    if (num_patterns < 1) throw config_error("num_patterns must be >= 1");
    HarvestResult result;
    result.symmetric = symmetric;

    if (symmetric) {
        std::unordered_map<PatternTemplate, std::uint32_t, PatternTemplateHash> score;
        for (const auto& entry : bank.entries) {
            std::unordered_set<PatternTemplate, PatternTemplateHash> seen;
            for (const auto& phrase : entry.phrases)
                for (auto& t : generate_templates(phrase.intervening)) seen.insert(std::move(t));
            for (const auto& t : seen) ++score[t];
        }
        std::vector<std::pair<std::string, const PatternTemplate*>> ranked;
        ranked.reserve(score.size());
        for (const auto& [t, s] : score) {
            (void)s;
            ranked.push_back({t.text(), &t});
        }
        std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
            auto sx = score.at(*x.second), sy = score.at(*y.second);
            if (sx != sy) return sx > sy;
            return x.first < y.first;
        });
        result.distinct_available = ranked.size();
        const std::size_t keep = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(num_patterns));
        result.fewer_than_requested = keep < static_cast<std::size_t>(num_patterns);
        result.templates.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i) result.templates.push_back(*ranked[i].second);
    } else {
        // Directed patterns scored separately; direction is relative to the
        // canonical orientation of each pair.
        std::unordered_map<DirectedPattern, std::uint32_t, DirectedPatternHash> score;
        for (const auto& entry : bank.entries) {
            std::unordered_set<DirectedPattern, DirectedPatternHash> seen;
            for (const auto& phrase : entry.phrases) {
                const bool fwd = suffix_insensitive_match(entry.pair.a, phrase.first) &&
                                 suffix_insensitive_match(entry.pair.b, phrase.last);
                const bool rev = suffix_insensitive_match(entry.pair.b, phrase.first) &&
                                 suffix_insensitive_match(entry.pair.a, phrase.last);
                for (auto& t : generate_templates(phrase.intervening)) {
                    if (fwd) seen.insert({t, Direction::forward});
                    if (rev) seen.insert({std::move(t), Direction::reversed});
                }
            }
            for (const auto& p : seen) ++score[p];
        }
        std::vector<std::pair<std::string, const DirectedPattern*>> ranked;
        ranked.reserve(score.size());
        for (const auto& [p, s] : score) {
            (void)s;
            // Direction folded into the sort key after the text, so ties
            // stay deterministic.
            ranked.push_back({p.tmpl.text() + (p.dir == Direction::forward ? "\x01" : "\x02"), &p});
        }
        std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
            auto sx = score.at(*x.second), sy = score.at(*y.second);
            if (sx != sy) return sx > sy;
            return x.first < y.first;
        });
        result.distinct_available = ranked.size();
        const std::size_t want = 2 * static_cast<std::size_t>(num_patterns);
        const std::size_t keep = std::min<std::size_t>(ranked.size(), want);
        result.fewer_than_requested = keep < want;
        result.directed.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i) result.directed.push_back(*ranked[i].second);
    }
    return result;
}

std::size_t PairPatternMatrix::zero_row_count() const {
    std::size_t z = 0;
    for (std::size_t i = 0; i < rows(); ++i)
        if (cells.row_empty(i)) ++z;
    return z;
}

PairPatternMatrix build_matrix(const std::vector<PairFamily>& families, const PhraseBank& bank,
                               const HarvestResult& patterns) {
    PairPatternMatrix out;
    out.symmetric = patterns.symmetric;
    out.weighted = false;

    // Column descriptors and template -> column lookup.
    std::unordered_map<PatternTemplate, std::size_t, PatternTemplateHash> tmpl_col;
    std::unordered_map<DirectedPattern, std::size_t, DirectedPatternHash> directed_col;
    if (patterns.symmetric) {
        out.columns.reserve(patterns.templates.size() * 2);
        for (std::size_t t = 0; t < patterns.templates.size(); ++t) {
            tmpl_col.emplace(patterns.templates[t], 2 * t);
            out.columns.push_back({patterns.templates[t], Direction::forward});
            out.columns.push_back({patterns.templates[t], Direction::reversed});
        }
    } else {
        out.columns = patterns.directed;
        for (std::size_t c = 0; c < out.columns.size(); ++c) directed_col.emplace(out.columns[c], c);
    }

    // Rows.
    if (patterns.symmetric) {
        for (const auto& entry : bank.entries) {
            out.row_index.emplace(entry.pair, out.row_pairs.size());
            out.row_pairs.push_back(entry.pair);
            out.row_index.emplace(entry.pair.reversed(), out.row_pairs.size());
            out.row_pairs.push_back(entry.pair.reversed());
        }
    } else {
        for (const auto& p : distinct_pairs(families, /*unordered=*/false)) {
            out.row_index.emplace(p, out.row_pairs.size());
            out.row_pairs.push_back(p);
        }
    }

    std::vector<Triplet> triplets;
    for (std::size_t r = 0; r < out.row_pairs.size(); ++r) {
        const WordPair& rp = out.row_pairs[r];
        const PairPhrases* pp = bank.find(rp);
        if (!pp) continue;
        for (const auto& phrase : pp->phrases) {
            const bool fwd = suffix_insensitive_match(rp.a, phrase.first) &&
                             suffix_insensitive_match(rp.b, phrase.last);
            const bool rev = suffix_insensitive_match(rp.b, phrase.first) &&
                             suffix_insensitive_match(rp.a, phrase.last);
            if (!fwd && !rev) continue;
            for (const auto& t : generate_templates(phrase.intervening)) {
                if (patterns.symmetric) {
                    auto it = tmpl_col.find(t);
                    if (it == tmpl_col.end()) continue;
                    if (fwd)
                        triplets.push_back({r, it->second, static_cast<double>(phrase.count)});
                    if (rev)
                        triplets.push_back({r, it->second + 1, static_cast<double>(phrase.count)});
                } else {
                    if (fwd) {
                        auto it = directed_col.find({t, Direction::forward});
                        if (it != directed_col.end())
                            triplets.push_back({r, it->second, static_cast<double>(phrase.count)});
                    }
                    if (rev) {
                        auto it = directed_col.find({t, Direction::reversed});
                        if (it != directed_col.end())
                            triplets.push_back({r, it->second, static_cast<double>(phrase.count)});
                    }
                }
            }
        }
    }
    out.cells = SparseMatrix(out.row_pairs.size(), out.columns.size(), std::move(triplets));
    return out;
}

std::vector<double> log_entropy_weights(const SparseMatrix& raw, bool share_direction_mates) {
    const std::size_t m = raw.rows(), n = raw.cols();
    if (m < 2) throw config_error("log-entropy weighting needs at least 2 rows");

    std::vector<std::vector<double>> col_values(n);
    raw.for_each([&](std::size_t, std::size_t j, double v) { col_values[j].push_back(v); });

    const double log_m = std::log(static_cast<double>(m));
    std::vector<double> weights(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (share_direction_mates && (j % 2 == 1)) {
            weights[j] = weights[j - 1];  // identical value multiset by construction
            continue;
        }
        const auto& vals = col_values[j];
        if (vals.empty()) {
            weights[j] = 0.0;  // all-zero column
            continue;
        }
        double sum = 0;
        for (double v : vals) sum += v;
        double entropy = 0;
        for (double v : vals) {
            double p = v / sum;
            if (p > 0) entropy -= p * std::log(p);
        }
        double w = 1.0 - entropy / log_m;
        weights[j] = std::min(1.0, std::max(0.0, w));  // clip rounding spill
    }
    return weights;
}

PairPatternMatrix apply_log_entropy(const PairPatternMatrix& raw) {
    if (raw.weighted) throw config_error("matrix is already weighted");
    PairPatternMatrix out;
    out.row_pairs = raw.row_pairs;
    out.row_index = raw.row_index;
    out.columns = raw.columns;
    out.symmetric = raw.symmetric;
    out.weighted = true;
    auto weights = log_entropy_weights(raw.cells, raw.symmetric);
    out.cells = raw.cells.transformed(weights, /*log_transform=*/true);
    return out;
}

}  // namespace relsim
