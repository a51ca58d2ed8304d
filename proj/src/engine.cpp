#include "relsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include "relsim/errors.hpp"
#include "relsim/parallel.hpp"

namespace relsim {

namespace {

class StepTimer {
public:
    explicit StepTimer(BuildStats* stats) : stats_(stats) {}

    template <typename Fn>
    auto run(const std::string& label, Fn&& fn) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(label, start);
        } else {
            auto out = fn();
            record(label, start);
            return out;
        }
    }

private:
    void record(const std::string& label, std::chrono::steady_clock::time_point start) {
        if (!stats_) return;
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        stats_->step_times.push_back({label, s});
    }

    BuildStats* stats_;
};

std::vector<WordPair> dedupe_ordered(const std::vector<WordPair>& pairs) {
    std::vector<WordPair> out;
    std::unordered_set<WordPair, WordPairHash> seen;
    for (const auto& p : pairs)
        if (seen.insert(p).second) out.push_back(p);
    return out;
}

}  // namespace

void LraParams::validate() const {
    if (num_sim < 1) throw config_error("num_sim must be >= 1");
    if (max_phrase < 3) throw config_error("max_phrase must be >= 3");
    if (num_filter < 0) throw config_error("num_filter must be >= 0");
    if (num_patterns < 1) throw config_error("num_patterns must be >= 1");
    if (k < 1) throw config_error("k must be >= 1");
    if (threads < 0) throw config_error("threads must be >= 0");
}

void AblationConfig::validate() const {
    if (top_n && !use_svd)
        throw config_error("top_n row truncation requires the SVD stage (svd=off contradicts top_n)");
    if (top_n && *top_n < 1) throw config_error("top_n must be >= 1");
}

double relational_similarity(const std::vector<double>& cosines, double original_cosine,
                             bool better_only) {
    if (cosines.empty()) throw config_error("relational_similarity: no cosines");
    double sum = 0;
    std::size_t count = 0;
    for (double c : cosines) {
        if (better_only && c < original_cosine) continue;
        sum += c;
        ++count;
    }
    if (count == 0) throw config_error("relational_similarity: original cosine not in the set");
    return sum / static_cast<double>(count);
}

LraEngine LraEngine::build(const Corpus& corpus, const Thesaurus& thesaurus,
                           const std::vector<WordPair>& input_pairs, const LraParams& params,
                           const AblationConfig& ablation, BuildStats* stats) {
    params.validate();
    ablation.validate();

    LraEngine engine;
    engine.params_ = params;
    engine.ablation_ = ablation;
    StepTimer timer(stats);

    auto originals = dedupe_ordered(input_pairs);
    if (stats) {
        stats->input_pairs = input_pairs.size();
        stats->families = originals.size();
    }

    // Steps 1-2: alternates from the thesaurus, filtered by co-occurrence.
    auto alternates = timer.run("1 find alternates", [&] {
        std::vector<std::vector<AlternatePair>> out(originals.size());
        if (ablation.use_synonyms) {
            parallel_for(originals.size(), params.threads, [&](std::size_t i) {
                out[i] = find_alternates(originals[i], thesaurus, params.num_sim);
            });
        }
        return out;
    });
    engine.families_ = timer.run("2 filter alternates", [&] {
        std::vector<PairFamily> fams(originals.size());
        parallel_for(originals.size(), params.threads, [&](std::size_t i) {
            fams[i] = filter_alternates(originals[i], std::move(alternates[i]), corpus,
                                        params.max_phrase, params.num_filter);
        });
        return fams;
    });

    // Step 3: phrases for every family pair.
    auto bank = timer.run("3 find phrases", [&] {
        return collect_phrases(engine.families_, corpus, params.max_phrase, params.threads);
    });

    // Step 4: pattern harvest.
    auto harvest = timer.run("4 find patterns", [&] {
        return harvest_patterns(bank, params.num_patterns, ablation.symmetric);
    });
    if (stats) {
        stats->patterns_available = harvest.distinct_available;
        stats->patterns_kept = harvest.symmetric ? harvest.templates.size() : harvest.directed.size();
        if (harvest.fewer_than_requested)
            stats->warnings.push_back("only " + std::to_string(stats->patterns_kept) +
                                      " distinct patterns available; requested " +
                                      std::to_string(params.num_patterns));
    }

    // Steps 5-7: the sparse pair-pattern matrix.
    auto raw = timer.run("5-7 generate sparse matrix", [&] {
        return build_matrix(engine.families_, bank, harvest);
    });

    // Step 8: log-entropy weighting.
    engine.weighted_ = timer.run("8 calculate entropy", [&] { return apply_log_entropy(raw); });

    // Steps 9-10: truncated SVD and projection.
    if (ablation.use_svd && engine.weighted_.cells.nnz() > 0) {
        engine.svd_ = timer.run("9 apply svd", [&] {
            SvdOptions opts = params.svd;
            // Let the basis grow to the full operator dimension by default;
            // at that point the decomposition is exact and cannot fail.
            const std::size_t dim = std::min(engine.weighted_.rows(), engine.weighted_.cols());
            opts.max_iter = std::max(opts.max_iter, static_cast<int>(dim));
            return truncated_svd(engine.weighted_.cells, params.k, opts);
        });
    } else if (ablation.use_svd) {
        if (stats) stats->warnings.push_back("weighted matrix is empty; skipping SVD");
    }
    timer.run("10 projection", [&] { engine.finalize_rows(); });

    if (stats) {
        stats->family_pairs = 0;
        for (const auto& f : engine.families_) stats->family_pairs += 1 + f.alternates.size();
        stats->rows = engine.weighted_.rows();
        stats->cols = engine.weighted_.cols();
        stats->nnz = engine.weighted_.cells.nnz();
        stats->density = engine.weighted_.cells.density();
        stats->zero_rows = engine.weighted_.zero_row_count();
        stats->effective_k = engine.svd_ ? engine.svd_->k() : 0;
        stats->k_truncated_to_rank = engine.svd_ && engine.svd_->k_truncated_to_rank;
    }
    return engine;
}

LraEngine LraEngine::from_parts(std::vector<PairFamily> families, PairPatternMatrix weighted,
                                std::optional<SvdResult> svd, const LraParams& params,
                                const AblationConfig& ablation) {
    params.validate();
    ablation.validate();
    LraEngine engine;
    engine.params_ = params;
    engine.ablation_ = ablation;
    engine.families_ = std::move(families);
    engine.weighted_ = std::move(weighted);
    engine.svd_ = std::move(svd);
    engine.finalize_rows();
    return engine;
}

void LraEngine::finalize_rows() {
    family_lookup_.clear();
    for (std::size_t i = 0; i < families_.size(); ++i)
        family_lookup_.emplace(families_[i].original, FamilyRef{i, false});
    if (ablation_.symmetric) {
        for (std::size_t i = 0; i < families_.size(); ++i)
            family_lookup_.emplace(families_[i].original.reversed(), FamilyRef{i, true});
    }

    const std::size_t m = weighted_.rows();
    row_usable_.assign(m, false);
    for (std::size_t i = 0; i < m; ++i) row_usable_[i] = !weighted_.cells.row_empty(i);

    if (!svd_) {
        row_space_ = DenseMatrix();
        return;
    }

    if (ablation_.top_n) {
        // Reconstruct U_k S_k V_k^T rows and keep only the N largest entries
        // of each. The reconstruction preserves the projection's cosines
        // while staying in pattern coordinates.
        const std::size_t n = weighted_.cols();
        const std::size_t k = svd_->k();
        DenseMatrix proj = svd_->projection();
        row_space_ = DenseMatrix(m, n);
        const std::size_t N = static_cast<std::size_t>(*ablation_.top_n);
        for (std::size_t i = 0; i < m; ++i) {
            if (!row_usable_[i]) continue;
            std::vector<double> full(n, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0;
                for (std::size_t c = 0; c < k; ++c) acc += proj.at(i, c) * svd_->V.at(j, c);
                full[j] = acc;
            }
            if (N < n) {
                // Keep the N largest values (signed, matching the goal of
                // surfacing the most characteristic patterns).
                std::vector<std::size_t> order(n);
                for (std::size_t j = 0; j < n; ++j) order[j] = j;
                std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(N),
                                 order.end(), [&](std::size_t x, std::size_t y) {
                                     if (full[x] != full[y]) return full[x] > full[y];
                                     return x < y;
                                 });
                std::vector<double> kept(n, 0.0);
                for (std::size_t t = 0; t < N; ++t) kept[order[t]] = full[order[t]];
                full = std::move(kept);
            }
            double norm2 = 0;
            for (double v : full) norm2 += v * v;
            if (norm2 == 0.0) {
                row_usable_[i] = false;
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) row_space_.at(i, j) = full[j];
        }
        return;
    }

    row_space_ = svd_->projection();
    // A zero weighted row projects to (numerical) zero; pin it exactly so
    // skip logic stays crisp.
    for (std::size_t i = 0; i < m; ++i)
        if (!row_usable_[i])
            for (std::size_t c = 0; c < row_space_.cols; ++c) row_space_.at(i, c) = 0.0;
}

std::optional<LraEngine::FamilyRef> LraEngine::family_of(const WordPair& pair) const {
    auto it = family_lookup_.find(pair);
    if (it == family_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> LraEngine::usable_row(const WordPair& pair) const {
    auto row = weighted_.row_of_pair(pair);
    if (!row || !row_usable_[*row]) return std::nullopt;
    return row;
}

double LraEngine::row_cosine(std::size_t i, std::size_t j) const {
    if (svd_) return cosine(row_space_.row(i), row_space_.row(j));
    // SVD ablated: cosines on the weighted sparse rows directly.
    return weighted_.cells.row_dot(i, j) / (weighted_.cells.row_norm(i) * weighted_.cells.row_norm(j));
}

SimilarityResult LraEngine::similarity(const WordPair& x, const WordPair& y) const {
    auto fx = family_of(x);
    auto fy = family_of(y);
    if (!fx) throw config_error("pair '" + x.a + ":" + x.b + "' is not in the engine's input set");
    if (!fy) throw config_error("pair '" + y.a + ":" + y.b + "' is not in the engine's input set");

    bool rev1 = fx->reversed, rev2 = fy->reversed;
    if (ablation_.symmetric && rev1) {
        // Evaluate jointly reversed queries through the canonical
        // orientation: sim(B:A, D:C) then takes exactly the same arithmetic
        // path as sim(A:B, C:D), making the symmetry bitwise.
        rev1 = false;
        rev2 = !rev2;
    }

    const PairFamily& fam1 = families_[fx->index];
    const PairFamily& fam2 = families_[fy->index];

    SimilarityResult result;

    auto orient = [](const WordPair& p, bool rev) { return rev ? p.reversed() : p; };

    struct Version {
        WordPair pair;
        std::size_t row;
        bool original;
    };
    auto versions_of = [&](const PairFamily& fam, bool rev) {
        std::vector<Version> out;
        WordPair orig = orient(fam.original, rev);
        if (auto row = usable_row(orig)) out.push_back({orig, *row, true});
        for (const auto& alt : fam.alternates) {
            WordPair p = orient(alt.pair, rev);
            if (auto row = usable_row(p)) out.push_back({p, *row, false});
        }
        return out;
    };

    auto v1 = versions_of(fam1, rev1);
    auto v2 = versions_of(fam2, rev2);
    // The originals must be present and nonzero on both sides; a dropped
    // alternate just shrinks the combination set.
    if (v1.empty() || !v1.front().original || v2.empty() || !v2.front().original) return result;

    result.combinations.reserve(v1.size() * v2.size());
    std::vector<double> cosines;
    cosines.reserve(v1.size() * v2.size());
    for (const auto& a : v1) {
        for (const auto& b : v2) {
            double c = row_cosine(a.row, b.row);
            result.combinations.push_back({a.pair, b.pair, c, a.original && b.original});
            cosines.push_back(c);
        }
    }
    result.original_cosine = result.combinations.front().cosine;
    result.value = relational_similarity(cosines, result.original_cosine,
                                         ablation_.better_alternates_only);
    return result;
}

std::optional<double> LraEngine::original_cosine(const WordPair& x, const WordPair& y) const {
    auto fx = family_of(x);
    auto fy = family_of(y);
    if (!fx || !fy) return std::nullopt;
    bool rev1 = fx->reversed, rev2 = fy->reversed;
    if (ablation_.symmetric && rev1) {
        rev1 = false;
        rev2 = !rev2;
    }
    WordPair p1 = rev1 ? families_[fx->index].original.reversed() : families_[fx->index].original;
    WordPair p2 = rev2 ? families_[fy->index].original.reversed() : families_[fy->index].original;
    auto r1 = usable_row(p1);
    auto r2 = usable_row(p2);
    if (!r1 || !r2) return std::nullopt;
    return row_cosine(*r1, *r2);
}

std::vector<std::pair<DirectedPattern, double>> LraEngine::top_pattern_weights(const WordPair& pair,
                                                                               int n) const {
    if (!svd_) throw config_error("pattern weights require an SVD-backed build");
    auto row = weighted_.row_of_pair(pair);
    if (!row) throw config_error("pair '" + pair.a + ":" + pair.b + "' has no row");
    if (n < 1) throw config_error("n must be >= 1");

    const std::size_t cols = weighted_.cols();
    const std::size_t k = svd_->k();
    DenseMatrix proj = svd_->projection();
    std::vector<std::pair<DirectedPattern, double>> entries;
    entries.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0;
        for (std::size_t c = 0; c < k; ++c) acc += proj.at(*row, c) * svd_->V.at(j, c);
        entries.push_back({weighted_.columns[j], acc});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (entries.size() > static_cast<std::size_t>(n)) entries.resize(static_cast<std::size_t>(n));
    return entries;
}

}  // namespace relsim
