#include <doctest.h>

#include <cmath>

#include "relsim/engine.hpp"
#include "relsim/errors.hpp"
#include "support/synthetic.hpp"

using namespace relsim;

namespace {

testing::SyntheticSpec small_spec(std::uint64_t seed = 3) {
    testing::SyntheticSpec spec;
    spec.seed = seed;
    spec.relations = 3;
    spec.pairs_per_relation = 6;
    spec.phrases_per_pair = 5;
    spec.alt_phrases_per_pair = 4;
    spec.questions = 9;
    spec.filler_documents = 20;
    spec.noise_phrases = 15;
    return spec;
}

LraParams small_params() {
    LraParams p;
    p.num_sim = 10;
    p.max_phrase = 5;
    p.num_filter = 3;
    p.num_patterns = 4000;
    p.k = 300;
    p.threads = 1;
    return p;
}

// The worked-example combination table: sixteen cosines for
// quart:volume vs mile:distance, original first.
const std::vector<double>& table_combination_cosines() {
    static const std::vector<double> cs = {0.525, 0.464, 0.634, 0.499, 0.736, 0.687,
                                           0.745, 0.576, 0.763, 0.710, 0.781, 0.615,
                                           0.412, 0.439, 0.446, 0.491};
    return cs;
}

}  // namespace

TEST_CASE("step-12 average of the better-or-equal cosines") {
    const auto& cs = table_combination_cosines();
    CHECK(relational_similarity(cs, 0.525) == doctest::Approx(0.677).epsilon(5e-4));

    // All alternates below the original: the singleton set is the original.
    CHECK(relational_similarity({0.5, 0.4, 0.3}, 0.5) == 0.5);

    // All cosines equal c.
    CHECK(relational_similarity({0.2, 0.2, 0.2}, 0.2) == doctest::Approx(0.2));

    // Unfiltered variant averages everything.
    CHECK(relational_similarity({0.5, 0.3}, 0.5, false) == doctest::Approx(0.4));

    CHECK_THROWS_AS(relational_similarity({}, 0.5), Error);
    CHECK_THROWS_AS(relational_similarity({0.4}, 0.5), Error);  // original not in the set
}

TEST_CASE("parameter validation") {
    LraParams p;
    p.max_phrase = 2;
    CHECK_THROWS_AS(p.validate(), Error);
    AblationConfig a;
    a.use_svd = false;
    a.top_n = 10;
    CHECK_THROWS_AS(a.validate(), Error);
}

TEST_CASE("engine answers planted analogies and counts combinations") {
    auto data = testing::generate(small_spec());
    Corpus corpus = data.corpus();
    Thesaurus thesaurus = data.thesaurus();

    BuildStats stats;
    LraEngine engine = LraEngine::build(corpus, thesaurus, data.question_pairs(), small_params(),
                                        {}, &stats);
    CHECK(stats.rows > 0);
    CHECK(stats.density > 0.0);
    CHECK(stats.effective_k <= std::min(stats.rows, stats.cols));
    CHECK(stats.k_truncated_to_rank);  // k=300 exceeds the rank of this small matrix
    CHECK(stats.step_times.size() >= 6);

    int correct = 0, total = 0;
    for (const auto& q : data.questions) {
        std::optional<std::size_t> best;
        double best_score = 0;
        for (std::size_t i = 0; i < q.choices.size(); ++i) {
            auto r = engine.similarity(q.stem, q.choices[i]);
            if (r.skipped()) continue;
            if (!best || *r.value > best_score) {
                best = i;
                best_score = *r.value;
            }
        }
        ++total;
        if (best && *best == q.answer) ++correct;
    }
    CHECK(total == 9);
    CHECK(correct >= 8);  // planted signal should dominate

    // Combination count: num_filter=3 with all rows usable gives 16 cosines.
    bool saw_sixteen = false;
    for (const auto& q : data.questions) {
        auto r = engine.similarity(q.stem, q.choices[q.answer]);
        if (r.skipped()) continue;
        CHECK(r.combinations.size() <= 16);
        if (r.combinations.size() == 16) saw_sixteen = true;
        CHECK(r.combinations.front().originals);
        CHECK(*r.value >= r.original_cosine);  // the average is bounded below
    }
    CHECK(saw_sixteen);
}

TEST_CASE("identical pairs have original cosine 1") {
    auto data = testing::generate(small_spec(5));
    LraEngine engine = LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(),
                                        small_params(), {});
    const WordPair& p = data.questions[0].choices[data.questions[0].answer];
    auto r = engine.similarity(p, p);
    REQUIRE_FALSE(r.skipped());
    CHECK(r.original_cosine == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("num_filter=0 yields exactly one cosine") {
    auto data = testing::generate(small_spec(7));
    LraParams params = small_params();
    params.num_filter = 0;
    LraEngine engine =
        LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(), params, {});
    const auto& q = data.questions[0];
    auto r = engine.similarity(q.stem, q.choices[q.answer]);
    if (!r.skipped()) {
        CHECK(r.combinations.size() == 1);
        CHECK(*r.value == r.original_cosine);
    }
}

TEST_CASE("unknown pairs are rejected, zero-evidence originals skip") {
    auto data = testing::generate(small_spec(9));
    Corpus corpus = data.corpus();
    Thesaurus thesaurus = data.thesaurus();

    // Add a pair with no corpus presence at all (and no thesaurus entries).
    auto pairs = data.question_pairs();
    WordPair ghost("zzzzaa", "zzzzbb");
    pairs.push_back(ghost);
    LraEngine engine = LraEngine::build(corpus, thesaurus, pairs, small_params(), {});

    auto r = engine.similarity(ghost, data.questions[0].stem);
    CHECK(r.skipped());
    CHECK_THROWS_AS(engine.similarity(WordPair("not", "known"), ghost), Error);
}

TEST_CASE("relational similarity is bitwise symmetric under joint reversal") {
    auto data = testing::generate(small_spec(13));
    LraEngine engine = LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(),
                                        small_params(), {});
    int compared = 0;
    for (const auto& q : data.questions) {
        for (const auto& c : q.choices) {
            auto fwd = engine.similarity(q.stem, c);
            auto rev = engine.similarity(q.stem.reversed(), c.reversed());
            REQUIRE(fwd.skipped() == rev.skipped());
            if (fwd.skipped()) continue;
            CHECK(*fwd.value == *rev.value);  // bitwise
            ++compared;
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("reversed rows differ when pattern counts are asymmetric") {
    Corpus corpus = Corpus::ingest_texts({"x of y", "x of y", "y near x"});
    Thesaurus empty = Thesaurus::load_text("");
    LraParams params = small_params();
    LraEngine engine = LraEngine::build(corpus, empty, {WordPair("x", "y")}, params, {});

    const auto& m = engine.weighted_matrix();
    auto r0 = m.row_of_pair(WordPair("x", "y"));
    auto r1 = m.row_of_pair(WordPair("y", "x"));
    REQUIRE(r0.has_value());
    REQUIRE(r1.has_value());
    auto dense = m.cells.to_dense();
    CHECK(dense[*r0] != dense[*r1]);
}

TEST_CASE("cosines lie in [0,1] before SVD and [-1,1] after") {
    auto data = testing::generate(small_spec(17));
    Corpus corpus = data.corpus();
    Thesaurus thesaurus = data.thesaurus();

    AblationConfig no_svd;
    no_svd.use_svd = false;
    LraEngine flat =
        LraEngine::build(corpus, thesaurus, data.question_pairs(), small_params(), no_svd);
    LraEngine projected =
        LraEngine::build(corpus, thesaurus, data.question_pairs(), small_params(), {});

    for (const auto& q : data.questions) {
        for (const auto& c : q.choices) {
            auto f = flat.similarity(q.stem, c);
            if (!f.skipped())
                for (const auto& combo : f.combinations) {
                    CHECK(combo.cosine >= -1e-12);
                    CHECK(combo.cosine <= 1.0 + 1e-12);
                }
            auto p = projected.similarity(q.stem, c);
            if (!p.skipped())
                for (const auto& combo : p.combinations) {
                    CHECK(combo.cosine >= -1.0 - 1e-9);
                    CHECK(combo.cosine <= 1.0 + 1e-9);
                }
        }
    }
}

TEST_CASE("projection at full rank preserves weighted-row cosines") {
    auto data = testing::generate(small_spec(19));
    LraParams params = small_params();
    LraEngine engine =
        LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(), params, {});
    REQUIRE(engine.svd().has_value());
    auto report = row_cosine_consistency_check(engine.weighted_matrix().cells, *engine.svd());
    CHECK(report.pairs_checked > 0);
    CHECK(report.max_deviation <= 1e-6);  // k was rank-limited, so lossless
}

TEST_CASE("synonyms off collapses the combination set to the original cosine") {
    auto data = testing::generate(small_spec(23));
    AblationConfig no_syn;
    no_syn.use_synonyms = false;
    LraEngine engine = LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(),
                                        small_params(), no_syn);
    for (const auto& q : data.questions) {
        auto r = engine.similarity(q.stem, q.choices[0]);
        if (r.skipped()) continue;
        CHECK(r.combinations.size() == 1);
        CHECK(*r.value == r.original_cosine);
    }
}

TEST_CASE("top_n >= column count reproduces the untruncated reconstruction") {
    auto data = testing::generate(small_spec(29));
    Corpus corpus = data.corpus();
    Thesaurus thesaurus = data.thesaurus();
    LraParams params = small_params();

    LraEngine plain = LraEngine::build(corpus, thesaurus, data.question_pairs(), params, {});
    AblationConfig big_n;
    big_n.top_n = static_cast<int>(plain.weighted_matrix().cols());
    LraEngine truncated =
        LraEngine::build(corpus, thesaurus, data.question_pairs(), params, big_n);

    for (const auto& q : data.questions) {
        auto a = plain.similarity(q.stem, q.choices[0]);
        auto b = truncated.similarity(q.stem, q.choices[0]);
        REQUIRE(a.skipped() == b.skipped());
        if (a.skipped()) continue;
        CHECK(*a.value == doctest::Approx(*b.value).epsilon(1e-9));
    }

    AblationConfig tiny_n;
    tiny_n.top_n = 1;
    LraEngine n1 = LraEngine::build(corpus, thesaurus, data.question_pairs(), params, tiny_n);
    auto r = n1.similarity(data.questions[0].stem, data.questions[0].choices[0]);
    if (!r.skipped())
        for (const auto& combo : r.combinations) CHECK(std::abs(combo.cosine) <= 1.0 + 1e-9);
}

TEST_CASE("asymmetric mode drops the symmetry guarantee but still answers") {
    auto data = testing::generate(small_spec(31));
    AblationConfig asym;
    asym.symmetric = false;
    LraEngine engine = LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(),
                                        small_params(), asym);
    CHECK(engine.weighted_matrix().rows() < 2 * engine.weighted_matrix().row_pairs.size() + 1);
    int answered = 0;
    for (const auto& q : data.questions) {
        auto r = engine.similarity(q.stem, q.choices[q.answer]);
        if (!r.skipped()) ++answered;
    }
    CHECK(answered > 0);
}

TEST_CASE("pattern weight inspection surfaces relation connectives") {
    auto data = testing::generate(small_spec(37));
    LraEngine engine = LraEngine::build(data.corpus(), data.thesaurus(), data.question_pairs(),
                                        small_params(), {});
    const auto& q = data.questions[0];
    const WordPair& pair = q.choices[q.answer];
    auto weights = engine.top_pattern_weights(pair, 5);
    REQUIRE(!weights.empty());
    CHECK(weights.size() <= 5);
    for (std::size_t i = 1; i < weights.size(); ++i)
        CHECK(weights[i - 1].second >= weights[i].second);
}
