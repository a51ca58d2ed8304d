#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "relsim/errors.hpp"
#include "relsim/pair_matrix.hpp"

using namespace relsim;

namespace {

PairFamily family_of(const WordPair& original, std::vector<WordPair> alternates = {}) {
    PairFamily f;
    f.original = original;
    for (auto& a : alternates) f.alternates.push_back({std::move(a), 0.5, 1});
    return f;
}

// Brute-force pattern scoring oracle: enumerate windows directly over the
// token sequences, generate template subsets by hand, count distinct pairs
// per template.
std::map<std::string, std::size_t> brute_force_scores(
    const std::vector<std::vector<std::string>>& docs, const std::vector<WordPair>& pairs,
    int max_phrase) {
    std::map<std::string, std::set<std::size_t>> matched;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto& p = pairs[pi];
        for (const auto& doc : docs) {
            for (std::size_t s = 0; s < doc.size(); ++s) {
                for (std::size_t e = s + 2;
                     e < doc.size() && e <= s + static_cast<std::size_t>(max_phrase) - 1; ++e) {
                    bool sa = suffix_insensitive_match(p.a, doc[s]);
                    bool sb = suffix_insensitive_match(p.b, doc[s]);
                    bool ea = suffix_insensitive_match(p.a, doc[e]);
                    bool eb = suffix_insensitive_match(p.b, doc[e]);
                    if (!((sa && eb) || (sb && ea))) continue;
                    const std::size_t n = e - s - 1;
                    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                        std::string text;
                        for (std::size_t i = 0; i < n; ++i) {
                            if (i) text += ' ';
                            text += (mask & (1u << i)) ? "*" : doc[s + 1 + i];
                        }
                        matched[text].insert(pi);
                    }
                }
            }
        }
    }
    std::map<std::string, std::size_t> scores;
    for (const auto& [text, who] : matched) scores[text] = who.size();
    return scores;
}

Corpus toy_corpus() {
    // One phrase per document; windows never span documents.
    return Corpus::ingest_texts({"x of y", "u of v", "p in q", "p in q", "p in q"});
}

}  // namespace

TEST_CASE("a phrase of n words generates exactly 2^(n-2) distinct templates") {
    CHECK(generate_templates({"of"}).size() == 2);
    CHECK(generate_templates({"of", "the"}).size() == 4);
    CHECK(generate_templates({"of", "the", "total"}).size() == 8);

    std::mt19937_64 rng(5);
    const std::vector<std::string> words = {"of", "of", "in", "the", "a"};
    for (int round = 0; round < 200; ++round) {
        std::size_t n = 1 + rng() % 3;  // phrase length 3..5
        std::vector<std::string> intervening;
        for (std::size_t i = 0; i < n; ++i) intervening.push_back(words[rng() % words.size()]);
        auto templates = generate_templates(intervening);
        std::set<std::string> texts;
        for (const auto& t : templates) texts.insert(t.text());
        CHECK(templates.size() == (std::size_t(1) << n));
        CHECK(texts.size() == templates.size());  // all distinct
    }
}

TEST_CASE("template text round-trips and matching honours wildcards") {
    PatternTemplate t = PatternTemplate::parse("* of");
    CHECK(t.text() == "* of");
    CHECK(t.matches({"lots", "of"}));
    CHECK_FALSE(t.matches({"of", "lots"}));
    CHECK_FALSE(t.matches({"of"}));
    CHECK(PatternTemplate::parse(t.text()) == t);
}

TEST_CASE("pattern scoring counts pairs, not occurrences") {
    Corpus corpus = toy_corpus();
    std::vector<PairFamily> families = {family_of({"x", "y"}), family_of({"u", "v"}),
                                        family_of({"p", "q"})};
    PhraseBank bank = collect_phrases(families, corpus, 5);
    HarvestResult h = harvest_patterns(bank, 100, /*symmetric=*/true);

    auto score_of = [&](const std::string& text) -> std::size_t {
        auto scores = brute_force_scores(
            {{"x", "of", "y"}, {"u", "of", "v"}, {"p", "in", "q"}, {"p", "in", "q"}, {"p", "in", "q"}},
            {{"x", "y"}, {"u", "v"}, {"p", "q"}}, 5);
        auto it = scores.find(text);
        return it == scores.end() ? 0 : it->second;
    };
    CHECK(score_of("of") == 2);   // two pairs with one matching phrase each
    CHECK(score_of("in") == 1);   // one pair, despite three occurrences
    CHECK(score_of("*") == 3);

    // Harvest ranking agrees: "*" first (3 pairs), then "of" (2), then "in".
    REQUIRE(h.templates.size() >= 3);
    CHECK(h.templates[0].text() == "*");
    CHECK(h.templates[1].text() == "of");
    CHECK(h.templates[2].text() == "in");
    CHECK(h.fewer_than_requested);  // 100 requested, fewer available
}

TEST_CASE("harvest agrees with the brute-force oracle on random corpora") {
    std::mt19937_64 rng(321);
    const std::vector<std::string> vocab = {"x", "y", "u", "v", "of", "in", "the", "near"};
    for (int round = 0; round < 20; ++round) {
        std::vector<std::vector<std::string>> docs(1 + rng() % 2);
        for (auto& doc : docs) {
            std::size_t len = 5 + rng() % 40;
            for (std::size_t i = 0; i < len; ++i) doc.push_back(vocab[rng() % vocab.size()]);
        }
        std::vector<std::string> texts;
        for (const auto& d : docs) {
            std::string t;
            for (const auto& w : d) t += w + " ";
            texts.push_back(t);
        }
        Corpus corpus = Corpus::ingest_texts(texts);
        std::vector<PairFamily> families = {family_of({"x", "y"}), family_of({"u", "v"})};

        PhraseBank bank = collect_phrases(families, corpus, 5);
        HarvestResult h = harvest_patterns(bank, 1000, true);
        auto expected = brute_force_scores(docs, {{"x", "y"}, {"u", "v"}}, 5);

        CHECK(h.distinct_available == expected.size());
        // Every harvested template's score matches the oracle, and the
        // ranking is non-increasing.
        std::size_t prev = std::numeric_limits<std::size_t>::max();
        for (const auto& t : h.templates) {
            auto it = expected.find(t.text());
            REQUIRE(it != expected.end());
            CHECK(it->second <= prev);
            prev = it->second;
        }
    }
}

TEST_CASE("matrix cells equal directed pattern frequencies") {
    Corpus corpus = Corpus::ingest_texts({"x of y . y near the x . x of y"});
    std::vector<PairFamily> families = {family_of({"x", "y"})};
    PhraseBank bank = collect_phrases(families, corpus, 5);
    HarvestResult h = harvest_patterns(bank, 50, true);
    PairPatternMatrix m = build_matrix(families, bank, h);

    REQUIRE(m.rows() == 2);
    REQUIRE(m.row_pairs[0] == WordPair("x", "y"));
    REQUIRE(m.row_pairs[1] == WordPair("y", "x"));

    auto dense = m.cells.to_dense();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            CHECK(dense[r][c] ==
                  static_cast<double>(corpus.pattern_frequency(m.row_pairs[r], m.columns[c], 5)));

    // Spot values: "x of y" occurs twice.
    auto col = [&](const std::string& text, Direction dir) -> std::size_t {
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.columns[c].tmpl.text() == text && m.columns[c].dir == dir) return c;
        REQUIRE(false);
        return 0;
    };
    CHECK(dense[0][col("of", Direction::forward)] == 2.0);
    CHECK(dense[0][col("of", Direction::reversed)] == 0.0);
    CHECK(dense[1][col("of", Direction::reversed)] == 2.0);
    CHECK(dense[0][col("near the", Direction::reversed)] == 1.0);
}

TEST_CASE("row mates are column-permuted copies of each other") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> vocab = {"x", "y", "u", "v", "of", "in", "the"};
    for (int round = 0; round < 10; ++round) {
        std::vector<std::string> doc;
        std::size_t len = 10 + rng() % 50;
        for (std::size_t i = 0; i < len; ++i) doc.push_back(vocab[rng() % vocab.size()]);
        std::string text;
        for (const auto& w : doc) text += w + " ";
        Corpus corpus = Corpus::ingest_texts({text});
        std::vector<PairFamily> families = {family_of({"x", "y"}, {{"u", "v"}})};
        PhraseBank bank = collect_phrases(families, corpus, 5);
        PairPatternMatrix m = build_matrix(families, bank, harvest_patterns(bank, 500, true));
        auto dense = m.cells.to_dense();
        for (std::size_t t = 0; t + 1 < m.rows(); t += 2)
            for (std::size_t c = 0; c + 1 < m.cols(); c += 2) {
                CHECK(dense[t][c] == dense[t + 1][c + 1]);
                CHECK(dense[t][c + 1] == dense[t + 1][c]);
            }
    }
}

TEST_CASE("duplicate and reversed input pairs map to a single row pair") {
    Corpus corpus = Corpus::ingest_texts({"x of y"});
    std::vector<PairFamily> families = {family_of({"x", "y"}), family_of({"x", "y"}),
                                        family_of({"y", "x"})};
    PhraseBank bank = collect_phrases(families, corpus, 5);
    PairPatternMatrix m = build_matrix(families, bank, harvest_patterns(bank, 10, true));
    CHECK(m.rows() == 2);
}

TEST_CASE("an empty corpus with an injected pattern yields an all-zero 2x2 matrix") {
    Corpus corpus = Corpus::ingest_texts({});
    std::vector<PairFamily> families = {family_of({"x", "y"})};
    PhraseBank bank = collect_phrases(families, corpus, 5);
    HarvestResult h;
    h.symmetric = true;
    h.templates.push_back(PatternTemplate::parse("of"));
    PairPatternMatrix m = build_matrix(families, bank, h);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m.cells.nnz() == 0);
    CHECK(m.zero_row_count() == 2);
}

TEST_CASE("asymmetric mode keeps one row per input pair and directed columns") {
    Corpus corpus = Corpus::ingest_texts({"x of y . y in x"});
    std::vector<PairFamily> families = {family_of({"x", "y"})};
    PhraseBank bank = collect_phrases(families, corpus, 5);
    HarvestResult h = harvest_patterns(bank, 4, false);
    CHECK_FALSE(h.symmetric);
    CHECK(h.directed.size() <= 8);
    PairPatternMatrix m = build_matrix(families, bank, h);
    CHECK(m.rows() == 1);
    CHECK(m.cols() == h.directed.size());
    auto dense = m.cells.to_dense();
    for (std::size_t c = 0; c < m.cols(); ++c)
        CHECK(dense[0][c] ==
              static_cast<double>(corpus.pattern_frequency(m.row_pairs[0], m.columns[c], 5)));
}

TEST_CASE("log-entropy weighting") {
    // Column 0: uniform over both rows -> weight 0. Column 1: single spike
    // -> weight 1, cell log(x+1). Columns come in mates; values here are
    // chosen so each mate pair holds the same multiset.
    PairPatternMatrix raw;
    raw.symmetric = false;  // independent columns for this fixture
    raw.row_pairs = {WordPair("x", "y"), WordPair("y", "x")};
    raw.row_index.emplace(raw.row_pairs[0], 0);
    raw.row_index.emplace(raw.row_pairs[1], 1);
    raw.columns = {{PatternTemplate::parse("of"), Direction::forward},
                   {PatternTemplate::parse("of"), Direction::reversed},
                   {PatternTemplate::parse("in"), Direction::forward}};
    raw.cells = SparseMatrix(2, 3, {{0, 0, 5.0}, {1, 0, 5.0}, {0, 1, 7.0}, {0, 2, 1.0}, {1, 2, 3.0}});

    PairPatternMatrix weighted = apply_log_entropy(raw);
    auto dense = weighted.cells.to_dense();
    CHECK(dense[0][0] == 0.0);  // uniform column zeroed
    CHECK(dense[1][0] == 0.0);
    CHECK(dense[0][1] == doctest::Approx(std::log(8.0)).epsilon(1e-12));  // w=1, log(7+1)
    CHECK(dense[1][1] == 0.0);  // raw zero stays zero

    // Column 2 weight from raw frequencies (1, 3), not their log transform.
    const double h = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
    const double w = 1.0 - h / std::log(2.0);
    CHECK(dense[0][2] == doctest::Approx(w * std::log(2.0)).epsilon(1e-12));
    CHECK(dense[1][2] == doctest::Approx(w * std::log(4.0)).epsilon(1e-12));

    CHECK_THROWS_AS(apply_log_entropy(weighted), Error);  // already weighted
}

TEST_CASE("entropy weights lie in [0,1] and direction mates share weights bitwise") {
    std::mt19937_64 rng(2026);
    for (int round = 0; round < 50; ++round) {
        const std::size_t m = 2 + rng() % 30;
        const std::size_t n = 2 * (1 + rng() % 10);
        std::vector<Triplet> t;
        for (std::size_t j = 0; j + 1 < n; j += 2) {
            for (std::size_t i = 0; i < m; ++i) {
                if (rng() % 3 == 0) continue;
                double v = static_cast<double>(1 + rng() % 9);
                t.push_back({i, j, v});
                // mate column holds the same multiset, permuted rows
                t.push_back({(i + 1) % m, j + 1, v});
            }
        }
        SparseMatrix raw(m, n, std::move(t));
        auto weights = log_entropy_weights(raw, true);
        auto independent = log_entropy_weights(raw, false);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(weights[j] >= 0.0);
            CHECK(weights[j] <= 1.0);
        }
        for (std::size_t j = 0; j + 1 < n; j += 2) {
            CHECK(weights[j] == weights[j + 1]);  // bitwise shared
            CHECK(independent[j] == doctest::Approx(independent[j + 1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("log-entropy requires at least two rows") {
    PairPatternMatrix raw;
    raw.symmetric = false;
    raw.row_pairs = {WordPair("x", "y")};
    raw.row_index.emplace(raw.row_pairs[0], 0);
    raw.columns = {{PatternTemplate::parse("of"), Direction::forward}};
    raw.cells = SparseMatrix(1, 1, {{0, 0, 2.0}});
    CHECK_THROWS_AS(apply_log_entropy(raw), Error);
}
