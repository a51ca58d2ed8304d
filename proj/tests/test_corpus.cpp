#include <doctest.h>

#include <random>

#include "relsim/corpus.hpp"
#include "relsim/errors.hpp"

using namespace relsim;

namespace {

// Brute-force window scan over the raw token sequences; deliberately avoids
// the corpus index machinery so it can serve as an independent oracle.
std::uint64_t brute_force_cooccurrence(const std::vector<std::vector<std::string>>& docs,
                                       const WordPair& pair, int max_phrase) {
    std::uint64_t n = 0;
    for (const auto& doc : docs) {
        for (std::size_t s = 0; s < doc.size(); ++s) {
            for (std::size_t e = s + 2; e < doc.size() && e <= s + static_cast<std::size_t>(max_phrase) - 1;
                 ++e) {
                bool sa = suffix_insensitive_match(pair.a, doc[s]);
                bool sb = suffix_insensitive_match(pair.b, doc[s]);
                bool ea = suffix_insensitive_match(pair.a, doc[e]);
                bool eb = suffix_insensitive_match(pair.b, doc[e]);
                if ((sa && eb) || (sb && ea)) ++n;
            }
        }
    }
    return n;
}

std::vector<std::vector<std::string>> random_docs(std::mt19937_64& rng) {
    // Vocabulary with overlapping suffix forms to exercise matching.
    const std::vector<std::string> vocab = {"quart", "quarts", "volume",  "walk", "walked",
                                            "walks", "walking", "mile",   "of",   "in",
                                            "the",   "a",       "banker", "bank", "bankers"};
    std::vector<std::vector<std::string>> docs(1 + rng() % 4);
    for (auto& doc : docs) {
        std::size_t len = rng() % 60;
        for (std::size_t i = 0; i < len; ++i) doc.push_back(vocab[rng() % vocab.size()]);
    }
    return docs;
}

Corpus corpus_of(const std::vector<std::vector<std::string>>& docs) {
    std::vector<std::string> texts;
    for (const auto& doc : docs) {
        std::string t;
        for (const auto& w : doc) {
            if (!t.empty()) t += ' ';
            t += w;
        }
        texts.push_back(t);
    }
    return Corpus::ingest_texts(texts);
}

}  // namespace

TEST_CASE("tokenizer splits on non-alphabetic characters and lowercases") {
    CHECK(tokenize("the quart of volume is known").size() == 6);
    CHECK(tokenize("A b C") == std::vector<std::string>{"a", "b", "c"});
    CHECK(tokenize("x2y, z. w") == std::vector<std::string>{"x", "y", "z", "w"});
    CHECK(tokenize("").empty());

    TokenizerConfig alnum{TokenChars::alphanumeric};
    CHECK(tokenize("x2y", alnum) == std::vector<std::string>{"x2y"});
}

TEST_CASE("ingest counts tokens and handles the empty corpus") {
    CHECK(Corpus::ingest_texts({"the quart of volume is known"}).token_count() == 6);
    CHECK(Corpus::ingest_texts({}).token_count() == 0);
    Corpus empty = Corpus::ingest_texts({});
    CHECK(empty.cooccurrence_frequency(WordPair("x", "y"), 5) == 0);
    CHECK(empty.enumerate_phrases(WordPair("x", "y"), 5).empty());
}

TEST_CASE("ingest errors name the unreadable source") {
    CHECK_THROWS_WITH_AS(Corpus::ingest_files({"/no/such/corpus-file"}, {}, false),
                         doctest::Contains("/no/such/corpus-file"), Error);
}

TEST_CASE("co-occurrence frequency over windows") {
    Corpus c = Corpus::ingest_texts({"x in y"});
    CHECK(c.cooccurrence_frequency(WordPair("x", "y"), 5) == 1);

    Corpus adjacent = Corpus::ingest_texts({"x y"});
    CHECK(adjacent.cooccurrence_frequency(WordPair("x", "y"), 5) == 0);

    // Both orders count: one A..B window plus one B..A window.
    Corpus both = Corpus::ingest_texts({"x in y", "y of the x"});
    CHECK(both.cooccurrence_frequency(WordPair("x", "y"), 5) == 2);
    CHECK(both.cooccurrence_frequency(WordPair("x", "y"), 5) ==
          brute_force_cooccurrence({{"x", "in", "y"}, {"y", "of", "the", "x"}}, WordPair("x", "y"),
                                   5));

    // Punctuation is a token separator, not a document boundary: as a single
    // document the same text has two more windows across the period.
    Corpus joined = Corpus::ingest_texts({"x in y . y of the x"});
    CHECK(joined.cooccurrence_frequency(WordPair("x", "y"), 5) == 4);
    CHECK(joined.cooccurrence_frequency(WordPair("x", "y"), 5) ==
          brute_force_cooccurrence({{"x", "in", "y", "y", "of", "the", "x"}}, WordPair("x", "y"),
                                   5));

    CHECK(both.cooccurrence_frequency(WordPair("q", "z"), 5) == 0);  // unknown words
    CHECK_THROWS_AS(both.cooccurrence_frequency(WordPair("x", "y"), 2), Error);
}

TEST_CASE("windows never span document boundaries") {
    Corpus split = Corpus::ingest_texts({"x in", "y"});
    CHECK(split.cooccurrence_frequency(WordPair("x", "y"), 5) == 0);
    Corpus joined = Corpus::ingest_texts({"x in y"});
    CHECK(joined.cooccurrence_frequency(WordPair("x", "y"), 5) == 1);
}

TEST_CASE("phrase enumeration matches suffixes and aggregates counts") {
    Corpus c = Corpus::ingest_texts({"quarts in volume"});
    auto matches = c.enumerate_phrases(WordPair("quart", "volume"), 5);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].first == "quarts");
    CHECK(matches[0].intervening == std::vector<std::string>{"in"});
    CHECK(matches[0].last == "volume");
    CHECK(matches[0].count == 1);

    Corpus too_long = Corpus::ingest_texts({"x a b c d e y"});
    CHECK(too_long.enumerate_phrases(WordPair("x", "y"), 5).empty());

    Corpus twice = Corpus::ingest_texts({"x of y", "x of y"});
    auto agg = twice.enumerate_phrases(WordPair("x", "y"), 5);
    REQUIRE(agg.size() == 1);
    CHECK(agg[0].count == 2);
}

TEST_CASE("enumeration order is lexicographic and both orders are included") {
    Corpus c = Corpus::ingest_texts({"y of x", "x in y", "x at y"});
    auto matches = c.enumerate_phrases(WordPair("x", "y"), 5);
    REQUIRE(matches.size() == 3);
    CHECK(matches[0].text() == "x at y");
    CHECK(matches[1].text() == "x in y");
    CHECK(matches[2].text() == "y of x");
}

TEST_CASE("pattern frequency is directional and wildcards match exactly one word") {
    Corpus c = Corpus::ingest_texts({"x of y"});
    WordPair p("x", "y");
    auto freq = [&](const std::string& pattern, Direction dir) {
        return c.pattern_frequency(p, {PatternTemplate::parse(pattern), dir}, 5);
    };
    CHECK(freq("of", Direction::forward) == 1);
    CHECK(freq("of", Direction::reversed) == 0);
    CHECK(freq("*", Direction::forward) == 1);
    CHECK(freq("* *", Direction::forward) == 0);

    CHECK_THROWS_AS(c.pattern_frequency(p, {PatternTemplate::parse("a b c d"), Direction::forward}, 5),
                    Error);
}

TEST_CASE("frequency equals the sum of enumerated counts (brute-force oracle)") {
    std::mt19937_64 rng(20260810);
    const std::vector<WordPair> pairs = {
        {"quart", "volume"}, {"walk", "mile"}, {"bank", "banker"}, {"x", "y"}};
    for (int round = 0; round < 60; ++round) {
        auto docs = random_docs(rng);
        Corpus c = corpus_of(docs);
        int max_phrase = 3 + static_cast<int>(rng() % 4);
        for (const auto& p : pairs) {
            std::uint64_t expected = brute_force_cooccurrence(docs, p, max_phrase);
            CHECK(c.cooccurrence_frequency(p, max_phrase) == expected);

            std::uint64_t total = 0;
            for (const auto& m : c.enumerate_phrases(p, max_phrase)) total += m.count;
            CHECK(total == expected);
        }
    }
}

TEST_CASE("query surface is order symmetric and monotone in max_phrase") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 30; ++round) {
        auto docs = random_docs(rng);
        Corpus c = corpus_of(docs);
        WordPair p("quart", "volume");
        auto fwd = c.enumerate_phrases(p, 5);
        auto rev = c.enumerate_phrases(p.reversed(), 5);
        REQUIRE(fwd.size() == rev.size());
        for (std::size_t i = 0; i < fwd.size(); ++i) {
            CHECK(fwd[i].text() == rev[i].text());
            CHECK(fwd[i].count == rev[i].count);
        }
        std::uint64_t prev = 0;
        for (int mp = 3; mp <= 7; ++mp) {
            std::uint64_t f = c.cooccurrence_frequency(p, mp);
            CHECK(f >= prev);
            prev = f;
        }
    }
}

TEST_CASE("content hash is ingestion-independent") {
    Corpus a = Corpus::ingest_texts({"x of y", "z"});
    Corpus b = Corpus::from_token_documents({{"x", "of", "y"}, {"z"}});
    CHECK(a.content_hash() == b.content_hash());
    Corpus c = Corpus::ingest_texts({"x of y", "w"});
    CHECK(a.content_hash() != c.content_hash());
}
