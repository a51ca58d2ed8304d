#include <doctest.h>

#include "relsim/errors.hpp"
#include "relsim/words.hpp"

using namespace relsim;

TEST_CASE("word pairs are lowercased and validated") {
    WordPair p = make_word_pair("Quart", "VOLUME");
    CHECK(p.a == "quart");
    CHECK(p.b == "volume");
    CHECK(p.reversed() == WordPair("volume", "quart"));

    CHECK_THROWS_AS(make_word_pair("", "x"), Error);
    CHECK_THROWS_AS(make_word_pair("same", "same"), Error);
    CHECK_THROWS_AS(parse_word_pair("no-colon"), Error);
    CHECK(parse_word_pair("a:b") == WordPair("a", "b"));
}

TEST_CASE("suffix-insensitive matching uses the fixed suffix list") {
    CHECK(suffix_insensitive_match("quart", "quart"));
    CHECK(suffix_insensitive_match("quart", "quarts"));
    CHECK(suffix_insensitive_match("walk", "walking"));
    CHECK(suffix_insensitive_match("walk", "walked"));
    CHECK(suffix_insensitive_match("quick", "quickly"));
    CHECK(suffix_insensitive_match("bank", "banker"));
    CHECK(suffix_insensitive_match("bank", "bankers"));

    CHECK_FALSE(suffix_insensitive_match("quart", "quarterly"));
    CHECK_FALSE(suffix_insensitive_match("quarts", "quart"));  // one direction only
    CHECK_FALSE(suffix_insensitive_match("mile", "smile"));
}

TEST_CASE("hashes are stable") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(hash_hex(0).size() == 16);
    CHECK(hash_hex(0xabcULL) == "0000000000000abc");
}
