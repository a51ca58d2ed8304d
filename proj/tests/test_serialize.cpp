#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "relsim/config.hpp"
#include "relsim/errors.hpp"
#include "relsim/serialize.hpp"
#include "support/synthetic.hpp"

using namespace relsim;
namespace fs = std::filesystem;

namespace {

std::string temp_dir() {
    static int counter = 0;
    auto dir = fs::temp_directory_path() / ("relsim-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter++));
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

PairPatternMatrix small_weighted_matrix() {
    Corpus corpus = Corpus::ingest_texts({"x of y . y near the x . x of y", "x in y"});
    std::vector<PairFamily> families(1);
    families[0].original = WordPair("x", "y");
    PhraseBank bank = collect_phrases(families, corpus, 5);
    return apply_log_entropy(build_matrix(families, bank, harvest_patterns(bank, 50, true)));
}

}  // namespace

TEST_CASE("format_double round-trips doubles exactly") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        double x;
        if (i % 3 == 0)
            x = static_cast<double>(rng()) / 3.7;
        else if (i % 3 == 1)
            x = std::ldexp(static_cast<double>(rng() >> 11) * 0x1.0p-53, static_cast<int>(rng() % 60) - 30);
        else
            x = -static_cast<double>(rng() % 1000000) / 997.0;
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("pair list parsing") {
    auto pairs = parse_pair_list("# comment\nquart:volume\n\nmason:stone\n");
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == WordPair("quart", "volume"));
    CHECK_THROWS_WITH_AS(parse_pair_list("oops\n", "pairs.txt"), doctest::Contains("pairs.txt:1"),
                         Error);
}

TEST_CASE("corpus round-trip preserves content and queries") {
    std::string dir = temp_dir();
    Corpus corpus = Corpus::ingest_texts({"quarts in volume", "x of y . x of y", ""});
    save_corpus(corpus, dir + "/corpus.idx");
    Corpus loaded = load_corpus(dir + "/corpus.idx");
    CHECK(loaded.content_hash() == corpus.content_hash());
    CHECK(loaded.token_count() == corpus.token_count());
    CHECK(loaded.document_count() == corpus.document_count());
    CHECK(loaded.cooccurrence_frequency(WordPair("x", "y"), 5) == 2);
    CHECK(peek_corpus_hash(dir + "/corpus.idx") == corpus.content_hash());
    CHECK_FALSE(peek_corpus_hash(dir + "/missing").has_value());
}

TEST_CASE("matrix cache round-trip is bit-exact") {
    std::string dir = temp_dir();
    PairPatternMatrix m = small_weighted_matrix();
    save_pair_matrix(m, dir + "/matrix");
    PairPatternMatrix loaded = load_pair_matrix(dir + "/matrix");

    CHECK(loaded.symmetric == m.symmetric);
    CHECK(loaded.weighted == m.weighted);
    CHECK(loaded.rows() == m.rows());
    CHECK(loaded.cols() == m.cols());
    CHECK(loaded.row_pairs == m.row_pairs);
    REQUIRE(loaded.columns.size() == m.columns.size());
    for (std::size_t c = 0; c < m.columns.size(); ++c) CHECK(loaded.columns[c] == m.columns[c]);

    std::vector<std::tuple<std::size_t, std::size_t, double>> a, b;
    m.cells.for_each([&](std::size_t i, std::size_t j, double v) { a.push_back({i, j, v}); });
    loaded.cells.for_each([&](std::size_t i, std::size_t j, double v) { b.push_back({i, j, v}); });
    CHECK(a == b);  // bitwise

    // Saving the loaded matrix reproduces the files byte for byte.
    save_pair_matrix(loaded, dir + "/again");
    CHECK(slurp(dir + "/matrix.coo") == slurp(dir + "/again.coo"));
    CHECK(slurp(dir + "/matrix.rows") == slurp(dir + "/again.rows"));
    CHECK(slurp(dir + "/matrix.cols") == slurp(dir + "/again.cols"));
}

TEST_CASE("svd cache round-trip is bit-exact") {
    std::string dir = temp_dir();
    PairPatternMatrix m = small_weighted_matrix();
    SvdResult svd = truncated_svd(m.cells, 3);
    save_svd(svd, dir + "/svd.txt");
    SvdResult loaded = load_svd(dir + "/svd.txt");
    CHECK(loaded.sigma == svd.sigma);
    CHECK(loaded.U.data == svd.U.data);
    CHECK(loaded.V.data == svd.V.data);
    CHECK(loaded.k_truncated_to_rank == svd.k_truncated_to_rank);
}

TEST_CASE("families round-trip") {
    std::string dir = temp_dir();
    std::vector<PairFamily> families(2);
    families[0].original = WordPair("quart", "volume");
    families[0].original_frequency = 632;
    families[0].alternates = {{{"liter", "volume"}, 0.122, 3323},
                              {{"gallon", "volume"}, 0.159, 1500}};
    families[1].original = WordPair("mason", "stone");
    save_families(families, dir + "/fam.txt");
    auto loaded = load_families(dir + "/fam.txt");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].original == families[0].original);
    CHECK(loaded[0].original_frequency == 632);
    REQUIRE(loaded[0].alternates.size() == 2);
    CHECK(loaded[0].alternates[0].pair == WordPair("liter", "volume"));
    CHECK(loaded[0].alternates[0].thesaurus_score == 0.122);
    CHECK(loaded[0].alternates[0].frequency == 3323);
    CHECK(loaded[1].alternates.empty());
}

TEST_CASE("run config round-trips losslessly") {
    RunConfig c;
    c.corpus_paths = {"a.txt", "b/dir"};
    c.line_documents = true;
    c.index_path = "cache/c.idx";
    c.thesaurus_path = "th.txt";
    c.sat_path = "sat.txt";
    c.params.num_sim = 7;
    c.params.k = 123;
    c.ablation.use_svd = false;
    c.ablation.top_n.reset();
    c.ablation.better_alternates_only = false;
    c.cache_dir = "/tmp/cache";
    c.seed = 99;
    c.strategy = "vsm";

    std::string text = c.to_text();
    RunConfig parsed = RunConfig::parse(text);
    CHECK(parsed.to_text() == text);
    CHECK(parsed.corpus_paths == c.corpus_paths);
    CHECK(parsed.line_documents == c.line_documents);
    CHECK(parsed.params.num_sim == 7);
    CHECK(parsed.params.k == 123);
    CHECK_FALSE(parsed.ablation.use_svd);
    CHECK_FALSE(parsed.ablation.better_alternates_only);
    CHECK(parsed.seed == 99);
    CHECK(parsed.strategy == "vsm");

    RunConfig with_topn;
    with_topn.ablation.top_n = 42;
    CHECK(RunConfig::parse(with_topn.to_text()).ablation.top_n == 42);

    CHECK_THROWS_WITH_AS(RunConfig::parse("[lra]\nbogus = 1\n", "cfg"), doctest::Contains("bogus"),
                         Error);
}

TEST_CASE("loading garbage fails with parse errors") {
    std::string dir = temp_dir();
    std::ofstream(dir + "/junk.txt") << "not an artifact\n";
    CHECK_THROWS_AS(load_corpus(dir + "/junk.txt"), Error);
    CHECK_THROWS_AS(load_svd(dir + "/junk.txt"), Error);
    CHECK_THROWS_AS(load_families(dir + "/junk.txt"), Error);
    CHECK_THROWS_AS(load_corpus(dir + "/missing.txt"), Error);
}
