#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relsim/baselines.hpp"
#include "relsim/errors.hpp"
#include "relsim/engine.hpp"
#include "relsim/eval.hpp"
#include "relsim/serialize.hpp"
#include "relsim/svd.hpp"

namespace py = pybind11;
using namespace relsim;

namespace {

WordPair pair_from_obj(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return parse_word_pair(obj.cast<std::string>());
    auto t = obj.cast<std::pair<std::string, std::string>>();
    return make_word_pair(t.first, t.second);
}

std::vector<WordPair> pairs_from_list(const py::iterable& items) {
    std::vector<WordPair> out;
    for (auto item : items) out.push_back(pair_from_obj(py::reinterpret_borrow<py::object>(item)));
    return out;
}

py::dict report_dict(const EvalReport& r) {
    py::dict d;
    d["correct"] = r.correct;
    d["incorrect"] = r.incorrect;
    d["skipped"] = r.skipped;
    d["ties_flagged"] = r.ties_flagged;
    d["precision"] = r.precision ? py::object(py::float_(*r.precision)) : py::none();
    d["recall"] = r.recall;
    d["f"] = r.f ? py::object(py::float_(*r.f)) : py::none();
    if (r.macro_f) {
        d["macro_precision"] = *r.macro_precision;
        d["macro_recall"] = *r.macro_recall;
        d["macro_f"] = *r.macro_f;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_relsim, m) {
    m.doc() = "Corpus-based relational similarity (pair-pattern matrix + truncated SVD)";

    py::register_exception<Error>(m, "RelsimError");

    py::class_<Corpus>(m, "Corpus")
        .def_static(
            "from_texts",
            [](const std::vector<std::string>& texts) { return Corpus::ingest_texts(texts); },
            py::arg("texts"), "Build an index treating each string as one document")
        .def_static(
            "from_files",
            [](const std::vector<std::string>& paths, bool line_documents) {
                return Corpus::ingest_files(paths, {}, line_documents);
            },
            py::arg("paths"), py::arg("line_documents") = false)
        .def_property_readonly("token_count", &Corpus::token_count)
        .def_property_readonly("document_count", &Corpus::document_count)
        .def(
            "cooccurrence_frequency",
            [](const Corpus& c, const py::object& pair, int max_phrase) {
                return c.cooccurrence_frequency(pair_from_obj(pair), max_phrase);
            },
            py::arg("pair"), py::arg("max_phrase") = 5)
        .def(
            "enumerate_phrases",
            [](const Corpus& c, const py::object& pair, int max_phrase) {
                py::list out;
                for (const auto& ph : c.enumerate_phrases(pair_from_obj(pair), max_phrase))
                    out.append(py::make_tuple(ph.first, ph.intervening, ph.last, ph.count));
                return out;
            },
            py::arg("pair"), py::arg("max_phrase") = 5,
            "Distinct (first, intervening, last, count) realizations, both orders")
        .def(
            "pattern_frequency",
            [](const Corpus& c, const py::object& pair, const std::string& pattern, bool forward,
               int max_phrase) {
                DirectedPattern p{PatternTemplate::parse(pattern),
                                  forward ? Direction::forward : Direction::reversed};
                return c.pattern_frequency(pair_from_obj(pair), p, max_phrase);
            },
            py::arg("pair"), py::arg("pattern"), py::arg("forward") = true,
            py::arg("max_phrase") = 5, "Pattern text uses '*' for one-word wildcards");

    py::class_<Thesaurus>(m, "Thesaurus")
        .def_static("load", &Thesaurus::load_file, py::arg("path"))
        .def_static("from_text", [](const std::string& text) { return Thesaurus::load_text(text); })
        .def("__len__", &Thesaurus::size)
        .def(
            "top_similar",
            [](const Thesaurus& t, const std::string& word, int num_sim) {
                py::list out;
                for (const auto& n : t.top_similar(word, num_sim))
                    out.append(py::make_tuple(n.word, n.score));
                return out;
            },
            py::arg("word"), py::arg("num_sim") = 10)
        .def("is_unusual", &Thesaurus::is_unusual, py::arg("word"));

    py::class_<LraParams>(m, "LraParams")
        .def(py::init<>())
        .def_readwrite("num_sim", &LraParams::num_sim)
        .def_readwrite("max_phrase", &LraParams::max_phrase)
        .def_readwrite("num_filter", &LraParams::num_filter)
        .def_readwrite("num_patterns", &LraParams::num_patterns)
        .def_readwrite("k", &LraParams::k)
        .def_readwrite("threads", &LraParams::threads);

    py::class_<AblationConfig>(m, "AblationConfig")
        .def(py::init<>())
        .def_readwrite("use_svd", &AblationConfig::use_svd)
        .def_readwrite("use_synonyms", &AblationConfig::use_synonyms)
        .def_readwrite("symmetric", &AblationConfig::symmetric)
        .def_readwrite("better_alternates_only", &AblationConfig::better_alternates_only)
        .def_readwrite("top_n", &AblationConfig::top_n);

    py::class_<LraEngine>(m, "Engine")
        .def_static(
            "build",
            [](const Corpus& corpus, const Thesaurus& thesaurus, const py::iterable& pairs,
               const LraParams& params, const AblationConfig& ablation) {
                return LraEngine::build(corpus, thesaurus, pairs_from_list(pairs), params, ablation);
            },
            py::arg("corpus"), py::arg("thesaurus"), py::arg("pairs"),
            py::arg("params") = LraParams{}, py::arg("ablation") = AblationConfig{},
            py::call_guard<py::gil_scoped_release>())
        .def(
            "similarity",
            [](const LraEngine& e, const py::object& x, const py::object& y) -> py::object {
                auto r = e.similarity(pair_from_obj(x), pair_from_obj(y));
                if (r.skipped()) return py::none();
                return py::float_(*r.value);
            },
            py::arg("x"), py::arg("y"),
            "Relational similarity; None when the comparison is skipped")
        .def(
            "combinations",
            [](const LraEngine& e, const py::object& x, const py::object& y) {
                auto r = e.similarity(pair_from_obj(x), pair_from_obj(y));
                py::list out;
                for (const auto& c : r.combinations)
                    out.append(py::make_tuple(c.pair1.a + ":" + c.pair1.b,
                                              c.pair2.a + ":" + c.pair2.b, c.cosine, c.originals));
                return out;
            },
            py::arg("x"), py::arg("y"), "All version-pair cosines of the comparison")
        .def(
            "original_cosine",
            [](const LraEngine& e, const py::object& x, const py::object& y) -> py::object {
                auto c = e.original_cosine(pair_from_obj(x), pair_from_obj(y));
                return c ? py::object(py::float_(*c)) : py::none();
            },
            py::arg("x"), py::arg("y"))
        .def("knows", [](const LraEngine& e, const py::object& p) { return e.knows(pair_from_obj(p)); });

    m.def("cosine", [](const std::vector<double>& u, const std::vector<double>& v) {
        return cosine(u, v);
    });

    m.def(
        "truncated_svd",
        [](std::size_t m_rows, std::size_t n_cols,
           const std::vector<std::tuple<std::size_t, std::size_t, double>>& triplets, int k) {
            std::vector<Triplet> ts;
            ts.reserve(triplets.size());
            for (const auto& [i, j, v] : triplets) ts.push_back({i, j, v});
            SvdResult r = truncated_svd(SparseMatrix(m_rows, n_cols, std::move(ts)), k);
            auto mat_to_list = [](const DenseMatrix& mat) {
                py::list rows;
                for (std::size_t i = 0; i < mat.rows; ++i) {
                    py::list row;
                    for (std::size_t j = 0; j < mat.cols; ++j) row.append(mat.at(i, j));
                    rows.append(row);
                }
                return rows;
            };
            return py::make_tuple(mat_to_list(r.U), r.sigma, mat_to_list(r.V));
        },
        py::arg("m"), py::arg("n"), py::arg("triplets"), py::arg("k"),
        "Top-k singular triplets of a sparse matrix given as (row, col, value) triplets");

    m.def(
        "solve_sat",
        [](const LraEngine& engine, const std::string& path, int threads) {
            auto questions = load_sat_file(path);
            auto measure = [&engine](const WordPair& a, const WordPair& b) {
                return engine.similarity(a, b).value;
            };
            SatRun run = run_sat(questions, measure, threads);
            py::list guesses;
            for (const auto& r : run.results)
                guesses.append(r.guess ? py::object(py::int_(*r.guess)) : py::none());
            py::dict out = report_dict(run.report);
            out["guesses"] = guesses;
            return out;
        },
        py::arg("engine"), py::arg("sat_path"), py::arg("threads") = 0);

    m.def("load_pair_list", &load_pair_list, py::arg("path"));
}
