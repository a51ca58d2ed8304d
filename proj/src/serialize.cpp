#include "relsim/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "relsim/errors.hpp"

namespace relsim {

namespace {

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error(std::string("cannot open ") + what + " file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write file '" + path + "'");
    out << content;
    if (!out) throw io_error("error writing file '" + path + "'");
}

struct Lines {
    std::string_view text;
    std::string source;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    std::optional<std::string_view> next_raw() {
        if (pos > text.size()) return std::nullopt;
        auto nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return line;
    }

    std::string_view require(const char* what) {
        auto line = next_raw();
        if (!line) throw parse_error(source + ": unexpected end of file, expected " + what);
        return *line;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error(source + ":" + std::to_string(line_no) + ": " + why);
    }
};

double parse_double(Lines& lines, std::string_view token) {
    std::string t(token);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') lines.fail("bad number '" + t + "'");
    return v;
}

std::uint64_t parse_u64(Lines& lines, std::string_view token) {
    std::string t(token);
    char* end = nullptr;
    unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0') lines.fail("bad integer '" + t + "'");
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<WordPair> parse_pair_list(std::string_view text, const std::string& source_name) {
    std::vector<WordPair> out;
    Lines lines{text, source_name};
    while (auto raw = lines.next_raw()) {
        std::string_view line = *raw;
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        out.push_back(parse_word_pair(line, source_name + ":" + std::to_string(lines.line_no)));
    }
    return out;
}

std::vector<WordPair> load_pair_list(const std::string& path) {
    return parse_pair_list(read_file(path, "pair-list"), path);
}

// ---------------------------------------------------------------- corpus

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ostringstream os;
    os << "relsim-corpus 1\n";
    os << "hash " << hash_hex(corpus.content_hash()) << "\n";
    os << "tokens " << corpus.token_count() << " docs " << corpus.document_count() << "\n";
    const auto& vocab = corpus.vocabulary();
    for (const auto& doc : corpus.documents()) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (i) os << ' ';
            os << vocab[static_cast<std::size_t>(doc[i])];
        }
        os << '\n';
    }
    write_file(path, os.str());
}

Corpus load_corpus(const std::string& path) {
    std::string text = read_file(path, "corpus index");
    Lines lines{text, path};
    if (lines.require("magic") != "relsim-corpus 1") lines.fail("not a corpus index artifact");
    lines.require("hash line");
    auto counts = split_ws(lines.require("counts line"));
    if (counts.size() != 4 || counts[0] != "tokens" || counts[2] != "docs")
        lines.fail("bad counts line");
    std::uint64_t docs = parse_u64(lines, counts[3]);

    std::vector<std::vector<std::string>> documents;
    documents.reserve(docs);
    for (std::uint64_t d = 0; d < docs; ++d) {
        auto line = lines.next_raw();
        if (!line) lines.fail("missing document line");
        std::vector<std::string> toks;
        for (auto t : split_ws(*line)) toks.emplace_back(t);
        documents.push_back(std::move(toks));
    }
    return Corpus::from_token_documents(std::move(documents));
}

std::optional<std::uint64_t> peek_corpus_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string magic, hash_label, hex;
    std::getline(in, magic);
    if (magic != "relsim-corpus 1") return std::nullopt;
    in >> hash_label >> hex;
    if (hash_label != "hash" || hex.size() != 16) return std::nullopt;
    return std::strtoull(hex.c_str(), nullptr, 16);
}

// ---------------------------------------------------------------- matrix

void save_pair_matrix(const PairPatternMatrix& matrix, const std::string& base_path) {
    {
        std::ostringstream os;
        os << "relsim-matrix 1 symmetric=" << (matrix.symmetric ? 1 : 0)
           << " weighted=" << (matrix.weighted ? 1 : 0) << "\n";
        os << matrix.rows() << " " << matrix.cols() << " " << matrix.cells.nnz() << "\n";
        matrix.cells.for_each([&](std::size_t i, std::size_t j, double v) {
            os << i << " " << j << " " << format_double(v) << "\n";
        });
        write_file(base_path + ".coo", os.str());
    }
    {
        std::ostringstream os;
        for (const auto& p : matrix.row_pairs) os << p.a << ":" << p.b << "\n";
        write_file(base_path + ".rows", os.str());
    }
    {
        std::ostringstream os;
        for (const auto& c : matrix.columns)
            os << (c.dir == Direction::forward ? "fwd" : "rev") << "\t" << c.tmpl.text() << "\n";
        write_file(base_path + ".cols", os.str());
    }
}

PairPatternMatrix load_pair_matrix(const std::string& base_path) {
    PairPatternMatrix out;
    {
        std::string text = read_file(base_path + ".coo", "matrix");
        Lines lines{text, base_path + ".coo"};
        auto magic = split_ws(lines.require("magic"));
        if (magic.size() != 4 || magic[0] != "relsim-matrix" || magic[1] != "1")
            lines.fail("not a matrix artifact");
        out.symmetric = magic[2] == "symmetric=1";
        out.weighted = magic[3] == "weighted=1";
        auto dims = split_ws(lines.require("dimensions"));
        if (dims.size() != 3) lines.fail("bad dimension line");
        std::size_t m = parse_u64(lines, dims[0]);
        std::size_t n = parse_u64(lines, dims[1]);
        std::size_t nnz = parse_u64(lines, dims[2]);
        std::vector<Triplet> triplets;
        triplets.reserve(nnz);
        for (std::size_t t = 0; t < nnz; ++t) {
            auto parts = split_ws(lines.require("triple"));
            if (parts.size() != 3) lines.fail("bad triple");
            triplets.push_back({static_cast<std::size_t>(parse_u64(lines, parts[0])),
                                static_cast<std::size_t>(parse_u64(lines, parts[1])),
                                parse_double(lines, parts[2])});
        }
        out.cells = SparseMatrix(m, n, std::move(triplets));
    }
    {
        std::string text = read_file(base_path + ".rows", "matrix row index");
        Lines lines{text, base_path + ".rows"};
        while (auto line = lines.next_raw()) {
            if (line->empty()) continue;
            out.row_index.emplace(parse_word_pair(*line), out.row_pairs.size());
            out.row_pairs.push_back(parse_word_pair(*line));
        }
        if (out.row_pairs.size() != out.cells.rows())
            throw parse_error(base_path + ".rows: row count mismatch with matrix");
    }
    {
        std::string text = read_file(base_path + ".cols", "matrix column index");
        Lines lines{text, base_path + ".cols"};
        while (auto line = lines.next_raw()) {
            if (line->empty()) continue;
            auto tab = line->find('\t');
            if (tab == std::string_view::npos) lines.fail("expected 'dir<TAB>pattern'");
            std::string_view dir = line->substr(0, tab);
            if (dir != "fwd" && dir != "rev") lines.fail("bad direction");
            out.columns.push_back({PatternTemplate::parse(line->substr(tab + 1)),
                                   dir == "fwd" ? Direction::forward : Direction::reversed});
        }
        if (out.columns.size() != out.cells.cols())
            throw parse_error(base_path + ".cols: column count mismatch with matrix");
    }
    return out;
}

// ------------------------------------------------------------------- svd

void save_svd(const SvdResult& svd, const std::string& path) {
    std::ostringstream os;
    os << "relsim-svd 1\n";
    os << "m " << svd.U.rows << " n " << svd.V.rows << " k " << svd.k() << " truncated "
       << (svd.k_truncated_to_rank ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < svd.k(); ++i) {
        if (i) os << ' ';
        os << format_double(svd.sigma[i]);
    }
    os << "\n";
    auto dump = [&](const DenseMatrix& mat) {
        for (std::size_t i = 0; i < mat.rows; ++i) {
            for (std::size_t j = 0; j < mat.cols; ++j) {
                if (j) os << ' ';
                os << format_double(mat.at(i, j));
            }
            os << '\n';
        }
    };
    dump(svd.U);
    dump(svd.V);
    write_file(path, os.str());
}

SvdResult load_svd(const std::string& path) {
    std::string text = read_file(path, "svd");
    Lines lines{text, path};
    if (lines.require("magic") != "relsim-svd 1") lines.fail("not an svd artifact");
    auto dims = split_ws(lines.require("dimensions"));
    if (dims.size() != 8 || dims[0] != "m" || dims[2] != "n" || dims[4] != "k" ||
        dims[6] != "truncated")
        lines.fail("bad dimension line");
    std::size_t m = parse_u64(lines, dims[1]);
    std::size_t n = parse_u64(lines, dims[3]);
    std::size_t k = parse_u64(lines, dims[5]);

    SvdResult svd;
    svd.k_truncated_to_rank = dims[7] == "1";
    auto sig = split_ws(lines.require("sigma"));
    if (sig.size() != k) lines.fail("sigma count mismatch");
    for (auto s : sig) svd.sigma.push_back(parse_double(lines, s));

    auto read_matrix = [&](std::size_t rows) {
        DenseMatrix mat(rows, k);
        for (std::size_t i = 0; i < rows; ++i) {
            auto parts = split_ws(lines.require("matrix row"));
            if (parts.size() != k) lines.fail("matrix row length mismatch");
            for (std::size_t j = 0; j < k; ++j) mat.at(i, j) = parse_double(lines, parts[j]);
        }
        return mat;
    };
    svd.U = read_matrix(m);
    svd.V = read_matrix(n);
    return svd;
}

// -------------------------------------------------------------- families

void save_families(const std::vector<PairFamily>& families, const std::string& path) {
    std::ostringstream os;
    os << "relsim-families 1\n";
    for (const auto& f : families) {
        os << "family " << f.original.a << ":" << f.original.b << " " << f.original_frequency
           << "\n";
        for (const auto& alt : f.alternates)
            os << "alt " << alt.pair.a << ":" << alt.pair.b << " "
               << format_double(alt.thesaurus_score) << " " << alt.frequency << "\n";
    }
    write_file(path, os.str());
}

std::vector<PairFamily> load_families(const std::string& path) {
    std::string text = read_file(path, "families");
    Lines lines{text, path};
    if (lines.require("magic") != "relsim-families 1") lines.fail("not a families artifact");
    std::vector<PairFamily> out;
    while (auto line = lines.next_raw()) {
        if (line->empty()) continue;
        auto parts = split_ws(*line);
        if (parts[0] == "family") {
            if (parts.size() != 3) lines.fail("bad family line");
            PairFamily f;
            f.original = parse_word_pair(parts[1]);
            f.original_frequency = parse_u64(lines, parts[2]);
            out.push_back(std::move(f));
        } else if (parts[0] == "alt") {
            if (parts.size() != 4) lines.fail("bad alternate line");
            if (out.empty()) lines.fail("alternate before any family");
            AlternatePair alt;
            alt.pair = parse_word_pair(parts[1]);
            alt.thesaurus_score = parse_double(lines, parts[2]);
            alt.frequency = parse_u64(lines, parts[3]);
            out.back().alternates.push_back(std::move(alt));
        } else {
            lines.fail("unknown record '" + std::string(parts[0]) + "'");
        }
    }
    return out;
}

}  // namespace relsim
