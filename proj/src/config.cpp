#include "relsim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "relsim/errors.hpp"
#include "relsim/serialize.hpp"

namespace relsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_bool(std::string_view v, const std::string& where) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw parse_error(where + ": expected on/off, got '" + std::string(v) + "'");
}

int parse_int(std::string_view v, const std::string& where) {
    std::string t(v);
    char* end = nullptr;
    long x = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0') throw parse_error(where + ": bad integer '" + t + "'");
    return static_cast<int>(x);
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text, const std::string& source_name) {
    RunConfig c;
    c.corpus_paths.clear();

    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        auto where = source_name + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error(where + ": unterminated section header");
            section = std::string(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw parse_error(where + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));

        auto unknown = [&] {
            throw parse_error(where + ": unknown key '" + key + "' in section [" + section + "]");
        };
        if (section == "corpus") {
            if (key == "path") c.corpus_paths.push_back(value);
            else if (key == "line_documents") c.line_documents = parse_bool(value, where);
            else if (key == "index") c.index_path = value;
            else unknown();
        } else if (section == "thesaurus") {
            if (key == "path") c.thesaurus_path = value;
            else unknown();
        } else if (section == "input") {
            if (key == "pairs") c.pairs_path = value;
            else if (key == "sat") c.sat_path = value;
            else if (key == "noun_modifiers") c.noun_modifier_path = value;
            else if (key == "joining_terms") c.joining_terms_path = value;
            else unknown();
        } else if (section == "lra") {
            if (key == "num_sim") c.params.num_sim = parse_int(value, where);
            else if (key == "max_phrase") c.params.max_phrase = parse_int(value, where);
            else if (key == "num_filter") c.params.num_filter = parse_int(value, where);
            else if (key == "num_patterns") c.params.num_patterns = parse_int(value, where);
            else if (key == "k") c.params.k = parse_int(value, where);
            else if (key == "threads") c.params.threads = parse_int(value, where);
            else unknown();
        } else if (section == "ablation") {
            if (key == "svd") c.ablation.use_svd = parse_bool(value, where);
            else if (key == "synonyms") c.ablation.use_synonyms = parse_bool(value, where);
            else if (key == "symmetry") c.ablation.symmetric = parse_bool(value, where);
            else if (key == "alternates") {
                if (value == "better") c.ablation.better_alternates_only = true;
                else if (value == "all") c.ablation.better_alternates_only = false;
                else throw parse_error(where + ": alternates must be 'better' or 'all'");
            } else if (key == "top_n") {
                if (value.empty()) c.ablation.top_n.reset();
                else c.ablation.top_n = parse_int(value, where);
            } else unknown();
        } else if (section == "run") {
            if (key == "cache_dir") c.cache_dir = value;
            else if (key == "report") c.report_path = value;
            else if (key == "log") c.log_path = value;
            else if (key == "seed") c.seed = std::strtoull(value.c_str(), nullptr, 10);
            else if (key == "strategy") c.strategy = value;
            else unknown();
        } else {
            throw parse_error(where + ": unknown section [" + section + "]");
        }
    }
    return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "[corpus]\n";
    for (const auto& p : corpus_paths) os << "path = " << p << "\n";
    os << "line_documents = " << (line_documents ? "on" : "off") << "\n";
    os << "index = " << index_path << "\n";
    os << "[thesaurus]\n";
    os << "path = " << thesaurus_path << "\n";
    os << "[input]\n";
    os << "pairs = " << pairs_path << "\n";
    os << "sat = " << sat_path << "\n";
    os << "noun_modifiers = " << noun_modifier_path << "\n";
    os << "joining_terms = " << joining_terms_path << "\n";
    os << "[lra]\n";
    os << "num_sim = " << params.num_sim << "\n";
    os << "max_phrase = " << params.max_phrase << "\n";
    os << "num_filter = " << params.num_filter << "\n";
    os << "num_patterns = " << params.num_patterns << "\n";
    os << "k = " << params.k << "\n";
    os << "threads = " << params.threads << "\n";
    os << "[ablation]\n";
    os << "svd = " << (ablation.use_svd ? "on" : "off") << "\n";
    os << "synonyms = " << (ablation.use_synonyms ? "on" : "off") << "\n";
    os << "symmetry = " << (ablation.symmetric ? "on" : "off") << "\n";
    os << "alternates = " << (ablation.better_alternates_only ? "better" : "all") << "\n";
    os << "top_n = " << (ablation.top_n ? std::to_string(*ablation.top_n) : "") << "\n";
    os << "[run]\n";
    os << "cache_dir = " << cache_dir << "\n";
    os << "report = " << report_path << "\n";
    os << "log = " << log_path << "\n";
    os << "seed = " << seed << "\n";
    os << "strategy = " << strategy << "\n";
    return os.str();
}

void RunConfig::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write config file '" + path + "'");
    out << to_text();
}

std::string RunConfig::effective_cache_dir() const {
    if (const char* env = std::getenv("RELSIM_CACHE_DIR"); env && *env) return env;
    return cache_dir;
}

}  // namespace relsim
