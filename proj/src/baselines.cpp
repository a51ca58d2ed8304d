#include "relsim/baselines.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "relsim/errors.hpp"
#include "relsim/svd.hpp"

namespace relsim {

JoiningTermList JoiningTermList::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open joining-term file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_text(buf.str(), path);
}

JoiningTermList JoiningTermList::load_text(std::string_view text, const std::string& source_name) {
    JoiningTermList out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string lowered = to_lower(line);
        auto words = tokenize(lowered);
        if (words.empty()) continue;
        if (!line.empty() && line.front() == '#') continue;
        if (words.size() > 2)
            throw parse_error(source_name + ":" + std::to_string(line_no) +
                              ": joining terms have one or two words");
        for (const auto& existing : out.terms)
            if (existing == words)
                throw parse_error(source_name + ":" + std::to_string(line_no) +
                                  ": duplicate joining term");
        out.terms.push_back(std::move(words));
    }
    if (out.terms.empty()) throw parse_error(source_name + ": no joining terms");
    return out;
}

std::vector<double> vsm_vector(const WordPair& pair, const JoiningTermList& terms,
                               const Corpus& corpus, int max_phrase) {
    std::vector<double> out;
    out.reserve(terms.size() * 2);
    for (const auto& term : terms.terms) {
        DirectedPattern fwd{PatternTemplate::literal(term), Direction::forward};
        DirectedPattern rev{PatternTemplate::literal(term), Direction::reversed};
        const int needed = static_cast<int>(term.size()) + 2;
        const int window = std::max(max_phrase, needed);
        out.push_back(std::log1p(static_cast<double>(corpus.pattern_frequency(pair, fwd, window))));
        out.push_back(std::log1p(static_cast<double>(corpus.pattern_frequency(pair, rev, window))));
    }
    return out;
}

std::optional<double> vsm_similarity(const WordPair& p1, const WordPair& p2,
                                     const JoiningTermList& terms, const Corpus& corpus,
                                     int max_phrase) {
    auto v1 = vsm_vector(p1, terms, corpus, max_phrase);
    auto v2 = vsm_vector(p2, terms, corpus, max_phrase);
    auto zero = [](const std::vector<double>& v) {
        for (double x : v)
            if (x != 0.0) return false;
        return true;
    };
    if (zero(v1) || zero(v2)) return std::nullopt;
    return cosine(v1, v2);
}

double attributional_analogy_score(const WordPair& stem, const WordPair& choice,
                                   const AttributionalSim& sim, bool* missing_flagged) {
    auto value = [&](const std::string& x, const std::string& y) {
        auto s = sim(x, y);
        if (!s && missing_flagged) *missing_flagged = true;
        return s.value_or(0.0);
    };
    if (missing_flagged) *missing_flagged = false;
    return 0.5 * (value(stem.a, choice.a) + value(stem.b, choice.b));
}

AttributionalSim thesaurus_sim(const Thesaurus& thesaurus) {
    return [&thesaurus](const std::string& x, const std::string& y) {
        return thesaurus.similarity_score(x, y);
    };
}

std::size_t frequency_guess(const std::vector<WordPair>& choices, const Corpus& corpus,
                            int max_phrase, FrequencyGuessMode mode) {
    if (choices.empty()) throw config_error("frequency_guess: no choices");
    std::size_t best = 0;
    std::uint64_t best_freq = corpus.cooccurrence_frequency(choices[0], max_phrase);
    for (std::size_t i = 1; i < choices.size(); ++i) {
        std::uint64_t f = corpus.cooccurrence_frequency(choices[i], max_phrase);
        const bool better =
            mode == FrequencyGuessMode::highest ? f > best_freq : f < best_freq;
        if (better) {
            best = i;
            best_freq = f;
        }
    }
    return best;
}

}  // namespace relsim
