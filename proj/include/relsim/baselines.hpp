#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relsim/corpus.hpp"
#include "relsim/thesaurus.hpp"
#include "relsim/words.hpp"

namespace relsim {

// The fixed connectives used by the vector-space relational baseline. The
// default list ships as a data file (data/joining_terms.txt), one term of
// one or two words per line.
struct JoiningTermList {
    std::vector<std::vector<std::string>> terms;

    static JoiningTermList load_file(const std::string& path);
    static JoiningTermList load_text(std::string_view text, const std::string& source_name = "<text>");

    std::size_t size() const { return terms.size(); }
};

// The 2*|terms| element vector for a pair: per term t, one element for
// "X t Y" and one for "Y t X", each log(count + 1) of exact passage counts.
std::vector<double> vsm_vector(const WordPair& pair, const JoiningTermList& terms,
                               const Corpus& corpus, int max_phrase = 5);

// Cosine of the two pairs' vectors; empty (skip) when either vector is zero.
std::optional<double> vsm_similarity(const WordPair& p1, const WordPair& p2,
                                     const JoiningTermList& terms, const Corpus& corpus,
                                     int max_phrase = 5);

// An attributional similarity measure between two words.
using AttributionalSim = std::function<std::optional<double>(const std::string&, const std::string&)>;

// score(A:B::C:D) = (sim_a(A,C) + sim_a(B,D)) / 2. Missing values count as
// zero; *missing_flagged reports whether any were missing.
double attributional_analogy_score(const WordPair& stem, const WordPair& choice,
                                   const AttributionalSim& sim, bool* missing_flagged = nullptr);

// Thesaurus scores as the default attributional measure.
AttributionalSim thesaurus_sim(const Thesaurus& thesaurus);

enum class FrequencyGuessMode { highest, lowest };

// Index of the choice with the highest (or lowest) pair co-occurrence
// frequency; ties go to the first choice in order.
std::size_t frequency_guess(const std::vector<WordPair>& choices, const Corpus& corpus,
                            int max_phrase, FrequencyGuessMode mode);

}  // namespace relsim
