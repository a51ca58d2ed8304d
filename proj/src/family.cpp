#include "relsim/family.hpp"

#include <algorithm>
#include <unordered_set>

namespace relsim {

std::vector<AlternatePair> find_alternates(const WordPair& pair, const Thesaurus& thesaurus,
                                           int num_sim) {
    std::vector<AlternatePair> out;
    std::unordered_set<WordPair, WordPairHash> seen;
    seen.insert(pair);

    auto add = [&](WordPair candidate, double score) {
        if (candidate.a == candidate.b) return;
        if (!seen.insert(candidate).second) return;
        out.push_back({std::move(candidate), score, 0});
    };

    for (const auto& n : thesaurus.top_similar(pair.a, num_sim)) add(WordPair(n.word, pair.b), n.score);
    for (const auto& n : thesaurus.top_similar(pair.b, num_sim)) add(WordPair(pair.a, n.word), n.score);
    return out;
}

PairFamily filter_alternates(const WordPair& original, std::vector<AlternatePair> alternates,
                             const FrequencyFn& frequency, int num_filter) {
    PairFamily family;
    family.original = original;
    family.original_frequency = frequency(original);

    for (auto& alt : alternates) alt.frequency = frequency(alt.pair);
    std::stable_sort(alternates.begin(), alternates.end(),
                     [](const AlternatePair& x, const AlternatePair& y) {
                         if (x.frequency != y.frequency) return x.frequency > y.frequency;
                         if (x.thesaurus_score != y.thesaurus_score)
                             return x.thesaurus_score > y.thesaurus_score;
                         return x.pair < y.pair;
                     });
    if (num_filter >= 0 && alternates.size() > static_cast<std::size_t>(num_filter))
        alternates.resize(static_cast<std::size_t>(num_filter));
    family.alternates = std::move(alternates);
    return family;
}

PairFamily filter_alternates(const WordPair& original, std::vector<AlternatePair> alternates,
                             const Corpus& corpus, int max_phrase, int num_filter) {
    return filter_alternates(
        original, std::move(alternates),
        [&](const WordPair& p) { return corpus.cooccurrence_frequency(p, max_phrase); }, num_filter);
}

}  // namespace relsim
