#include "relsim/thesaurus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "relsim/errors.hpp"
#include "relsim/words.hpp"

namespace relsim {

namespace {

// Strips a trailing parenthesized part-of-speech tag: "quart(n)" -> "quart".
// Returns the stripped word and the tag ("" when untagged).
std::pair<std::string, std::string> strip_pos_tag(std::string_view raw) {
    if (!raw.empty() && raw.back() == ')') {
        auto open = raw.rfind('(');
        if (open != std::string_view::npos && open > 0)
            return {std::string(raw.substr(0, open)), std::string(raw.substr(open + 1, raw.size() - open - 2))};
    }
    return {std::string(raw), ""};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool raw_is_capitalized(std::string_view raw) {
    return !raw.empty() && raw.front() >= 'A' && raw.front() <= 'Z';
}

void sort_neighbours(std::vector<ThesaurusNeighbour>& ns) {
    std::stable_sort(ns.begin(), ns.end(), [](const ThesaurusNeighbour& x, const ThesaurusNeighbour& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.word < y.word;
    });
}

}  // namespace

bool is_unusual_token(std::string_view word, bool capitalized_in_source) {
    if (capitalized_in_source) return true;
    if (word.size() <= 3) return true;
    for (char c : word) {
        if (c == '-') return true;
        if (c == ' ' || c == '\t') return true;
        if (!is_ascii_alpha(c)) return true;
    }
    return false;
}

Thesaurus Thesaurus::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open thesaurus file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_text(buf.str(), path);
}

Thesaurus Thesaurus::load_text(std::string_view text, const std::string& source_name) {
    Thesaurus th;
    th.content_hash_ = fnv1a64(text);

    // head -> (tag -> seen), to reject duplicates within one tag while
    // allowing merges across part-of-speech sections.
    std::unordered_map<std::string, std::unordered_set<std::string>> seen_tags;
    // head -> neighbour -> best score, accumulated across sections.
    std::unordered_map<std::string, std::map<std::string, double>> merged;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        auto where = [&] { return source_name + ":" + std::to_string(line_no); };

        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw parse_error(where() + ": expected 'head<TAB>neighbour:score,...'");

        auto [head_raw, tag] = strip_pos_tag(trim(line.substr(0, tab)));
        if (head_raw.empty()) throw parse_error(where() + ": empty head word");
        if (raw_is_capitalized(head_raw)) th.capitalized_in_source_.insert(to_lower(head_raw));
        std::string head = to_lower(head_raw);

        if (!seen_tags[head].insert(tag).second)
            throw parse_error(where() + ": duplicate head word '" + head + "'");
        if (seen_tags[head].size() > 1 && merged.count(head))
            th.warnings_.push_back(where() + ": merging part-of-speech sections for '" + head + "'");

        auto& nb = merged[head];
        std::string_view rest = line.substr(tab + 1);
        bool order_violated = false;
        double prev_score = 2.0;

        std::size_t i = 0;
        while (i <= rest.size()) {
            auto comma = rest.find(',', i);
            std::string_view item =
                comma == std::string_view::npos ? rest.substr(i) : rest.substr(i, comma - i);
            i = comma == std::string_view::npos ? rest.size() + 1 : comma + 1;
            item = trim(item);
            if (item.empty()) continue;

            auto colon = item.rfind(':');
            if (colon == std::string_view::npos || colon == 0 || colon + 1 >= item.size())
                throw parse_error(where() + ": expected 'neighbour:score', got '" + std::string(item) + "'");

            auto [word_raw, ntag] = strip_pos_tag(trim(item.substr(0, colon)));
            (void)ntag;
            std::string score_text(trim(item.substr(colon + 1)));
            char* end = nullptr;
            double score = std::strtod(score_text.c_str(), &end);
            if (end == score_text.c_str() || *end != '\0')
                throw parse_error(where() + ": bad score '" + score_text + "'");
            if (!(score > 0.0) || score > 1.0)
                throw parse_error(where() + ": score " + score_text + " outside (0, 1]");

            if (word_raw.empty()) throw parse_error(where() + ": empty neighbour word");
            if (raw_is_capitalized(word_raw)) th.capitalized_in_source_.insert(to_lower(word_raw));
            std::string word = to_lower(word_raw);

            if (word == head) {
                th.warnings_.push_back(where() + ": dropped self-neighbour '" + word + "'");
                continue;
            }
            if (score > prev_score) order_violated = true;
            prev_score = score;

            auto it = nb.find(word);
            if (it == nb.end())
                nb.emplace(word, score);
            else
                it->second = std::max(it->second, score);
        }
        if (order_violated)
            th.warnings_.push_back(where() + ": neighbours not sorted by score; re-sorted");
    }

    for (auto& [head, nb] : merged) {
        ThesaurusEntry entry;
        entry.word = head;
        entry.neighbours.reserve(nb.size());
        for (const auto& [w, s] : nb) entry.neighbours.push_back({w, s});
        sort_neighbours(entry.neighbours);
        th.entries_.emplace(head, std::move(entry));
    }
    return th;
}

const ThesaurusEntry* Thesaurus::find(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second;
}

bool Thesaurus::is_unusual(std::string_view word) const {
    return is_unusual_token(word, capitalized_in_source_.count(std::string(word)) > 0);
}

std::vector<ThesaurusNeighbour> Thesaurus::top_similar(std::string_view word, int num_sim) const {
    if (num_sim < 1) throw config_error("num_sim must be >= 1");
    std::vector<ThesaurusNeighbour> out;
    const ThesaurusEntry* entry = find(word);
    if (!entry) return out;
    for (const auto& n : entry->neighbours) {
        if (is_unusual(n.word)) continue;
        out.push_back(n);
        if (static_cast<int>(out.size()) == num_sim) break;
    }
    return out;
}

std::optional<double> Thesaurus::similarity_score(std::string_view x, std::string_view y) const {
    if (x == y) return 1.0;
    if (const ThesaurusEntry* e = find(x)) {
        for (const auto& n : e->neighbours)
            if (n.word == y) return n.score;
    }
    if (const ThesaurusEntry* e = find(y)) {
        for (const auto& n : e->neighbours)
            if (n.word == x) return n.score;
    }
    return std::nullopt;
}

}  // namespace relsim
