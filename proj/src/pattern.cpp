#include "relsim/pattern.hpp"

#include "relsim/errors.hpp"

namespace relsim {

std::string PatternTemplate::text() const {
    std::string out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) out += ' ';
        out += slots[i].wildcard ? "*" : slots[i].token;
    }
    return out;
}

PatternTemplate PatternTemplate::literal(const std::vector<std::string>& words) {
    PatternTemplate t;
    t.slots.reserve(words.size());
    for (const auto& w : words) t.slots.push_back({false, w});
    return t;
}

PatternTemplate PatternTemplate::parse(std::string_view text) {
    PatternTemplate t;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        if (j > i) {
            std::string_view w = text.substr(i, j - i);
            if (w == "*")
                t.slots.push_back({true, ""});
            else
                t.slots.push_back({false, std::string(w)});
        }
        i = j;
    }
    if (t.slots.empty()) throw parse_error("empty pattern text");
    return t;
}

bool PatternTemplate::matches(const std::vector<std::string>& intervening) const {
    if (intervening.size() != slots.size()) return false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].wildcard) continue;
        if (slots[i].token != intervening[i]) return false;
    }
    return true;
}

std::size_t PatternTemplateHash::operator()(const PatternTemplate& t) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& s : t.slots) {
        h = fnv1a64(s.wildcard ? "*" : s.token, h);
        h = fnv1a64("\x1f", h);
    }
    return static_cast<std::size_t>(h);
}

std::size_t DirectedPatternHash::operator()(const DirectedPattern& p) const {
    std::uint64_t h = PatternTemplateHash{}(p.tmpl);
    return static_cast<std::size_t>(h ^ (p.dir == Direction::reversed ? 0x9e3779b97f4a7c15ull : 0));
}

std::vector<PatternTemplate> generate_templates(const std::vector<std::string>& intervening) {
    const std::size_t n = intervening.size();
    std::vector<PatternTemplate> out;
    out.reserve(std::size_t(1) << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        PatternTemplate t;
        t.slots.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i))
                t.slots.push_back({true, ""});
            else
                t.slots.push_back({false, intervening[i]});
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace relsim
