#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relsim/words.hpp"

namespace relsim {

// A pattern template is the sequence of intervening slots between the two
// members of a word pair. Each slot is a literal token or a one-word
// wildcard; a wildcard matches exactly one word, so a template of length L
// only ever matches phrases with exactly L intervening words.
struct PatternTemplate {
    struct Slot {
        bool wildcard = false;
        std::string token;  // empty when wildcard

        bool operator==(const Slot& o) const {
            return wildcard == o.wildcard && token == o.token;
        }
    };

    std::vector<Slot> slots;

    std::size_t size() const { return slots.size(); }

    // Canonical text form: slots joined by single spaces, "*" for wildcards.
    // Used for deterministic ordering and for the column sidecar format.
    std::string text() const;

    static PatternTemplate literal(const std::vector<std::string>& words);
    static PatternTemplate parse(std::string_view text);

    bool matches(const std::vector<std::string>& intervening) const;

    bool operator==(const PatternTemplate& o) const { return slots == o.slots; }
};

struct PatternTemplateHash {
    std::size_t operator()(const PatternTemplate& t) const;
};

// Direction of a pattern column relative to an ordered pair (a, b):
// forward matches phrases "a ... b", reversed matches "b ... a".
enum class Direction : std::uint8_t { forward = 0, reversed = 1 };

inline Direction flip(Direction d) {
    return d == Direction::forward ? Direction::reversed : Direction::forward;
}

struct DirectedPattern {
    PatternTemplate tmpl;
    Direction dir = Direction::forward;

    bool operator==(const DirectedPattern& o) const {
        return dir == o.dir && tmpl == o.tmpl;
    }
};

struct DirectedPatternHash {
    std::size_t operator()(const DirectedPattern& p) const;
};

// All 2^(n-2) templates obtained by replacing any subset of the intervening
// words with wildcards. Deterministic order: mask 0, 1, 2, ... where bit i
// set means slot i is a wildcard.
std::vector<PatternTemplate> generate_templates(const std::vector<std::string>& intervening);

}  // namespace relsim
