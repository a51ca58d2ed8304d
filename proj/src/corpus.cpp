#include "relsim/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "relsim/errors.hpp"

namespace fs = std::filesystem;

namespace relsim {

namespace {

bool is_token_char(char c, TokenChars cls) {
    if (is_ascii_alpha(c)) return true;
    return cls == TokenChars::alphanumeric && c >= '0' && c <= '9';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (is_token_char(c, config.token_chars)) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            cur += c;
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string PhraseMatch::text() const {
    std::string out = first;
    for (const auto& w : intervening) {
        out += ' ';
        out += w;
    }
    out += ' ';
    out += last;
    return out;
}

Corpus Corpus::ingest_texts(const std::vector<std::string>& texts, const TokenizerConfig& config) {
    Corpus c;
    for (const auto& t : texts) c.add_document(tokenize(t, config));
    c.finalize();
    return c;
}

Corpus Corpus::from_token_documents(std::vector<std::vector<std::string>> docs) {
    Corpus c;
    for (auto& d : docs) c.add_document(std::move(d));
    c.finalize();
    return c;
}

Corpus Corpus::ingest_files(const std::vector<std::string>& paths, const TokenizerConfig& config,
                            bool line_documents) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<std::string> nested;
            for (const auto& entry : fs::recursive_directory_iterator(p, ec)) {
                if (entry.is_regular_file()) nested.push_back(entry.path().string());
            }
            if (ec) throw io_error("cannot read corpus directory '" + p + "': " + ec.message());
            std::sort(nested.begin(), nested.end());
            files.insert(files.end(), nested.begin(), nested.end());
        } else if (fs::is_regular_file(p, ec)) {
            files.push_back(p);
        } else {
            throw io_error("cannot read corpus source '" + p + "'");
        }
    }

    Corpus c;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw io_error("cannot open corpus file '" + f + "'");
        if (line_documents) {
            std::string line;
            while (std::getline(in, line)) c.add_document(tokenize(line, config));
        } else {
            std::ostringstream buf;
            buf << in.rdbuf();
            c.add_document(tokenize(buf.str(), config));
        }
        if (in.bad()) throw io_error("error reading corpus file '" + f + "'");
    }
    c.finalize();
    return c;
}

void Corpus::add_document(std::vector<std::string> tokens) {
    std::vector<std::int32_t> ids;
    ids.reserve(tokens.size());
    for (auto& t : tokens) {
        auto it = token_to_id_.find(t);
        std::int32_t id;
        if (it == token_to_id_.end()) {
            id = static_cast<std::int32_t>(id_to_token_.size());
            token_to_id_.emplace(t, id);
            id_to_token_.push_back(std::move(t));
        } else {
            id = it->second;
        }
        ids.push_back(id);
    }
    token_count_ += ids.size();
    docs_.push_back(std::move(ids));
}

void Corpus::finalize() {
    postings_.assign(id_to_token_.size(), {});
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const auto& doc = docs_[d];
        for (std::size_t p = 0; p < doc.size(); ++p) {
            postings_[static_cast<std::size_t>(doc[p])].push_back(
                {static_cast<std::int32_t>(d), static_cast<std::int32_t>(p)});
            h = fnv1a64(id_to_token_[static_cast<std::size_t>(doc[p])], h);
            h = fnv1a64("\x1f", h);
        }
        h = fnv1a64("\x1e", h);
    }
    content_hash_ = h;
}

std::int32_t Corpus::token_id(std::string_view token) const {
    auto it = token_to_id_.find(std::string(token));
    return it == token_to_id_.end() ? -1 : it->second;
}

std::vector<std::int32_t> Corpus::variant_ids(std::string_view word) const {
    std::vector<std::int32_t> out;
    for (const auto& v : suffix_variants(word)) {
        std::int32_t id = token_id(v);
        if (id >= 0) out.push_back(id);
    }
    return out;
}

void Corpus::for_each_span(const WordPair& pair, int max_phrase,
                           const std::function<void(std::int32_t, std::int32_t, std::int32_t)>& fn) const {
    if (max_phrase < 3) throw config_error("max_phrase must be >= 3");

    auto ids_a = variant_ids(pair.a);
    auto ids_b = variant_ids(pair.b);
    if (ids_a.empty() && ids_b.empty()) return;

    // Candidate start positions: occurrences of either member. A position
    // can occur in both lists (e.g. overlapping suffix forms), so dedupe.
    std::vector<Posting> starts;
    for (auto id : ids_a) {
        const auto& ps = postings_[static_cast<std::size_t>(id)];
        starts.insert(starts.end(), ps.begin(), ps.end());
    }
    for (auto id : ids_b) {
        const auto& ps = postings_[static_cast<std::size_t>(id)];
        starts.insert(starts.end(), ps.begin(), ps.end());
    }
    std::sort(starts.begin(), starts.end(), [](const Posting& x, const Posting& y) {
        return x.doc != y.doc ? x.doc < y.doc : x.pos < y.pos;
    });
    starts.erase(std::unique(starts.begin(), starts.end(),
                             [](const Posting& x, const Posting& y) {
                                 return x.doc == y.doc && x.pos == y.pos;
                             }),
                 starts.end());

    for (const auto& s : starts) {
        const auto& doc = docs_[static_cast<std::size_t>(s.doc)];
        const std::string& start_tok = id_to_token_[static_cast<std::size_t>(doc[static_cast<std::size_t>(s.pos)])];
        const bool sa = suffix_insensitive_match(pair.a, start_tok);
        const bool sb = suffix_insensitive_match(pair.b, start_tok);
        const std::int32_t max_end =
            std::min<std::int32_t>(static_cast<std::int32_t>(doc.size()) - 1, s.pos + max_phrase - 1);
        for (std::int32_t e = s.pos + 2; e <= max_end; ++e) {
            const std::string& end_tok = id_to_token_[static_cast<std::size_t>(doc[static_cast<std::size_t>(e)])];
            const bool ea = suffix_insensitive_match(pair.a, end_tok);
            const bool eb = suffix_insensitive_match(pair.b, end_tok);
            if ((sa && eb) || (sb && ea)) fn(s.doc, s.pos, e);
        }
    }
}

std::uint64_t Corpus::cooccurrence_frequency(const WordPair& pair, int max_phrase) const {
    std::uint64_t n = 0;
    for_each_span(pair, max_phrase, [&](std::int32_t, std::int32_t, std::int32_t) { ++n; });
    return n;
}

std::vector<PhraseMatch> Corpus::enumerate_phrases(const WordPair& pair, int max_phrase) const {
    // Aggregate spans by their literal token-id sequence.
    struct VecHash {
        std::size_t operator()(const std::vector<std::int32_t>& v) const {
            std::uint64_t h = 0xcbf29ce484222325ull;
            for (auto x : v)
                h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&x), sizeof(x)), h);
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_map<std::vector<std::int32_t>, std::uint64_t, VecHash> agg;
    for_each_span(pair, max_phrase, [&](std::int32_t d, std::int32_t s, std::int32_t e) {
        const auto& doc = docs_[static_cast<std::size_t>(d)];
        std::vector<std::int32_t> key(doc.begin() + s, doc.begin() + e + 1);
        ++agg[key];
    });

    std::vector<PhraseMatch> out;
    out.reserve(agg.size());
    for (const auto& [key, count] : agg) {
        PhraseMatch m;
        m.first = id_to_token_[static_cast<std::size_t>(key.front())];
        m.last = id_to_token_[static_cast<std::size_t>(key.back())];
        for (std::size_t i = 1; i + 1 < key.size(); ++i)
            m.intervening.push_back(id_to_token_[static_cast<std::size_t>(key[i])]);
        m.count = count;
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const PhraseMatch& x, const PhraseMatch& y) {
        if (x.first != y.first) return x.first < y.first;
        if (x.intervening != y.intervening) return x.intervening < y.intervening;
        return x.last < y.last;
    });
    return out;
}

std::uint64_t Corpus::pattern_frequency(const WordPair& pair, const DirectedPattern& pattern,
                                        int max_phrase) const {
    const std::size_t arity = pattern.tmpl.size();
    if (arity == 0 || arity + 2 > static_cast<std::size_t>(max_phrase))
        throw config_error("pattern arity " + std::to_string(arity) +
                           " does not fit within max_phrase " + std::to_string(max_phrase));

    const std::string& first_word = pattern.dir == Direction::forward ? pair.a : pair.b;
    const std::string& last_word = pattern.dir == Direction::forward ? pair.b : pair.a;

    std::uint64_t n = 0;
    for_each_span(pair, max_phrase, [&](std::int32_t d, std::int32_t s, std::int32_t e) {
        if (static_cast<std::size_t>(e - s) != arity + 1) return;
        const auto& doc = docs_[static_cast<std::size_t>(d)];
        const std::string& st = id_to_token_[static_cast<std::size_t>(doc[static_cast<std::size_t>(s)])];
        const std::string& et = id_to_token_[static_cast<std::size_t>(doc[static_cast<std::size_t>(e)])];
        if (!suffix_insensitive_match(first_word, st)) return;
        if (!suffix_insensitive_match(last_word, et)) return;
        for (std::size_t i = 0; i < arity; ++i) {
            const auto& slot = pattern.tmpl.slots[i];
            if (slot.wildcard) continue;
            if (id_to_token_[static_cast<std::size_t>(doc[static_cast<std::size_t>(s) + 1 + i])] != slot.token)
                return;
        }
        ++n;
    });
    return n;
}

}  // namespace relsim
