#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relsim/engine.hpp"

namespace relsim {

// Everything a command needs to run, loadable from a flat sectioned
// key-value file. CLI flags override file values; saving writes the
// canonical form, and save/load round-trips losslessly.
struct RunConfig {
    // [corpus]
    std::vector<std::string> corpus_paths;
    bool line_documents = false;
    std::string index_path;

    // [thesaurus]
    std::string thesaurus_path;

    // [input]
    std::string pairs_path;
    std::string sat_path;
    std::string noun_modifier_path;
    std::string joining_terms_path;

    // [lra]
    LraParams params;

    // [ablation]
    AblationConfig ablation;

    // [run]
    std::string cache_dir = ".relsim-cache";
    std::string report_path;
    std::string log_path;
    std::uint64_t seed = 0;
    std::string strategy = "lra";

    static RunConfig load_file(const std::string& path);
    static RunConfig parse(std::string_view text, const std::string& source_name = "<text>");
    std::string to_text() const;
    void save_file(const std::string& path) const;

    // cache_dir, with the RELSIM_CACHE_DIR environment variable taking
    // precedence when set.
    std::string effective_cache_dir() const;
};

}  // namespace relsim
