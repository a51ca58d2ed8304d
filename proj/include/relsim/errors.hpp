#pragma once

#include <stdexcept>
#include <string>

namespace relsim {

// Error categories map to CLI exit codes; see tools/relsim_main.cpp.
enum class ErrorKind {
    io,       // unreadable/missing files
    parse,    // malformed input files (carries line context where known)
    config,   // contradictory or invalid parameters
    numeric,  // solver failures (non-convergence, degenerate inputs)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error io_error(std::string msg) { return Error(ErrorKind::io, std::move(msg)); }
inline Error parse_error(std::string msg) { return Error(ErrorKind::parse, std::move(msg)); }
inline Error config_error(std::string msg) { return Error(ErrorKind::config, std::move(msg)); }
inline Error numeric_error(std::string msg) { return Error(ErrorKind::numeric, std::move(msg)); }

}  // namespace relsim
