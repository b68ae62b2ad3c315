#pragma once

#include <stdexcept>
#include <string>

namespace kgfeat {

// Exit code contract: 0 success, 1 config error, 2 input error, 3 internal
// invariant violation.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : InputError {
    ParseError(std::size_t line, const std::string& msg)
        : InputError("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    std::size_t line_number;
};

struct NotFoundError : std::runtime_error {
    explicit NotFoundError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kgfeat
