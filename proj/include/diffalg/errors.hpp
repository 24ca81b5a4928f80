#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

// Caller misuse: wrong ring/mode, malformed arguments, unmet preconditions.
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structural invariant violated by input data (commands, operators, files).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A configured budget or cap was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Text input rejected; `position` is a byte offset into the input.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace diffalg
