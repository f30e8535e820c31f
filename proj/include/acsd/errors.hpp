#pragma once

#include <stdexcept>
#include <string>

namespace acsd {

// Caller passed something outside a function's contract (bad vertex id,
// empty separator, disconnected input where connectivity is required, ...).
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed .gr / .td input.
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

// A brute-force routine refused to run above its vertex cap.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// An invariant that should hold by construction was violated; indicates a bug.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace acsd
