#pragma once

#include <stdexcept>
#include <string>

namespace lab {

// Bad construction arguments or malformed configs. Mapped to CLI exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A computation left its numeric domain (non-finite state, singular score, ...).
// Mapped to CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-fatal diagnostics go to stderr, prefixed "[lab] warning:".
void warn(const std::string& message);

} // namespace lab
