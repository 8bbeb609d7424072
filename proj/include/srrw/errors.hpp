#pragma once

#include <stdexcept>
#include <string>

namespace srrw {

// Error taxonomy used across the library. The CLI maps these onto process
// exit codes: ParseError and DomainError indicate unusable input (exit 2),
// NumericError indicates a failure detected while computing (exit 3).

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace srrw
