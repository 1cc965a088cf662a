#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smithdiv {

// Input exceeded a documented size bound (factorization cap, lcm overflow).
class BoundError : public std::runtime_error {
public:
    explicit BoundError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation left the mathematical domain (negative base under a
// fractional power, log of zero, invalid bisection bracket).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller violated an API contract (non-multiplicative function passed to a
// multiplicative-only routine, non-symmetric matrix, bad dimensions).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// DSL syntax error. Offsets are 1-based byte positions into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
        : std::runtime_error(msg), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// File/format problems (missing table file, malformed JSON, bad CSV).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace smithdiv
