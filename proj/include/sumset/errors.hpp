#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumset {

// Inputs that violate an operation's preconditions (wrong dimension, bad
// parameters, non-abelian group where one is required).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured enumeration or work cap would be exceeded.
class ResourceCapError : public std::runtime_error {
public:
    ResourceCapError(const std::string& what, std::uint64_t cap, std::uint64_t requested)
        : std::runtime_error(what + " (requested " + std::to_string(requested) + ", cap " +
                             std::to_string(cap) + ")"),
          cap_(cap), requested_(requested) {}
    std::uint64_t cap() const noexcept { return cap_; }
    std::uint64_t requested() const noexcept { return requested_; }

private:
    std::uint64_t cap_;
    std::uint64_t requested_;
};

// A finite search exhausted its scale. Never a refutation of the asymptotic
// statement; the message always carries the scale that was searched.
class NotFoundAtScale : public std::runtime_error {
public:
    NotFoundAtScale(const std::string& stage, const std::string& scale)
        : std::runtime_error("not found at scale [" + stage + "]: " + scale +
                             " (try enlarging the search window)"),
          stage_(stage), scale_(scale) {}
    const std::string& stage() const noexcept { return stage_; }
    const std::string& scale() const noexcept { return scale_; }

private:
    std::string stage_;
    std::string scale_;
};

class PreconditionUnverified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HypothesisUnmet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class HypothesisViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BlockFamilyExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SpectrumEmpty : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bohr membership could not be decided at the declared precision.
class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sumset

namespace sumset {

// Syntax or validation error in a set expression or experiment config.
class ParseError : public ContractError {
public:
    ParseError(const std::string& msg, int line, int column)
        : ContractError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace sumset
