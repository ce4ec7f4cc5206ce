#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Invalid argument to an operation (out-of-range index, malformed size).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input lies outside the domain where the operation is defined,
/// typically a point outside the relevant cone.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation requested for a function family that does not support it.
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a node of a discrete profile leaves the admissible cone.
class ConeViolation : public DomainError {
public:
    ConeViolation(std::size_t node, double x, const std::string& what);

    std::size_t node() const noexcept { return node_; }
    double coordinate() const noexcept { return x_; }

private:
    std::size_t node_;
    double x_;
};

} // namespace yamabe
