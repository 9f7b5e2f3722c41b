#pragma once

#include <stdexcept>
#include <string>

namespace asdflow {

/// Bad argument or violated precondition (wrong order, non-zero-mean input, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A profile left the admissible set (non-positive radius somewhere on the grid).
class DomainError : public std::domain_error {
public:
    DomainError(std::size_t node, double value, const std::string& where);

    std::size_t node() const noexcept { return node_; }
    double value() const noexcept { return value_; }

private:
    std::size_t node_;
    double value_;
};

/// NaN/Inf produced, or an iterative method failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested parameter lies outside the supported range of a generator.
class UnsupportedParameterError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Constant mean curvature curve is not a positive periodic graph (|B| >= 1).
class ClassificationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The volume-matching lift has no real solution for the requested perturbation.
class NoLiftError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace asdflow
