#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace agreeloss {

/// Bad argument values: empty vectors, out-of-range parameters, malformed spans.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two vectors that must be aligned have different lengths.
class DimensionError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// The request is well-formed but mathematically undefined for this data
/// (zero denominator, constant reference, non-differentiable point, ...).
class UndefinedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonDifferentiableError : public UndefinedError {
public:
    using UndefinedError::UndefinedError;
};

/// An iterative minimizer ran out of iterations. Carries the best iterate seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_point, double best_value)
        : std::runtime_error(what), best_point_(std::move(best_point)), best_value_(best_value) {}

    const std::vector<double>& best_point() const noexcept { return best_point_; }
    double best_value() const noexcept { return best_value_; }

private:
    std::vector<double> best_point_;
    double best_value_;
};

/// Malformed input file. `row()` is 1-based and counts the header as row 1; 0 means
/// the problem is not tied to a row (missing file, missing column).
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, std::size_t row)
        : InvalidInput(what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace agreeloss
