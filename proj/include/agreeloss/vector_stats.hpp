#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace agreeloss {

/// Non-empty sequence of finite doubles. The length is fixed at construction.
class RealVector {
public:
    explicit RealVector(std::vector<double> values);
    RealVector(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> span() const noexcept { return values_; }
    operator std::span<const double>() const noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const RealVector&, const RealVector&) = default;

private:
    std::vector<double> values_;
};

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;
    double variance = 0.0;
    double mad = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Reductions below use Neumaier-compensated summation. Every function taking a
// span throws InvalidInput on empty input.

double compensated_sum(std::span<const double> x);

double mean(std::span<const double> x);

/// Mean absolute deviation from the mean.
double mad(std::span<const double> x);

/// Population variance (divisor n).
double variance(std::span<const double> x);

/// Population standard deviation (divisor n).
double std_dev(std::span<const double> x);

SummaryStats summary(std::span<const double> x);

/// x - mean(x); the result sums to zero up to rounding.
std::vector<double> center(std::span<const double> x);

/// p >= 1, or p == kInfinity for the max-absolute norm.
double lp_norm(std::span<const double> x, double p);

/// Throws DimensionError when lengths differ.
double inner(std::span<const double> x, std::span<const double> y);

/// Throws UndefinedError when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// argmin_theta sum |y_i - theta|^p.
///
/// p == 1 gives the median (midpoint of the two central order statistics for
/// even n), p == 2 the mean, p == infinity the midrange. Any other p is solved
/// by bisection on the monotone derivative to an absolute tolerance of 1e-10.
double lp_mean(std::span<const double> y, double p);

double median(std::span<const double> y);

/// sign(0) == 0.
double sign(double x) noexcept;

bool is_constant(std::span<const double> x) noexcept;

}  // namespace agreeloss
