#include "agreeloss/vector_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "agreeloss/errors.hpp"

namespace agreeloss {

namespace {

void require_nonempty(std::span<const double> x, const char* what) {
    if (x.empty()) throw InvalidInput(std::string(what) + ": empty vector");
}

void require_same_length(std::span<const double> x, std::span<const double> y, const char* what) {
    if (x.size() != y.size()) {
        throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()) + ")");
    }
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

RealVector::RealVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidInput("RealVector: empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidInput("RealVector: non-finite value at index " + std::to_string(i));
        }
    }
}

RealVector::RealVector(std::initializer_list<double> values)
    : RealVector(std::vector<double>(values)) {}

double compensated_sum(std::span<const double> x) {
    CompensatedSum acc;
    for (double v : x) acc.add(v);
    return acc.value();
}

double mean(std::span<const double> x) {
    require_nonempty(x, "mean");
    return compensated_sum(x) / static_cast<double>(x.size());
}

double mad(std::span<const double> x) {
    require_nonempty(x, "mad");
    const double mu = mean(x);
    CompensatedSum acc;
    for (double v : x) acc.add(std::abs(mu - v));
    return acc.value() / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    require_nonempty(x, "variance");
    // Two-pass form of (||x||^2 - n mu^2) / n; same quantity without the cancellation.
    const double mu = mean(x);
    CompensatedSum acc;
    for (double v : x) acc.add((v - mu) * (v - mu));
    return std::max(0.0, acc.value() / static_cast<double>(x.size()));
}

double std_dev(std::span<const double> x) { return std::sqrt(variance(x)); }

SummaryStats summary(std::span<const double> x) {
    SummaryStats s;
    s.mean = mean(x);
    s.variance = variance(x);
    s.std = std::sqrt(s.variance);
    s.mad = mad(x);
    if (is_constant(x)) {
        s.variance = s.std = s.mad = 0.0;
    }
    return s;
}

std::vector<double> center(std::span<const double> x) {
    const double mu = mean(x);
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [mu](double v) { return v - mu; });
    return out;
}

double lp_norm(std::span<const double> x, double p) {
    if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0) {
        CompensatedSum acc;
        for (double v : x) acc.add(std::abs(v));
        return acc.value();
    }
    // Scale by the max magnitude so large p neither overflows nor underflows.
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    CompensatedSum acc;
    if (p == 2.0) {
        for (double v : x) {
            const double r = v / scale;
            acc.add(r * r);
        }
        return scale * std::sqrt(acc.value());
    }
    for (double v : x) acc.add(std::pow(std::abs(v) / scale, p));
    return scale * std::pow(acc.value(), 1.0 / p);
}

double inner(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y, "inner");
    CompensatedSum acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc.add(x[i] * y[i]);
    return acc.value();
}

double pearson(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y, "pearson");
    require_nonempty(x, "pearson");
    if (is_constant(x) || is_constant(y)) {
        throw UndefinedError("pearson: correlation undefined for a constant vector");
    }
    const auto xc = center(x);
    const auto yc = center(y);
    const double r = inner(xc, yc) / (lp_norm(xc, 2.0) * lp_norm(yc, 2.0));
    return std::clamp(r, -1.0, 1.0);
}

double median(std::span<const double> y) {
    require_nonempty(y, "median");
    std::vector<double> v(y.begin(), y.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return lower + (upper - lower) / 2.0;
}

double lp_mean(std::span<const double> y, double p) {
    if (!(p >= 1.0)) throw InvalidInput("lp_mean: p must be >= 1");
    require_nonempty(y, "lp_mean");
    if (p == 1.0) return median(y);
    if (p == 2.0) return mean(y);
    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (std::isinf(p)) return lo + (hi - lo) / 2.0;
    if (lo == hi) return lo;

    // d/dtheta sum |theta - y_i|^p is increasing in theta for p > 1.
    auto slope = [&](double theta) {
        CompensatedSum acc;
        for (double v : y) {
            const double d = theta - v;
            acc.add(sign(d) * std::pow(std::abs(d), p - 1.0));
        }
        return acc.value();
    };
    while (hi - lo > 1e-10) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        if (slope(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return lo + (hi - lo) / 2.0;
}

double sign(double x) noexcept {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return -1.0;
    return 0.0;
}

bool is_constant(std::span<const double> x) noexcept {
    return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

}  // namespace agreeloss
