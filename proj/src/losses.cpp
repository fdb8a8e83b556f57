#include "agreeloss/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agreeloss/errors.hpp"

namespace agreeloss {

namespace {

void require_agreement_defined(const SeriesPair& pair, const char* name) {
    if (!pair.agreement_defined()) {
        throw UndefinedError(std::string(name) + ": undefined for constant y with z == y");
    }
}

double checked_ratio(double num, double den, const char* name) {
    if (!(den > 0.0)) throw UndefinedError(std::string(name) + ": zero denominator");
    return std::clamp(num / den, 0.0, 1.0);
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::vector<double> offset(std::span<const double> a, double c) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - c;
    return out;
}

}  // namespace

SeriesPair::SeriesPair(RealVector z, RealVector y) : z_(std::move(z)), y_(std::move(y)) {
    if (z_.size() != y_.size()) {
        throw DimensionError("SeriesPair: z has " + std::to_string(z_.size()) + " values, y has " +
                             std::to_string(y_.size()));
    }
    y_nonconstant_ = !is_constant(y_);
    z_differs_ = z_ != y_;
}

SeriesPair::SeriesPair(std::vector<double> z, std::vector<double> y)
    : SeriesPair(RealVector(std::move(z)), RealVector(std::move(y))) {}

SeriesPair::SeriesPair(std::initializer_list<double> z, std::initializer_list<double> y)
    : SeriesPair(RealVector(z), RealVector(y)) {}

void MetricReport::add(std::string name, double value, Orientation orientation, bool agreement_family) {
    if (find(name) != nullptr) throw InvalidInput("MetricReport: duplicate metric '" + name + "'");
    if (agreement_family && !(value >= 0.0 && value <= 1.0)) {
        throw InvalidInput("MetricReport: agreement metric '" + name + "' outside [0, 1]");
    }
    entries_.push_back({std::move(name), value, orientation, agreement_family});
}

void MetricReport::add_undefined(std::string name, Orientation orientation, bool agreement_family) {
    if (find(name) != nullptr) throw InvalidInput("MetricReport: duplicate metric '" + name + "'");
    entries_.push_back({std::move(name), std::numeric_limits<double>::quiet_NaN(), orientation, agreement_family});
}

const MetricReport::Entry* MetricReport::find(std::string_view name) const noexcept {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const Entry& e) { return e.name == name; });
    return it == entries_.end() ? nullptr : &*it;
}

double mae(const SeriesPair& pair) {
    const auto e = difference(pair.z(), pair.y());
    return lp_norm(e, 1.0) / static_cast<double>(e.size());
}

double mse(const SeriesPair& pair) {
    const auto e = difference(pair.z(), pair.y());
    return inner(e, e) / static_cast<double>(e.size());
}

double nse(const SeriesPair& pair) {
    if (!pair.y_nonconstant()) throw UndefinedError("nse: constant observations");
    // MSE(mean(y), y) is the population variance of y.
    return skill_score(mse(pair), variance(pair.y()));
}

double skill_score(double loss_avg_z, double loss_avg_ref) {
    if (loss_avg_ref == 0.0) throw UndefinedError("skill_score: reference loss is zero");
    if (!(loss_avg_ref > 0.0)) throw InvalidInput("skill_score: reference loss must be positive");
    return 1.0 - loss_avg_z / loss_avg_ref;
}

double l_w(const SeriesPair& pair) {
    require_agreement_defined(pair, "l_w");
    const auto& z = pair.z();
    const auto& y = pair.y();
    const double mu = mean(y);
    std::vector<double> err(y.size());
    std::vector<double> potential(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        err[i] = z[i] - y[i];
        potential[i] = std::abs(z[i] - mu) + std::abs(mu - y[i]);
    }
    return checked_ratio(inner(err, err), inner(potential, potential), "l_w");
}

double l_nr2(const SeriesPair& pair) {
    require_agreement_defined(pair, "l_nr2");
    const double mu = mean(pair.y());
    const auto err = difference(pair.z(), pair.y());
    const double den = lp_norm(offset(pair.z(), mu), 2.0) + lp_norm(offset(pair.y(), mu), 2.0);
    if (!(den > 0.0)) throw UndefinedError("l_nr2: zero denominator");
    const double r = lp_norm(err, 2.0) / den;
    return std::clamp(r * r, 0.0, 1.0);
}

double l_lmc(const SeriesPair& pair, double benchmark) {
    const auto err = difference(pair.z(), pair.y());
    const double den = lp_norm(offset(pair.z(), benchmark), 1.0) + lp_norm(offset(pair.y(), benchmark), 1.0);
    return checked_ratio(lp_norm(err, 1.0), den, "l_lmc");
}

double l_lmc_mean(const SeriesPair& pair) { return l_lmc(pair, mean(pair.y())); }

double l_lmc_median(const SeriesPair& pair) { return l_lmc(pair, median(pair.y())); }

double l_kbb(const SeriesPair& pair, double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw InvalidInput("l_kbb: p must be finite and >= 1");
    require_agreement_defined(pair, "l_kbb");
    if (p == 2.0) return l_w(pair);
    const auto& z = pair.z();
    const auto& y = pair.y();
    const double mu = mean(y);
    std::vector<double> err(y.size());
    std::vector<double> potential(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        err[i] = z[i] - y[i];
        potential[i] = std::abs(z[i] - mu) + std::abs(mu - y[i]);
    }
    const double den = lp_norm(potential, p);
    if (!(den > 0.0)) throw UndefinedError("l_kbb: zero denominator");
    return std::clamp(std::pow(lp_norm(err, p) / den, p), 0.0, 1.0);
}

double l_nrp(const SeriesPair& pair, double p) {
    if (!(p >= 1.0)) throw InvalidInput("l_nrp: p must be >= 1");
    require_agreement_defined(pair, "l_nrp");
    if (p == 2.0) return l_nr2(pair);
    const double m = lp_mean(pair.y(), p);
    const auto err = difference(pair.z(), pair.y());
    const double den = lp_norm(offset(pair.z(), m), p) + lp_norm(offset(pair.y(), m), p);
    if (!(den > 0.0)) throw UndefinedError("l_nrp: zero denominator");
    const double r = std::clamp(lp_norm(err, p) / den, 0.0, 1.0);
    return std::isinf(p) ? r : std::pow(r, p);
}

double v_mean_avg(const SeriesPair& pair) {
    const auto err = difference(pair.z(), pair.y());
    return mean(err);
}

double v_median_avg(const SeriesPair& pair) {
    const auto& z = pair.z();
    const auto& y = pair.y();
    std::size_t at_or_above = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (z[i] - y[i] >= 0.0) ++at_or_above;
    }
    return static_cast<double>(at_or_above) / static_cast<double>(y.size()) - 0.5;
}

}  // namespace agreeloss
