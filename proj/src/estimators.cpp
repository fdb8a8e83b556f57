#include "agreeloss/estimators.hpp"

#include <array>
#include <cmath>

#include "agreeloss/errors.hpp"
#include "agreeloss/losses.hpp"

namespace agreeloss {

namespace {

struct Moments {
    double mean;
    double std;
    double mad;
};

Moments moments_of_nonconstant(std::span<const double> y, const char* name) {
    if (y.empty()) throw InvalidInput(std::string(name) + ": empty vector");
    if (is_constant(y)) throw UndefinedError(std::string(name) + ": y is constant");
    return {mean(y), std_dev(y), mad(y)};
}

double kink_offset(double theta, double mu, const char* name) {
    const double u = theta - mu;
    if (u == 0.0) {
        throw NonDifferentiableError(std::string(name) + ": profile is not differentiable at theta == mean(y)");
    }
    return u;
}

std::vector<double> line(std::span<const double> x, double slope, double intercept) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = slope * x[i] + intercept;
    return z;
}

void require_design(std::span<const double> x, std::span<const double> y, const char* name) {
    if (x.size() != y.size()) throw DimensionError(std::string(name) + ": x and y lengths differ");
    if (x.empty()) throw InvalidInput(std::string(name) + ": empty input");
    if (is_constant(x)) throw UndefinedError(std::string(name) + ": x is constant (singular design)");
}

}  // namespace

std::string to_string(FitMethod method) {
    return method == FitMethod::closed_form ? "closed_form" : "numerical";
}

ConstantFitResult fit_constant_lw(std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "fit_constant_lw");
    return {m.mean + m.std, m.mean - m.std, m.std / (m.std + m.mad), "lw"};
}

ConstantFitResult fit_constant_lnr2(std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "fit_constant_lnr2");
    return {m.mean + m.std, m.mean - m.std, 0.5, "lnr2"};
}

double lw_constant_profile(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lw_constant_profile");
    const double u = theta - m.mean;
    const double num = u * u + m.std * m.std;
    return num / (num + 2.0 * std::abs(u) * m.mad);
}

double lnr2_constant_profile(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lnr2_constant_profile");
    const double u = theta - m.mean;
    const double den = std::abs(u) + m.std;
    return (u * u + m.std * m.std) / (den * den);
}

double lw_constant_derivative(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lw_constant_derivative");
    const double u = kink_offset(theta, m.mean, "lw_constant_derivative");
    const double s2 = m.std * m.std;
    const double den = u * u + s2 + 2.0 * std::abs(u) * m.mad;
    return 2.0 * m.mad * (u * u - s2) * sign(u) / (den * den);
}

double lw_constant_second_derivative(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lw_constant_second_derivative");
    const double u = kink_offset(theta, m.mean, "lw_constant_second_derivative");
    const double s2 = m.std * m.std;
    const double den = u * u + s2 + 2.0 * std::abs(u) * m.mad;
    return 4.0 * m.mad * (2.0 * m.mad * s2 + u * (3.0 * s2 - u * u) * sign(u)) / (den * den * den);
}

double lnr2_constant_derivative(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lnr2_constant_derivative");
    const double u = kink_offset(theta, m.mean, "lnr2_constant_derivative");
    const double den = m.std + std::abs(u);
    return 2.0 * m.std * (u - sign(u) * m.std) / (den * den * den);
}

double lnr2_constant_second_derivative(double theta, std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lnr2_constant_second_derivative");
    const double u = kink_offset(theta, m.mean, "lnr2_constant_second_derivative");
    const double den = m.std + std::abs(u);
    return 4.0 * m.std * (2.0 * m.std - std::abs(u)) / (den * den * den * den);
}

OneSidedLimits lw_derivative_limits_at_mean(std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lw_derivative_limits_at_mean");
    const double r = 2.0 * m.mad / (m.std * m.std);
    return {r, -r};
}

OneSidedLimits lnr2_derivative_limits_at_mean(std::span<const double> y) {
    const auto m = moments_of_nonconstant(y, "lnr2_derivative_limits_at_mean");
    return {2.0 / m.std, -2.0 / m.std};
}

double lw_linear_loss(std::span<const double> x, std::span<const double> y, double slope, double intercept) {
    return l_w(SeriesPair(line(x, slope, intercept), std::vector<double>(y.begin(), y.end())));
}

double lnr2_linear_loss(std::span<const double> x, std::span<const double> y, double slope, double intercept) {
    return l_nr2(SeriesPair(line(x, slope, intercept), std::vector<double>(y.begin(), y.end())));
}

LinearFitResult fit_linear_ols(std::span<const double> x, std::span<const double> y) {
    require_design(x, y, "fit_linear_ols");
    const auto xc = center(x);
    const auto yc = center(y);
    LinearFitResult fit;
    fit.slope = inner(xc, yc) / inner(xc, xc);
    fit.intercept = mean(y) - fit.slope * mean(x);
    fit.achieved_loss = mse(SeriesPair(line(x, fit.slope, fit.intercept), std::vector<double>(y.begin(), y.end())));
    fit.method = FitMethod::closed_form;
    return fit;
}

LinearFitResult fit_linear_lnr2(std::span<const double> x, std::span<const double> y) {
    require_design(x, y, "fit_linear_lnr2");
    if (is_constant(y)) throw UndefinedError("fit_linear_lnr2: y is constant");
    const double rho = pearson(x, y);
    const double magnitude = lp_norm(center(y), 2.0) / lp_norm(center(x), 2.0);
    LinearFitResult fit;
    fit.slope = sign(rho) * magnitude;
    fit.intercept = mean(y) - fit.slope * mean(x);
    fit.achieved_loss = (1.0 - std::abs(rho)) / 2.0;
    fit.method = FitMethod::closed_form;
    fit.degenerate = rho == 0.0;
    return fit;
}

LinearFitResult fit_linear_lw(std::span<const double> x, std::span<const double> y,
                              const MinimizerConfig& config) {
    require_design(x, y, "fit_linear_lw");
    if (is_constant(y)) throw UndefinedError("fit_linear_lw: y is constant");

    const std::vector<double> yv(y.begin(), y.end());
    const Objective objective = [&](std::span<const double> p) {
        return lw_linear_loss(x, yv, p[0], p[1]);
    };

    const auto ols = fit_linear_ols(x, y);
    const auto nr2 = fit_linear_lnr2(x, y);
    LinearFitResult best;
    best.method = FitMethod::numerical;
    best.achieved_loss = std::numeric_limits<double>::infinity();
    for (const auto& warm : {ols, nr2}) {
        const std::array<double, 2> start{warm.slope, warm.intercept};
        const auto r = minimize(objective, start, config);
        if (r.value < best.achieved_loss) {
            best.slope = r.point[0];
            best.intercept = r.point[1];
            best.achieved_loss = r.value;
        }
    }
    return best;
}

}  // namespace agreeloss
