#pragma once

#include <span>
#include <string>

#include "agreeloss/minimize.hpp"
#include "agreeloss/vector_stats.hpp"

namespace agreeloss {

/// Both minimizers of a constant-prediction agreement loss, mean(y) +/- std(y).
struct ConstantFitResult {
    double theta_plus = 0.0;
    double theta_minus = 0.0;
    double min_loss = 0.0;
    std::string loss_name;

    double upper() const noexcept { return theta_plus; }
    double lower() const noexcept { return theta_minus; }
};

enum class FitMethod { closed_form, numerical };

struct LinearFitResult {
    double slope = 0.0;
    double intercept = 0.0;
    /// Training loss of slope * x + intercept under the fitting loss (MSE for OLS).
    double achieved_loss = 0.0;
    FitMethod method = FitMethod::closed_form;
    /// Set when the closed form has no strict minimum (zero correlation).
    bool degenerate = false;
};

std::string to_string(FitMethod method);

/// Throws UndefinedError for constant y.
ConstantFitResult fit_constant_lw(std::span<const double> y);
ConstantFitResult fit_constant_lnr2(std::span<const double> y);

/// l_w(theta * 1, y) in closed form:
///   (u^2 + s^2) / (u^2 + s^2 + 2 |u| mad),  u = theta - mean(y), s = std(y).
double lw_constant_profile(double theta, std::span<const double> y);

/// l_nr2(theta * 1, y) in closed form: (u^2 + s^2) / (|u| + s)^2.
double lnr2_constant_profile(double theta, std::span<const double> y);

// Derivatives of the profiles with respect to theta. Both profiles have a kink
// at theta == mean(y), where these throw NonDifferentiableError.

double lw_constant_derivative(double theta, std::span<const double> y);
double lw_constant_second_derivative(double theta, std::span<const double> y);
double lnr2_constant_derivative(double theta, std::span<const double> y);
double lnr2_constant_second_derivative(double theta, std::span<const double> y);

struct OneSidedLimits {
    double from_left = 0.0;
    double from_right = 0.0;
};

/// Limits of the first derivative as theta -> mean(y) from either side:
/// +/- 2 mad / s^2 for l_w and +/- 2 / s for l_nr2.
OneSidedLimits lw_derivative_limits_at_mean(std::span<const double> y);
OneSidedLimits lnr2_derivative_limits_at_mean(std::span<const double> y);

/// Ordinary least squares. Throws UndefinedError for constant x.
LinearFitResult fit_linear_ols(std::span<const double> x, std::span<const double> y);

/// Closed-form l_nr2 line: slope sign(rho) * ||y_c|| / ||x_c||, achieved loss
/// (1 - |rho|) / 2. Zero correlation yields slope 0, intercept mean(y) and
/// `degenerate` set.
LinearFitResult fit_linear_lnr2(std::span<const double> x, std::span<const double> y);

/// Numerical l_w line, Nelder-Mead warm-started from both the OLS and the l_nr2
/// solutions; the better result is kept.
LinearFitResult fit_linear_lw(std::span<const double> x, std::span<const double> y,
                              const MinimizerConfig& config = {});

/// l_w or l_nr2 of slope * x + intercept against y.
double lw_linear_loss(std::span<const double> x, std::span<const double> y, double slope, double intercept);
double lnr2_linear_loss(std::span<const double> x, std::span<const double> y, double slope, double intercept);

}  // namespace agreeloss
