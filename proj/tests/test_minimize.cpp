#include <doctest.h>

#include <cmath>

#include "agreeloss/errors.hpp"
#include "agreeloss/estimators.hpp"
#include "agreeloss/minimize.hpp"
#include "oracles.hpp"

using namespace agreeloss;

TEST_CASE("quadratic bowl") {
    const Objective bowl = [](std::span<const double> p) {
        return (p[0] - 3) * (p[0] - 3) + (p[1] + 1) * (p[1] + 1);
    };
    const std::vector<double> start{0, 0};
    const auto r = minimize(bowl, start);
    CHECK(std::abs(r.point[0] - 3) <= 1e-6);
    CHECK(std::abs(r.point[1] + 1) <= 1e-6);
    CHECK(r.value <= 1e-12);
}

TEST_CASE("Rosenbrock valley") {
    const Objective rosen = [](std::span<const double> p) {
        return 100 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1 - p[0], 2);
    };
    const std::vector<double> start{-1.2, 1.0};
    const auto r = minimize(rosen, start);
    CHECK(std::abs(r.point[0] - 1) <= 1e-6);
    CHECK(std::abs(r.point[1] - 1) <= 1e-6);
}

TEST_CASE("constant-loss profiles recover the closed-form minima") {
    oracle::Gen gen(17);
    const auto y = gen.nonconstant(30);
    const double mu = static_cast<double>(oracle::mean(y));
    const double sd = std::sqrt(static_cast<double>(oracle::variance(y)));

    const Objective nr2 = [&](std::span<const double> t) { return lnr2_constant_profile(t[0], y); };
    const std::vector<double> up{mu + 0.1};
    CHECK(std::abs(minimize(nr2, up).point[0] - (mu + sd)) <= 1e-6);

    const Objective lw = [&](std::span<const double> t) { return lw_constant_profile(t[0], y); };
    const std::vector<double> down{mu - 0.1};
    CHECK(std::abs(minimize(lw, down).point[0] - (mu - sd)) <= 1e-6);
}

TEST_CASE("deterministic for identical inputs") {
    const Objective f = [](std::span<const double> p) {
        return std::abs(p[0] - 0.3) + std::pow(p[1] * p[0] - 2, 2) + 0.1 * std::sin(5 * p[1]);
    };
    const std::vector<double> start{1.0, 1.0};
    const auto a = minimize(f, start);
    const auto b = minimize(f, start);
    CHECK(a.point == b.point);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("error paths") {
    const Objective nan_at_start = [](std::span<const double> p) { return p[0] == 0.0 ? std::nan("") : p[0] * p[0]; };
    const std::vector<double> zero{0.0};
    CHECK_THROWS_AS(minimize(nan_at_start, zero), InvalidInput);

    MinimizerConfig tiny;
    tiny.max_iterations = 3;
    const Objective bowl = [](std::span<const double> p) { return (p[0] - 3) * (p[0] - 3) + p[1] * p[1]; };
    const std::vector<double> start{0.0, 0.0};
    try {
        minimize(bowl, start, tiny);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_point().size() == 2);
        CHECK(e.best_value() < 9.0);
    }

    MinimizerConfig bad;
    bad.x_tolerance = 0.0;
    CHECK_THROWS_AS(minimize(bowl, start, bad), InvalidInput);
}

TEST_CASE("non-finite values away from the start are treated as +inf") {
    const Objective walled = [](std::span<const double> p) {
        return p[0] < 0.5 ? std::numeric_limits<double>::quiet_NaN() : (p[0] - 1) * (p[0] - 1);
    };
    const std::vector<double> start{2.0};
    CHECK(std::abs(minimize(walled, start).point[0] - 1.0) <= 1e-6);
}
