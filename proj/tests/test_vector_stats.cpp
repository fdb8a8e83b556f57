#include <doctest.h>

#include <cmath>

#include "agreeloss/errors.hpp"
#include "agreeloss/vector_stats.hpp"
#include "oracles.hpp"

using namespace agreeloss;
using doctest::Approx;

namespace {

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("RealVector rejects empty and non-finite input") {
    CHECK_THROWS_AS(RealVector(std::vector<double>{}), InvalidInput);
    CHECK_THROWS_AS(RealVector({1.0, std::nan("")}), InvalidInput);
    CHECK_THROWS_AS(RealVector({1.0, kInfinity}), InvalidInput);
    const RealVector v{1.0, 2.0};
    CHECK(v.size() == 2);
}

TEST_CASE("mean") {
    CHECK(mean(std::vector<double>{0, 2}) == 1.0);
    CHECK(mean(std::vector<double>{1, 2, 3}) == 2.0);
    CHECK(mean(std::vector<double>{5}) == 5.0);
    CHECK_THROWS_AS(mean(std::vector<double>{}), InvalidInput);
}

TEST_CASE("mad") {
    CHECK(mad(std::vector<double>{0, 2}) == 1.0);
    CHECK(mad(std::vector<double>{1, 2, 3}) == Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(mad(std::vector<double>{4.5, 4.5, 4.5}) == 0.0);
    CHECK_THROWS_AS(mad(std::vector<double>{}), InvalidInput);
}

TEST_CASE("std_dev uses the population divisor") {
    CHECK(std_dev(std::vector<double>{0, 2}) == 1.0);
    CHECK(std_dev(std::vector<double>{1, 2, 3}) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(std_dev(std::vector<double>{-7, -7, -7}) == 0.0);
    CHECK_THROWS_AS(std_dev(std::vector<double>{}), InvalidInput);
}

TEST_CASE("summary is all zero exactly for constant vectors") {
    const auto s = summary(std::vector<double>{0.1, 0.1, 0.1});
    CHECK(s.std == 0.0);
    CHECK(s.variance == 0.0);
    CHECK(s.mad == 0.0);
    const auto t = summary(std::vector<double>{1, 2, 3, 10});
    CHECK(t.variance == Approx(t.std * t.std).epsilon(1e-15));
    CHECK(t.mad <= t.std);
}

TEST_CASE("center") {
    CHECK(center(std::vector<double>{1, 2, 3}) == std::vector<double>{-1, 0, 1});
    CHECK(center(std::vector<double>{0, 2}) == std::vector<double>{-1, 1});
    CHECK(center(std::vector<double>{3, 3}) == std::vector<double>{0, 0});
}

TEST_CASE("lp_norm") {
    CHECK(lp_norm(std::vector<double>{3, 4}, 2) == 5.0);
    CHECK(lp_norm(std::vector<double>{3, -4}, 1) == 7.0);
    CHECK(lp_norm(std::vector<double>{3, -4}, kInfinity) == 4.0);
    CHECK(lp_norm(std::vector<double>{1, 1}, 3) == Approx(std::cbrt(2.0)));
    CHECK_THROWS_AS(lp_norm(std::vector<double>{1}, 0.5), InvalidInput);
    CHECK(lp_norm(std::vector<double>{1e200, 1e200}, 2) == Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("inner") {
    CHECK(inner(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
    CHECK(inner(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 11.0);
    CHECK(inner(std::vector<double>{1.5}, std::vector<double>{1.5}) == 2.25);
    CHECK_THROWS_AS(inner(std::vector<double>{1, 2}, std::vector<double>{1}), DimensionError);
}

TEST_CASE("pearson") {
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == Approx(1.0));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{-1, -2, -3}) == Approx(-1.0));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}) == Approx(0.5));
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 3, 2}), UndefinedError);
}

TEST_CASE("lp_mean") {
    const std::vector<double> y{1, 2, 100};
    CHECK(lp_mean(y, 1) == 2.0);
    CHECK(lp_mean(y, 2) == Approx(103.0 / 3.0).epsilon(1e-15));
    CHECK(lp_mean(std::vector<double>{0, 2}, 1) == 1.0);
    CHECK(lp_mean(std::vector<double>{0, 1, 5, 9}, kInfinity) == 4.5);
    CHECK_THROWS_AS(lp_mean(y, 0.9), InvalidInput);

    oracle::Gen gen(7);
    for (double p : {1.5, 3.0, 4.5}) {
        const auto v = gen.normals(25, 3, 2);
        CHECK(std::abs(lp_mean(v, p) - oracle::lp_mean(v, p)) <= 1e-9);
    }
}

TEST_CASE("sign") {
    CHECK(sign(3.2) == 1.0);
    CHECK(sign(-0.1) == -1.0);
    CHECK(sign(0.0) == 0.0);
}

TEST_CASE("vector identities on random data") {
    oracle::Gen gen(20240601);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = gen.size(2, 300);
        const auto x = gen.nonconstant(n);
        const auto y = gen.nonconstant(n);
        const double nn = static_cast<double>(n);
        const double mu = mean(x);
        const auto xc = center(x);
        const double sq = inner(x, x);

        // Pythagorean split into mean and centred parts.
        CHECK(close_rel(sq, nn * mu * mu + inner(xc, xc), 1e-10));
        // ||mu 1 - x||^2 = n var(x)
        CHECK(close_rel(inner(xc, xc), nn * variance(x), 1e-10));
        CHECK(std::abs(compensated_sum(xc)) <= 1e-10 * std::max(1.0, lp_norm(x, 1)));

        const double l1 = lp_norm(x, 1), l2 = lp_norm(x, 2);
        CHECK(l2 <= l1 * (1 + 1e-12));
        CHECK(l1 <= std::sqrt(nn) * l2 * (1 + 1e-12));
        CHECK(std::abs(inner(x, y)) <= l2 * lp_norm(y, 2) * (1 + 1e-12));
        CHECK(lp_norm(x, kInfinity) <= l2 * (1 + 1e-12));
        CHECK(mad(x) <= std_dev(x) * (1 + 1e-12));

        CHECK(close_rel(mean(x), static_cast<double>(oracle::mean(x)), 1e-12));
        CHECK(close_rel(variance(x), static_cast<double>(oracle::variance(x)), 1e-10));
        CHECK(close_rel(mad(x), static_cast<double>(oracle::mad(x)), 1e-10));

        const double a = gen.uniform(-3, 3), b = gen.uniform(-10, 10);
        const double c = gen.uniform(-3, 3), d = gen.uniform(-10, 10);
        if (std::abs(a) < 1e-3 || std::abs(c) < 1e-3) continue;
        std::vector<double> xa(n), yc(n);
        for (std::size_t i = 0; i < n; ++i) {
            xa[i] = a * x[i] + b;
            yc[i] = c * y[i] + d;
        }
        CHECK(std::abs(pearson(xa, yc) - sign(a * c) * pearson(x, y)) <= 1e-10);
    }
}

TEST_CASE("Cauchy-Schwarz and triangle equality on collinear pairs") {
    oracle::Gen gen(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = gen.nonconstant(gen.size(2, 50));
        const double k = gen.uniform(0.1, 5.0);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = k * x[i];
        CHECK(close_rel(inner(x, y), lp_norm(x, 2) * lp_norm(y, 2), 1e-12));
        std::vector<double> s(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
        CHECK(close_rel(lp_norm(s, 2), lp_norm(x, 2) + lp_norm(y, 2), 1e-12));
        // A non-collinear perturbation makes both inequalities strict.
        y[0] += 1.0;
        y[1] -= 1.0;
        CHECK(std::abs(inner(x, y)) < lp_norm(x, 2) * lp_norm(y, 2));
    }
}

TEST_CASE("compensated sums stay accurate for large n") {
    std::vector<double> x(1000000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1e8 + ((i % 2 == 0) ? 0.1 : -0.1);
    CHECK(mean(x) == Approx(1e8).epsilon(1e-15));
    CHECK(variance(x) == Approx(0.01).epsilon(1e-8));
}
