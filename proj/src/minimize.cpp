#include "agreeloss/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "agreeloss/errors.hpp"

namespace agreeloss {

void MinimizerConfig::validate() const {
    if (max_iterations < 1) throw InvalidInput("MinimizerConfig: max_iterations must be >= 1");
    if (!(x_tolerance > 0.0) || !(f_tolerance > 0.0)) {
        throw InvalidInput("MinimizerConfig: tolerances must be positive");
    }
    if (!(initial_simplex_scale > 0.0)) {
        throw InvalidInput("MinimizerConfig: initial_simplex_scale must be positive");
    }
    if (restarts < 0) throw InvalidInput("MinimizerConfig: restarts must be >= 0");
}

namespace {

using Point = std::vector<double>;

class SimplexRun {
public:
    SimplexRun(const Objective& objective, const MinimizerConfig& config, int& evaluations)
        : objective_(objective), config_(config), evaluations_(evaluations) {}

    // Returns the number of iterations used; throws ConvergenceError on budget exhaustion.
    int run(Point& best, double& best_value) {
        const std::size_t dim = best.size();
        vertices_.assign(dim + 1, best);
        values_.assign(dim + 1, best_value);
        for (std::size_t i = 0; i < dim; ++i) {
            const double magnitude = std::abs(best[i]);
            const double step = magnitude > 0.0 ? config_.initial_simplex_scale * magnitude
                                                : config_.initial_simplex_scale;
            vertices_[i + 1][i] += step;
            values_[i + 1] = eval(vertices_[i + 1]);
        }

        std::vector<std::size_t> order(dim + 1);
        int iteration = 0;
        for (;; ++iteration) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
            const std::size_t lo = order.front();
            const std::size_t hi = order.back();
            const std::size_t second_hi = order[dim - (dim > 0 ? 1 : 0)];

            if (converged(lo)) break;
            if (iteration >= config_.max_iterations) {
                throw ConvergenceError("minimize: no convergence after " +
                                           std::to_string(config_.max_iterations) + " iterations",
                                       vertices_[lo], values_[lo]);
            }

            Point centroid(dim, 0.0);
            for (std::size_t v = 0; v <= dim; ++v) {
                if (v == hi) continue;
                for (std::size_t i = 0; i < dim; ++i) centroid[i] += vertices_[v][i];
            }
            for (double& c : centroid) c /= static_cast<double>(dim);

            const Point reflected = along(centroid, vertices_[hi], -1.0);
            const double f_reflected = eval(reflected);

            if (f_reflected < values_[lo]) {
                const Point expanded = along(centroid, vertices_[hi], -2.0);
                const double f_expanded = eval(expanded);
                if (f_expanded < f_reflected) {
                    replace(hi, expanded, f_expanded);
                } else {
                    replace(hi, reflected, f_reflected);
                }
                continue;
            }
            if (f_reflected < values_[second_hi]) {
                replace(hi, reflected, f_reflected);
                continue;
            }
            if (f_reflected < values_[hi]) {
                const Point outside = along(centroid, vertices_[hi], -0.5);
                const double f_outside = eval(outside);
                if (f_outside <= f_reflected) {
                    replace(hi, outside, f_outside);
                    continue;
                }
            } else {
                const Point inside = along(centroid, vertices_[hi], 0.5);
                const double f_inside = eval(inside);
                if (f_inside < values_[hi]) {
                    replace(hi, inside, f_inside);
                    continue;
                }
            }
            // Shrink toward the best vertex.
            for (std::size_t v = 0; v <= dim; ++v) {
                if (v == lo) continue;
                for (std::size_t i = 0; i < dim; ++i) {
                    vertices_[v][i] = vertices_[lo][i] + 0.5 * (vertices_[v][i] - vertices_[lo][i]);
                }
                values_[v] = eval(vertices_[v]);
            }
        }

        const auto lo = static_cast<std::size_t>(
            std::min_element(values_.begin(), values_.end()) - values_.begin());
        best = vertices_[lo];
        best_value = values_[lo];
        return iteration;
    }

private:
    double eval(const Point& x) {
        ++evaluations_;
        const double f = objective_(x);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    }

    // centroid + t * (vertex - centroid)
    static Point along(const Point& centroid, const Point& vertex, double t) {
        Point out(centroid.size());
        for (std::size_t i = 0; i < centroid.size(); ++i) {
            out[i] = centroid[i] + t * (vertex[i] - centroid[i]);
        }
        return out;
    }

    void replace(std::size_t v, const Point& x, double f) {
        vertices_[v] = x;
        values_[v] = f;
    }

    bool converged(std::size_t lo) const {
        const Point& best = vertices_[lo];
        double x_scale = 1.0;
        for (double b : best) x_scale = std::max(x_scale, 1.0 + std::abs(b));
        double x_spread = 0.0;
        double f_spread = 0.0;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            for (std::size_t i = 0; i < best.size(); ++i) {
                x_spread = std::max(x_spread, std::abs(vertices_[v][i] - best[i]));
            }
            f_spread = std::max(f_spread, std::abs(values_[v] - values_[lo]));
        }
        if (!std::isfinite(f_spread)) return false;
        return x_spread <= config_.x_tolerance * x_scale &&
               f_spread <= config_.f_tolerance * (1.0 + std::abs(values_[lo]));
    }

    const Objective& objective_;
    const MinimizerConfig& config_;
    int& evaluations_;
    std::vector<Point> vertices_;
    std::vector<double> values_;
};

}  // namespace

MinimizeResult minimize(const Objective& objective, std::span<const double> start,
                        const MinimizerConfig& config) {
    config.validate();
    if (start.empty()) throw InvalidInput("minimize: empty start point");

    MinimizeResult result;
    result.point.assign(start.begin(), start.end());
    result.value = objective(result.point);
    result.evaluations = 1;
    if (!std::isfinite(result.value)) throw InvalidInput("minimize: objective is not finite at the start point");

    SimplexRun simplex(objective, config, result.evaluations);
    for (int round = 0; round <= config.restarts; ++round) {
        Point candidate = result.point;
        double candidate_value = result.value;
        result.iterations += simplex.run(candidate, candidate_value);
        if (candidate_value <= result.value) {
            result.point = std::move(candidate);
            result.value = candidate_value;
        }
    }
    return result;
}

}  // namespace agreeloss
