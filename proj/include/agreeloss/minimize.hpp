#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace agreeloss {

struct MinimizerConfig {
    int max_iterations = 10000;
    double x_tolerance = 1e-10;
    double f_tolerance = 1e-10;
    /// Initial simplex edge as a fraction of each start coordinate's magnitude
    /// (used as an absolute step when the coordinate is zero).
    double initial_simplex_scale = 0.1;
    /// Extra simplex rebuilds around the best point after the first convergence.
    int restarts = 2;

    /// Throws InvalidInput when a field is out of range.
    void validate() const;
};

struct MinimizeResult {
    std::vector<double> point;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) followed by `restarts` rebuilds of the simplex at the incumbent.
///
/// A non-finite objective value anywhere except the start is treated as +inf.
/// Converged when both the vertex spread and the value spread fall below the
/// tolerances (scaled by 1 + magnitude). Deterministic for identical inputs.
///
/// Throws InvalidInput if the objective is not finite at `start`, and
/// ConvergenceError (carrying the best vertex) if any simplex run needs more
/// than `max_iterations` iterations.
MinimizeResult minimize(const Objective& objective, std::span<const double> start,
                        const MinimizerConfig& config = {});

}  // namespace agreeloss
