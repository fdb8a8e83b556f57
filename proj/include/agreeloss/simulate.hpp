#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "agreeloss/minimize.hpp"
#include "agreeloss/vector_stats.hpp"

namespace agreeloss {

/// Counter-based SplitMix64 stream.
///
/// The generator state is `key + counter * 0x9E3779B97F4A7C15` with
///   key = mix(seed ^ mix(stream_id + 0x9E3779B97F4A7C15))
/// and the k-th output (k = 1, 2, ...) is mix(key + k * 0x9E3779B97F4A7C15),
/// where mix is the SplitMix64 finalizer. Identical (seed, stream_id) always
/// give identical sequences.
class RngState {
public:
    explicit RngState(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on (0, 1]: ((next_u64() >> 11) + 1) * 2^-53.
    double next_uniform() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct GaussianSpec {
    double mean = 0.0;
    double sd = 1.0;
};

/// Density y^(a-1) exp(-y / scale) / (scale^a Gamma(a)); mean scale * shape.
struct GammaSpec {
    double scale = 1.0;
    double shape = 1.0;
};

/// exp of a Gaussian(meanlog, sdlog) variate.
struct LognormalSpec {
    double meanlog = 0.0;
    double sdlog = 1.0;
};

using DistributionSpec = std::variant<GaussianSpec, GammaSpec, LognormalSpec>;

/// Throws InvalidInput for non-positive scale/shape/sd parameters.
void validate(const DistributionSpec& spec);

/// One standard normal via Box-Muller (cosine branch); consumes two uniforms.
double standard_normal(RngState& rng);

/// Marsaglia-Tsang; shape < 1 uses the Gamma(shape + 1) * U^(1/shape) boost.
double gamma_variate(const GammaSpec& spec, RngState& rng);

/// n IID draws. Throws InvalidInput for n == 0 or an invalid spec.
RealVector sample(const DistributionSpec& spec, std::size_t n, RngState& rng);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct ModelRow {
    std::string name;
    NamedValues parameters;
    NamedValues metrics;

    /// Throws InvalidInput for an unknown metric name.
    double metric(std::string_view metric_name) const;
    double parameter(std::string_view parameter_name) const;
};

struct ExperimentMetadata {
    std::string kind;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::size_t n_total = 0;
    std::size_t split = 0;
    NamedValues true_parameters;
};

/// Test-set scores of three fitted models. Metric names: mse, one_minus_nse,
/// lnr2, lw, vbar_mean.
struct ExperimentReport {
    ExperimentMetadata metadata;
    std::vector<ModelRow> models;
};

/// Gaussian climatology experiment. Trains the constants mean, mean - sd and
/// mean + sd on the first `split` draws and scores them on the rest.
/// Throws InvalidInput unless 1 <= split < n_total (and both parts have >= 2 values).
ExperimentReport run_climatology_experiment(std::size_t n_total, std::size_t split,
                                            const GaussianSpec& spec, RngState rng);

inline constexpr double kLinearIntercept = 2.1;
inline constexpr GammaSpec kLinearPredictor{1.8, 0.4};
inline constexpr LognormalSpec kLinearNoise{0.0, 2.0};

/// y = 2.1 + a1 x + e with x ~ Gamma(scale 1.8, shape 0.4), e ~ Lognormal(0, 2).
/// All n_total predictor draws come first, then all noise draws. Fits OLS,
/// closed-form l_nr2 and numerical l_w lines on the first `split` rows and
/// scores them on the rest.
ExperimentReport run_linear_experiment(double a1, std::size_t n_total, std::size_t split, RngState rng,
                                       const MinimizerConfig& config = {});

}  // namespace agreeloss
