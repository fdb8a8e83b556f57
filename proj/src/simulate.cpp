#include "agreeloss/simulate.hpp"

#include <cmath>
#include <numbers>

#include "agreeloss/errors.hpp"
#include "agreeloss/estimators.hpp"
#include "agreeloss/losses.hpp"

namespace agreeloss {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " must be positive and finite");
}

void require_split(std::size_t n_total, std::size_t split) {
    if (split < 2 || split + 2 > n_total) {
        throw InvalidInput("split must leave at least two values on each side (split=" + std::to_string(split) +
                           ", n_total=" + std::to_string(n_total) + ")");
    }
}

std::vector<double> slice(std::span<const double> v, std::size_t first, std::size_t last) {
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(last)};
}

NamedValues score(const std::vector<double>& z, const std::vector<double>& y) {
    const SeriesPair pair(z, y);
    return {
        {"mse", mse(pair)},
        {"one_minus_nse", 1.0 - nse(pair)},
        {"lnr2", l_nr2(pair)},
        {"lw", l_w(pair)},
        {"vbar_mean", v_mean_avg(pair)},
    };
}

double lookup(const NamedValues& values, std::string_view name, const char* what) {
    for (const auto& [key, value] : values) {
        if (key == name) return value;
    }
    throw InvalidInput(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

}  // namespace

RngState::RngState(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(mix(seed ^ mix(stream_id + kGolden))) {}

std::uint64_t RngState::next_u64() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
}

double RngState::next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

void validate(const DistributionSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianSpec>) {
                if (!std::isfinite(s.mean)) throw InvalidInput("gaussian mean must be finite");
                require_positive(s.sd, "gaussian sd");
            } else if constexpr (std::is_same_v<T, GammaSpec>) {
                require_positive(s.scale, "gamma scale");
                require_positive(s.shape, "gamma shape");
            } else {
                if (!std::isfinite(s.meanlog)) throw InvalidInput("lognormal meanlog must be finite");
                require_positive(s.sdlog, "lognormal sdlog");
            }
        },
        spec);
}

double standard_normal(RngState& rng) {
    const double u1 = rng.next_uniform();
    const double u2 = rng.next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_variate(const GammaSpec& spec, RngState& rng) {
    if (spec.shape < 1.0) {
        const double boosted = gamma_variate({spec.scale, spec.shape + 1.0}, rng);
        return boosted * std::pow(rng.next_uniform(), 1.0 / spec.shape);
    }
    const double d = spec.shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * spec.scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * spec.scale;
    }
}

RealVector sample(const DistributionSpec& spec, std::size_t n, RngState& rng) {
    if (n == 0) throw InvalidInput("sample: n must be >= 1");
    validate(spec);
    std::vector<double> out(n);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            for (double& v : out) {
                if constexpr (std::is_same_v<T, GaussianSpec>) {
                    v = s.mean + s.sd * standard_normal(rng);
                } else if constexpr (std::is_same_v<T, GammaSpec>) {
                    v = gamma_variate(s, rng);
                } else {
                    v = std::exp(s.meanlog + s.sdlog * standard_normal(rng));
                }
            }
        },
        spec);
    return RealVector(std::move(out));
}

double ModelRow::metric(std::string_view metric_name) const { return lookup(metrics, metric_name, "metric"); }

double ModelRow::parameter(std::string_view parameter_name) const {
    return lookup(parameters, parameter_name, "parameter");
}

ExperimentReport run_climatology_experiment(std::size_t n_total, std::size_t split, const GaussianSpec& spec,
                                            RngState rng) {
    require_split(n_total, split);
    ExperimentReport report;
    report.metadata = {"climatology", rng.seed(), rng.stream_id(), n_total, split,
                       {{"mean", spec.mean}, {"sd", spec.sd}}};

    const RealVector draws = sample(spec, n_total, rng);
    const auto train = slice(draws, 0, split);
    const auto test = slice(draws, split, n_total);
    const double mu = mean(train);
    const double sd = std_dev(train);

    const std::pair<const char*, double> models[] = {
        {"model_1_mean", mu}, {"model_2_mean_minus_sd", mu - sd}, {"model_3_mean_plus_sd", mu + sd}};
    for (const auto& [name, theta] : models) {
        const std::vector<double> z(test.size(), theta);
        report.models.push_back({name, {{"theta", theta}}, score(z, test)});
    }
    return report;
}

ExperimentReport run_linear_experiment(double a1, std::size_t n_total, std::size_t split, RngState rng,
                                       const MinimizerConfig& config) {
    require_split(n_total, split);
    if (!std::isfinite(a1)) throw InvalidInput("a1 must be finite");
    ExperimentReport report;
    report.metadata = {"linear",
                       rng.seed(),
                       rng.stream_id(),
                       n_total,
                       split,
                       {{"a0", kLinearIntercept},
                        {"a1", a1},
                        {"x_gamma_scale", kLinearPredictor.scale},
                        {"x_gamma_shape", kLinearPredictor.shape},
                        {"noise_meanlog", kLinearNoise.meanlog},
                        {"noise_sdlog", kLinearNoise.sdlog}}};

    const RealVector x = sample(kLinearPredictor, n_total, rng);
    const RealVector noise = sample(kLinearNoise, n_total, rng);
    std::vector<double> y(n_total);
    for (std::size_t i = 0; i < n_total; ++i) y[i] = kLinearIntercept + a1 * x[i] + noise[i];

    const auto x_train = slice(x, 0, split);
    const auto y_train = slice(y, 0, split);
    const auto x_test = slice(x, split, n_total);
    const auto y_test = slice(y, split, n_total);

    const std::pair<const char*, LinearFitResult> fits[] = {
        {"model_1_se", fit_linear_ols(x_train, y_train)},
        {"model_2_lnr2", fit_linear_lnr2(x_train, y_train)},
        {"model_3_lw", fit_linear_lw(x_train, y_train, config)},
    };
    for (const auto& [name, fit] : fits) {
        std::vector<double> z(x_test.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = fit.intercept + fit.slope * x_test[i];
        report.models.push_back({name,
                                 {{"intercept", fit.intercept}, {"slope", fit.slope}, {"train_loss", fit.achieved_loss}},
                                 score(z, y_test)});
    }
    return report;
}

}  // namespace agreeloss
