#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agreeloss/minimize.hpp"
#include "agreeloss/simulate.hpp"
#include "agreeloss/vector_stats.hpp"

namespace agreeloss::hydro {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

/// Daily forcing and observed streamflow, all in mm/day.
class HydroSeries {
public:
    /// Throws InvalidInput unless lengths match, dates step by exactly one day,
    /// and every value is finite and non-negative.
    HydroSeries(std::vector<Date> dates, std::vector<double> precip, std::vector<double> pet,
                std::vector<double> flow);

    std::size_t size() const noexcept { return dates_.size(); }
    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::vector<double>& precip() const noexcept { return precip_; }
    const std::vector<double>& pet() const noexcept { return pet_; }
    const std::vector<double>& flow() const noexcept { return flow_; }

    /// Index of `date`, or nullopt when outside the series.
    std::optional<std::size_t> index_of(Date date) const noexcept;

private:
    std::vector<Date> dates_;
    std::vector<double> precip_;
    std::vector<double> pet_;
    std::vector<double> flow_;
};

/// Reads `date,precip_mm,pet_mm,flow_mm`. Throws ParseError naming the row on a
/// missing column, missing or negative value, bad date, or a date gap.
HydroSeries load_csv(const std::filesystem::path& path);
HydroSeries parse_csv(std::string_view text);
std::string to_csv(const HydroSeries& series);

struct BucketParams {
    double capacity = 100.0;  ///< store size, mm, > 0
    double recession = 0.1;   ///< daily outflow fraction of the store, in (0, 1)
    double split = 0.2;       ///< fraction of rainfall bypassing the store, in [0, 1]

    void validate() const;
};

struct FlowSimulation {
    std::vector<double> flow;
    std::vector<double> actual_evap;
    double initial_store = 0.0;
    double final_store = 0.0;
};

/// Single-store bucket model. Each day:
///   direct = split P; store += (1 - split) P;
///   evap = PET min(1, store / capacity); store = max(0, store - evap);
///   spill = max(0, store - capacity); store -= spill;
///   baseflow = recession store; store -= baseflow;
///   flow = direct + spill + baseflow.
FlowSimulation simulate_bucket(const BucketParams& params, const HydroSeries& series, double initial_store,
                               std::size_t days = static_cast<std::size_t>(-1));

RealVector simulate_flow(const BucketParams& params, const HydroSeries& series, double initial_store);

/// A lumped model calibrated in an unconstrained parameter space.
class RunoffModel {
public:
    virtual ~RunoffModel() = default;

    virtual std::string name() const = 0;
    virtual std::vector<std::string> parameter_names() const = 0;
    virtual std::vector<double> default_start() const = 0;

    virtual std::vector<double> to_natural(std::span<const double> unconstrained) const = 0;
    virtual std::vector<double> to_unconstrained(std::span<const double> natural) const = 0;

    /// Simulated flow for the first `days` days, started from the model's
    /// default initial state.
    virtual std::vector<double> simulate(std::span<const double> natural, const HydroSeries& series,
                                         std::size_t days) const = 0;
};

/// The bucket model above: capacity via exp, recession and split via logistic;
/// initial store capacity / 2.
class BucketModel final : public RunoffModel {
public:
    std::string name() const override { return "bucket"; }
    std::vector<std::string> parameter_names() const override { return {"capacity", "recession", "split"}; }
    std::vector<double> default_start() const override;
    std::vector<double> to_natural(std::span<const double> unconstrained) const override;
    std::vector<double> to_unconstrained(std::span<const double> natural) const override;
    std::vector<double> simulate(std::span<const double> natural, const HydroSeries& series,
                                 std::size_t days) const override;

    static BucketParams params_from(std::span<const double> natural);
};

/// Inclusive date range.
struct DateSpan {
    Date first;
    Date last;
};

/// Parses `YYYY-MM-DD:YYYY-MM-DD`.
std::optional<DateSpan> parse_span(std::string_view text);

struct CalibrationPlan {
    std::size_t warmup_days = 365;
    DateSpan calibration;
    DateSpan validation;
};

enum class CalibrationLoss { se, lnr2, lw };

std::string to_string(CalibrationLoss loss);
std::optional<CalibrationLoss> parse_loss(std::string_view text);

/// Average loss of simulated against observed flow.
double calibration_loss(CalibrationLoss loss, std::span<const double> simulated, std::span<const double> observed);

struct CalibrationRow {
    CalibrationLoss loss;
    NamedValues parameters;
    NamedValues calibration;  ///< mse, lnr2, lw
    NamedValues validation;   ///< mse, lnr2, lw, vbar_mean
    double objective = 0.0;
    int evaluations = 0;

    double parameter(std::string_view name) const;
    double calibration_metric(std::string_view name) const;
    double validation_metric(std::string_view name) const;
};

struct CalibrationReport {
    std::string model;
    std::size_t warmup_days = 0;
    DateSpan calibration;
    DateSpan validation;
    std::vector<CalibrationRow> rows;
};

/// Throws InvalidInput unless the warm-up, calibration and validation spans are
/// ordered, non-overlapping and inside the series.
void validate_plan(const HydroSeries& series, const CalibrationPlan& plan);

/// Minimises `loss` over the calibration span (warm-up days are simulated but
/// not scored). Starts from the model default and from each natural-space point
/// in `extra_starts`; the best result is kept.
CalibrationRow calibrate(const HydroSeries& series, const CalibrationPlan& plan, CalibrationLoss loss,
                         const MinimizerConfig& config, const RunoffModel& model = BucketModel{},
                         std::span<const std::vector<double>> extra_starts = {});

/// Calibrates each loss, then re-runs each one warm-started from the others'
/// solutions so no row can be beaten on its own loss by another row's parameters.
CalibrationReport calibrate_all(const HydroSeries& series, const CalibrationPlan& plan,
                                std::span<const CalibrationLoss> losses, const MinimizerConfig& config,
                                const RunoffModel& model = BucketModel{});

}  // namespace agreeloss::hydro
