#include "agreeloss/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>

#include "agreeloss/csv.hpp"
#include "agreeloss/errors.hpp"
#include "agreeloss/losses.hpp"

namespace agreeloss::hydro {

namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

std::vector<double> slice(std::span<const double> v, std::size_t first, std::size_t last_inclusive) {
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(last_inclusive) + 1};
}

double lookup(const NamedValues& values, std::string_view name) {
    for (const auto& [key, value] : values) {
        if (key == name) return value;
    }
    throw InvalidInput("unknown metric '" + std::string(name) + "'");
}

struct SpanIndex {
    std::size_t cal_first;
    std::size_t cal_last;
    std::size_t val_first;
    std::size_t val_last;
};

SpanIndex resolve(const HydroSeries& series, const CalibrationPlan& plan) {
    validate_plan(series, plan);
    return {*series.index_of(plan.calibration.first), *series.index_of(plan.calibration.last),
            *series.index_of(plan.validation.first), *series.index_of(plan.validation.last)};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int parts[3] = {0, 0, 0};
    const std::size_t starts[3] = {0, 5, 8};
    const std::size_t lengths[3] = {4, 2, 2};
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = starts[k]; i < starts[k] + lengths[k]; ++i) {
            if (text[i] < '0' || text[i] > '9') return std::nullopt;
            parts[k] = parts[k] * 10 + (text[i] - '0');
        }
    }
    const std::chrono::year_month_day ymd{std::chrono::year(parts[0]),
                                          std::chrono::month(static_cast<unsigned>(parts[1])),
                                          std::chrono::day(static_cast<unsigned>(parts[2]))};
    if (!ymd.ok()) return std::nullopt;
    return Date(ymd);
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd(date);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

HydroSeries::HydroSeries(std::vector<Date> dates, std::vector<double> precip, std::vector<double> pet,
                         std::vector<double> flow)
    : dates_(std::move(dates)), precip_(std::move(precip)), pet_(std::move(pet)), flow_(std::move(flow)) {
    if (dates_.empty()) throw InvalidInput("HydroSeries: empty series");
    if (precip_.size() != dates_.size() || pet_.size() != dates_.size() || flow_.size() != dates_.size()) {
        throw DimensionError("HydroSeries: column lengths differ");
    }
    for (std::size_t i = 0; i < dates_.size(); ++i) {
        if (i > 0 && dates_[i] - dates_[i - 1] != std::chrono::days(1)) {
            throw InvalidInput("HydroSeries: dates not consecutive at " + format_date(dates_[i]));
        }
        for (double v : {precip_[i], pet_[i], flow_[i]}) {
            if (!std::isfinite(v) || v < 0.0) {
                throw InvalidInput("HydroSeries: negative or non-finite value on " + format_date(dates_[i]));
            }
        }
    }
}

std::optional<std::size_t> HydroSeries::index_of(Date date) const noexcept {
    const auto offset = (date - dates_.front()).count();
    if (offset < 0 || static_cast<std::size_t>(offset) >= dates_.size()) return std::nullopt;
    return static_cast<std::size_t>(offset);
}

HydroSeries parse_csv(std::string_view text) {
    const auto table = csv::parse(text);
    const char* names[] = {"date", "precip_mm", "pet_mm", "flow_mm"};
    std::size_t idx[4];
    for (int k = 0; k < 4; ++k) idx[k] = table.column(names[k]);
    if (table.rows.empty()) throw ParseError("no data rows", 1);

    std::vector<Date> dates;
    std::vector<double> cols[3];
    for (const auto& row : table.rows) {
        const auto& date_field = row.fields[idx[0]];
        if (date_field.empty()) throw ParseError("row " + std::to_string(row.line) + ": missing date", row.line);
        const auto date = parse_date(date_field);
        if (!date) {
            throw ParseError("row " + std::to_string(row.line) + ": invalid date '" + date_field + "'", row.line);
        }
        if (!dates.empty() && *date - dates.back() != std::chrono::days(1)) {
            throw ParseError("row " + std::to_string(row.line) + ": date gap between " + format_date(dates.back()) +
                                 " and " + format_date(*date),
                             row.line);
        }
        dates.push_back(*date);
        for (int k = 0; k < 3; ++k) {
            const double v = csv::parse_number(row.fields[idx[k + 1]], row.line, names[k + 1]);
            if (v < 0.0) {
                throw ParseError("row " + std::to_string(row.line) + ": negative value in column '" +
                                     names[k + 1] + "'",
                                 row.line);
            }
            cols[k].push_back(v);
        }
    }
    return HydroSeries(std::move(dates), std::move(cols[0]), std::move(cols[1]), std::move(cols[2]));
}

HydroSeries load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_csv(text);
}

std::string to_csv(const HydroSeries& series) {
    std::string out = "date,precip_mm,pet_mm,flow_mm\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += format_date(series.dates()[i]) + ',' + csv::format_number(series.precip()[i]) + ',' +
               csv::format_number(series.pet()[i]) + ',' + csv::format_number(series.flow()[i]) + '\n';
    }
    return out;
}

void BucketParams::validate() const {
    if (!(capacity > 0.0) || !std::isfinite(capacity)) throw InvalidInput("BucketParams: capacity must be > 0");
    if (!(recession > 0.0 && recession < 1.0)) throw InvalidInput("BucketParams: recession must lie in (0, 1)");
    if (!(split >= 0.0 && split <= 1.0)) throw InvalidInput("BucketParams: split must lie in [0, 1]");
}

FlowSimulation simulate_bucket(const BucketParams& params, const HydroSeries& series, double initial_store,
                               std::size_t days) {
    params.validate();
    if (!(initial_store >= 0.0) || !std::isfinite(initial_store)) {
        throw InvalidInput("simulate_bucket: initial store must be finite and >= 0");
    }
    const std::size_t n = std::min(days, series.size());
    FlowSimulation sim;
    sim.flow.resize(n);
    sim.actual_evap.resize(n);
    sim.initial_store = initial_store;

    double store = initial_store;
    for (std::size_t t = 0; t < n; ++t) {
        const double p = series.precip()[t];
        const double direct = params.split * p;
        store += (1.0 - params.split) * p;
        const double demand = series.pet()[t] * std::min(1.0, store / params.capacity);
        const double before = store;
        store = std::max(0.0, store - demand);
        sim.actual_evap[t] = before - store;
        const double spill = std::max(0.0, store - params.capacity);
        store -= spill;
        const double baseflow = params.recession * store;
        store -= baseflow;
        sim.flow[t] = direct + spill + baseflow;
    }
    sim.final_store = store;
    return sim;
}

RealVector simulate_flow(const BucketParams& params, const HydroSeries& series, double initial_store) {
    return RealVector(simulate_bucket(params, series, initial_store).flow);
}

std::vector<double> BucketModel::default_start() const { return to_unconstrained(std::vector<double>{100.0, 0.1, 0.2}); }

std::vector<double> BucketModel::to_natural(std::span<const double> u) const {
    return {std::exp(u[0]), logistic(u[1]), logistic(u[2])};
}

std::vector<double> BucketModel::to_unconstrained(std::span<const double> natural) const {
    const auto p = params_from(natural);
    p.validate();
    // Keep the split strictly inside (0, 1) so the logit stays finite.
    const double split = std::clamp(p.split, 1e-9, 1.0 - 1e-9);
    return {std::log(p.capacity), logit(p.recession), logit(split)};
}

std::vector<double> BucketModel::simulate(std::span<const double> natural, const HydroSeries& series,
                                          std::size_t days) const {
    const auto p = params_from(natural);
    return simulate_bucket(p, series, p.capacity / 2.0, days).flow;
}

BucketParams BucketModel::params_from(std::span<const double> natural) {
    if (natural.size() != 3) throw DimensionError("BucketModel: expected 3 parameters");
    return {natural[0], natural[1], natural[2]};
}

std::optional<DateSpan> parse_span(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const auto first = parse_date(text.substr(0, colon));
    const auto last = parse_date(text.substr(colon + 1));
    if (!first || !last) return std::nullopt;
    return DateSpan{*first, *last};
}

std::string to_string(CalibrationLoss loss) {
    switch (loss) {
        case CalibrationLoss::se: return "se";
        case CalibrationLoss::lnr2: return "lnr2";
        case CalibrationLoss::lw: return "lw";
    }
    return "?";
}

std::optional<CalibrationLoss> parse_loss(std::string_view text) {
    if (text == "se") return CalibrationLoss::se;
    if (text == "lnr2") return CalibrationLoss::lnr2;
    if (text == "lw") return CalibrationLoss::lw;
    return std::nullopt;
}

double calibration_loss(CalibrationLoss loss, std::span<const double> simulated, std::span<const double> observed) {
    const SeriesPair pair(std::vector<double>(simulated.begin(), simulated.end()),
                          std::vector<double>(observed.begin(), observed.end()));
    switch (loss) {
        case CalibrationLoss::se: return mse(pair);
        case CalibrationLoss::lnr2: return l_nr2(pair);
        case CalibrationLoss::lw: return l_w(pair);
    }
    throw InvalidInput("unknown calibration loss");
}

double CalibrationRow::parameter(std::string_view name) const { return lookup(parameters, name); }

double CalibrationRow::calibration_metric(std::string_view name) const { return lookup(calibration, name); }

double CalibrationRow::validation_metric(std::string_view name) const { return lookup(validation, name); }

void validate_plan(const HydroSeries& series, const CalibrationPlan& plan) {
    const auto& cal = plan.calibration;
    const auto& val = plan.validation;
    if (cal.first > cal.last) throw InvalidInput("calibration span ends before it starts");
    if (val.first > val.last) throw InvalidInput("validation span ends before it starts");
    if (!series.index_of(cal.first) || !series.index_of(cal.last)) {
        throw InvalidInput("calibration span lies outside the series");
    }
    if (!series.index_of(val.first) || !series.index_of(val.last)) {
        throw InvalidInput("validation span lies outside the series");
    }
    if (*series.index_of(cal.first) < plan.warmup_days) {
        throw InvalidInput("calibration span overlaps the warm-up period");
    }
    if (val.first <= cal.last) throw InvalidInput("validation span must start after the calibration span");
    if (cal.last == cal.first || val.last == val.first) {
        throw InvalidInput("calibration and validation spans need at least two days");
    }
}

CalibrationRow calibrate(const HydroSeries& series, const CalibrationPlan& plan, CalibrationLoss loss,
                         const MinimizerConfig& config, const RunoffModel& model,
                         std::span<const std::vector<double>> extra_starts) {
    const auto idx = resolve(series, plan);
    const auto observed_cal = slice(series.flow(), idx.cal_first, idx.cal_last);

    const Objective objective = [&](std::span<const double> u) {
        const auto sim = model.simulate(model.to_natural(u), series, idx.cal_last + 1);
        try {
            return calibration_loss(loss, slice(sim, idx.cal_first, idx.cal_last), observed_cal);
        } catch (const UndefinedError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    std::vector<std::vector<double>> starts{model.default_start()};
    for (const auto& s : extra_starts) starts.push_back(model.to_unconstrained(s));

    CalibrationRow row{loss, {}, {}, {}, std::numeric_limits<double>::infinity(), 0};
    std::vector<double> best_u;
    for (const auto& start : starts) {
        if (!std::isfinite(objective(start))) continue;
        const auto r = minimize(objective, start, config);
        row.evaluations += r.evaluations;
        if (r.value < row.objective) {
            row.objective = r.value;
            best_u = r.point;
        }
    }
    if (best_u.empty()) throw UndefinedError("calibrate: loss undefined at every start point");

    const auto natural = model.to_natural(best_u);
    const auto names = model.parameter_names();
    for (std::size_t i = 0; i < names.size(); ++i) row.parameters.emplace_back(names[i], natural[i]);

    const auto sim = model.simulate(natural, series, idx.val_last + 1);
    const auto sim_cal = slice(sim, idx.cal_first, idx.cal_last);
    const auto sim_val = slice(sim, idx.val_first, idx.val_last);
    const auto observed_val = slice(series.flow(), idx.val_first, idx.val_last);
    const auto metric = [](CalibrationLoss l, const std::vector<double>& s, const std::vector<double>& o) {
        try {
            return calibration_loss(l, s, o);
        } catch (const UndefinedError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    for (auto l : {CalibrationLoss::se, CalibrationLoss::lnr2, CalibrationLoss::lw}) {
        const auto name = l == CalibrationLoss::se ? std::string("mse") : to_string(l);
        row.calibration.emplace_back(name, metric(l, sim_cal, observed_cal));
        row.validation.emplace_back(name, metric(l, sim_val, observed_val));
    }
    row.validation.emplace_back("vbar_mean", v_mean_avg(SeriesPair(sim_val, observed_val)));
    return row;
}

CalibrationReport calibrate_all(const HydroSeries& series, const CalibrationPlan& plan,
                                std::span<const CalibrationLoss> losses, const MinimizerConfig& config,
                                const RunoffModel& model) {
    if (losses.empty()) throw InvalidInput("calibrate_all: no losses requested");
    CalibrationReport report{model.name(), plan.warmup_days, plan.calibration, plan.validation, {}};
    for (auto loss : losses) report.rows.push_back(calibrate(series, plan, loss, config, model));

    const auto natural_of = [](const CalibrationRow& row) {
        std::vector<double> p;
        for (const auto& [name, value] : row.parameters) p.push_back(value);
        return p;
    };
    const auto idx = resolve(series, plan);
    const auto observed_cal = slice(series.flow(), idx.cal_first, idx.cal_last);

    // Re-seed any row whose own loss is lower at another row's parameters.
    constexpr int kMaxPasses = 8;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        bool changed = false;
        for (auto& row : report.rows) {
            std::vector<std::vector<double>> better;
            for (const auto& other : report.rows) {
                if (&other == &row) continue;
                const auto p = natural_of(other);
                const auto sim = model.simulate(p, series, idx.cal_last + 1);
                const double v = calibration_loss(row.loss, slice(sim, idx.cal_first, idx.cal_last), observed_cal);
                if (v < row.objective) better.push_back(p);
            }
            if (better.empty()) continue;
            auto rerun = calibrate(series, plan, row.loss, config, model, better);
            if (rerun.objective < row.objective) {
                rerun.evaluations += row.evaluations;
                row = std::move(rerun);
                changed = true;
            }
        }
        if (!changed) break;
    }
    return report;
}

}  // namespace agreeloss::hydro
