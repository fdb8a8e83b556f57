#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "agreeloss/csv.hpp"
#include "agreeloss/errors.hpp"
#include "agreeloss/estimators.hpp"
#include "agreeloss/hydro.hpp"
#include "agreeloss/losses.hpp"
#include "agreeloss/report_io.hpp"
#include "agreeloss/simulate.hpp"

#ifndef AGREELOSS_VERSION
#define AGREELOSS_VERSION "0.0.0"
#endif

namespace agreeloss::cli {

namespace {

enum class Format { json, csv, table };

std::optional<Format> parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "table") return Format::table;
    return std::nullopt;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

// FNV-1a, 64-bit.
std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    return "fnv1a64:" + hex64(h);
}

std::string cell(double v) { return std::isfinite(v) ? csv::format_number(v) : std::string("undefined"); }

Json json_value(double v) { return std::isfinite(v) ? Json(v) : Json("undefined"); }

using Rows = std::vector<std::vector<std::string>>;

std::string render_csv(const Rows& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string render_table(const Rows& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            if (i > 0) out += "  ";
            out += rows[r][i];
            if (i + 1 < rows[r].size()) out.append(width[i] - rows[r][i].size(), ' ');
        }
        out += '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i > 0 ? 2 : 0);
            out.append(total, '-');
            out += '\n';
        }
    }
    return out;
}

/// One output document: provenance plus the command's result, rendered in one
/// of the three formats. Tabular formats carry the provenance as `#` lines.
struct Document {
    std::string command;
    Json config = Json::object();
    Json inputs = Json::object();
    Json result = Json::object();
    std::vector<std::pair<std::string, Rows>> blocks;  // titled tables for csv/table output

    void add_input(const std::string& path) { inputs[path] = file_digest(path); }

    void write(std::ostream& out, Format format) const {
        if (format == Format::json) {
            Json doc;
            doc["tool"] = {{"name", "agreeloss"}, {"version", AGREELOSS_VERSION}};
            doc["command"] = command;
            doc["config"] = config;
            doc["inputs"] = inputs;
            doc["result"] = result;
            out << doc.dump(2) << '\n';
            return;
        }
        out << "# tool: agreeloss " << AGREELOSS_VERSION << '\n';
        out << "# command: " << command << '\n';
        out << "# config: " << config.dump() << '\n';
        out << "# inputs: " << inputs.dump() << '\n';
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& [title, rows] = blocks[b];
            if (format == Format::table && b > 0) out << '\n';
            if (!title.empty()) out << "# " << title << '\n';
            out << (format == Format::csv ? render_csv(rows) : render_table(rows));
        }
    }
};

struct MinimizerFlags {
    MinimizerConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-iterations", config.max_iterations, "Nelder-Mead iteration budget per simplex run")
            ->capture_default_str();
        cmd->add_option("--x-tol", config.x_tolerance, "Vertex-spread tolerance")->capture_default_str();
        cmd->add_option("--f-tol", config.f_tolerance, "Value-spread tolerance")->capture_default_str();
        cmd->add_option("--simplex-scale", config.initial_simplex_scale, "Initial simplex edge, relative")
            ->capture_default_str();
        cmd->add_option("--restarts", config.restarts, "Simplex rebuilds after convergence")->capture_default_str();
    }

    Json to_json() const {
        return {{"max_iterations", config.max_iterations},
                {"x_tolerance", config.x_tolerance},
                {"f_tolerance", config.f_tolerance},
                {"initial_simplex_scale", config.initial_simplex_scale},
                {"restarts", config.restarts}};
    }
};

std::vector<double> read_column(const std::string& path, const char* column) {
    return csv::numeric_column(csv::read(path), column);
}

// ---------------------------------------------------------------- metrics

struct MetricSpec {
    std::string name;
    std::function<double(const SeriesPair&)> compute;
    Orientation orientation = Orientation::negative;
    bool agreement = false;
};

double parse_exponent(const std::string& text, const std::string& spec) {
    if (text == "inf" || text == "infinity") return kInfinity;
    try {
        std::size_t used = 0;
        const double p = std::stod(text, &used);
        if (used == text.size()) return p;
    } catch (const std::exception&) {
    }
    throw InvalidInput("metric '" + spec + "': invalid exponent '" + text + "'");
}

MetricSpec parse_metric(const std::string& spec) {
    using O = Orientation;
    if (spec == "mae") return {spec, mae, O::negative, false};
    if (spec == "mse") return {spec, mse, O::negative, false};
    if (spec == "nse") return {spec, nse, O::positive, false};
    if (spec == "one_minus_nse") return {spec, [](const SeriesPair& p) { return 1.0 - nse(p); }, O::negative, false};
    if (spec == "lw") return {spec, l_w, O::negative, true};
    if (spec == "lnr2") return {spec, l_nr2, O::negative, true};
    if (spec == "vbar_mean") return {spec, v_mean_avg, O::negative, false};
    if (spec == "vbar_median") return {spec, v_median_avg, O::negative, false};
    if (spec == "lmc:f=mean") return {spec, l_lmc_mean, O::negative, true};
    if (spec == "lmc:f=median") return {spec, l_lmc_median, O::negative, true};
    if (spec.rfind("kbb:p=", 0) == 0) {
        const double p = parse_exponent(spec.substr(6), spec);
        if (!(p >= 1.0) || std::isinf(p)) throw InvalidInput("metric '" + spec + "': p must be finite and >= 1");
        return {spec, [p](const SeriesPair& s) { return l_kbb(s, p); }, O::negative, true};
    }
    if (spec.rfind("nrp:p=", 0) == 0) {
        const double p = parse_exponent(spec.substr(6), spec);
        if (!(p >= 1.0)) throw InvalidInput("metric '" + spec + "': p must be >= 1");
        return {spec, [p](const SeriesPair& s) { return l_nrp(s, p); }, O::negative, true};
    }
    throw InvalidInput("unknown metric '" + spec + "'");
}

const char* orientation_name(Orientation o) { return o == Orientation::negative ? "negative" : "positive"; }

int cmd_metrics(const std::string& input, const std::vector<std::string>& metric_names, bool as_index,
                Document& doc) {
    std::vector<MetricSpec> specs;
    for (const auto& name : metric_names) specs.push_back(parse_metric(name));

    const auto table = csv::read(input);
    doc.add_input(input);
    const SeriesPair pair(csv::numeric_column(table, "z"), csv::numeric_column(table, "y"));

    MetricReport report;
    bool undefined = false;
    for (const auto& spec : specs) {
        const bool to_index = as_index && spec.agreement;
        const std::string name = to_index ? "d_" + spec.name : spec.name;
        const Orientation orientation = to_index ? Orientation::positive : spec.orientation;
        try {
            const double v = spec.compute(pair);
            report.add(name, to_index ? 1.0 - v : v, orientation, spec.agreement);
        } catch (const UndefinedError&) {
            report.add_undefined(name, orientation, spec.agreement);
            undefined = true;
        }
    }

    Json entries = Json::array();
    Rows rows{{"metric", "value", "orientation"}};
    for (const auto& e : report.entries()) {
        entries.push_back({{"name", e.name}, {"value", json_value(e.value)}, {"orientation", orientation_name(e.orientation)}});
        rows.push_back({e.name, cell(e.value), orientation_name(e.orientation)});
    }
    doc.result = {{"n", pair.size()}, {"metrics", entries}};
    doc.blocks.emplace_back("", std::move(rows));
    return undefined ? kExitUndefined : kExitOk;
}

// ---------------------------------------------------------------- fitting

int cmd_fit_constant(const std::string& loss, const std::string& input, Document& doc) {
    const auto y = read_column(input, "y");
    doc.add_input(input);
    const auto fit = loss == "lw" ? fit_constant_lw(y) : fit_constant_lnr2(y);
    doc.result = {{"loss", fit.loss_name},
                  {"theta_plus", fit.theta_plus},
                  {"theta_minus", fit.theta_minus},
                  {"min_loss", fit.min_loss},
                  {"mean", mean(y)},
                  {"std", std_dev(y)}};
    doc.blocks.emplace_back("", Rows{{"loss", "theta_minus", "theta_plus", "min_loss"},
                                     {fit.loss_name, cell(fit.theta_minus), cell(fit.theta_plus), cell(fit.min_loss)}});
    return kExitOk;
}

int cmd_fit_linear(const std::string& loss, const std::string& train, const std::string& test,
                   const MinimizerConfig& config, Document& doc) {
    const auto table = csv::read(train);
    doc.add_input(train);
    const auto x = csv::numeric_column(table, "x");
    const auto y = csv::numeric_column(table, "y");
    if (x.size() != y.size()) throw DimensionError("x and y lengths differ");

    LinearFitResult fit;
    if (loss == "se") {
        fit = fit_linear_ols(x, y);
    } else if (loss == "lnr2") {
        fit = fit_linear_lnr2(x, y);
    } else {
        fit = fit_linear_lw(x, y, config);
    }

    doc.result = {{"loss", loss},
                  {"slope", fit.slope},
                  {"intercept", fit.intercept},
                  {"achieved_loss", fit.achieved_loss},
                  {"method", to_string(fit.method)},
                  {"degenerate", fit.degenerate}};
    doc.blocks.emplace_back("fit", Rows{{"loss", "slope", "intercept", "achieved_loss", "method", "degenerate"},
                                        {loss, cell(fit.slope), cell(fit.intercept), cell(fit.achieved_loss),
                                         to_string(fit.method), fit.degenerate ? "true" : "false"}});

    int code = kExitOk;
    if (!test.empty()) {
        const auto test_table = csv::read(test);
        doc.add_input(test);
        const auto xt = csv::numeric_column(test_table, "x");
        auto yt = csv::numeric_column(test_table, "y");
        std::vector<double> z(xt.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = fit.slope * xt[i] + fit.intercept;
        const SeriesPair pair(std::move(z), std::move(yt));
        Json metrics = Json::object();
        Rows rows{{"metric", "value"}};
        for (const char* name : {"mse", "one_minus_nse", "lnr2", "lw", "vbar_mean"}) {
            double v = std::numeric_limits<double>::quiet_NaN();
            try {
                v = parse_metric(name).compute(pair);
            } catch (const UndefinedError&) {
                code = kExitUndefined;
            }
            metrics[name] = json_value(v);
            rows.push_back({name, cell(v)});
        }
        doc.result["test"] = metrics;
        doc.blocks.emplace_back("test", std::move(rows));
    }
    return code;
}

// ---------------------------------------------------------------- profile

int cmd_profile(const std::string& loss, const std::string& input, double lo, double hi, int steps, Document& doc) {
    if (steps < 2) throw InvalidInput("--steps must be >= 2");
    if (!(lo < hi)) throw InvalidInput("--min must be smaller than --max");
    const auto y = read_column(input, "y");
    doc.add_input(input);
    const auto profile = [&](double theta) {
        return loss == "lw" ? lw_constant_profile(theta, y) : lnr2_constant_profile(theta, y);
    };
    const auto fit = loss == "lw" ? fit_constant_lw(y) : fit_constant_lnr2(y);

    Json grid = Json::array();
    Rows rows{{"theta", "loss", "kind"}};
    for (int k = 0; k < steps; ++k) {
        const double theta = k + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
        const double v = profile(theta);
        grid.push_back({{"theta", theta}, {"loss", v}});
        rows.push_back({cell(theta), cell(v), "grid"});
    }
    Json minima = Json::array();
    for (double theta : {fit.theta_minus, fit.theta_plus}) {
        const double v = profile(theta);
        minima.push_back({{"theta", theta}, {"loss", v}});
        rows.push_back({cell(theta), cell(v), "minimum"});
    }
    doc.result = {{"loss", loss}, {"mean", mean(y)}, {"std", std_dev(y)}, {"grid", grid}, {"minima", minima}};
    doc.blocks.emplace_back("", std::move(rows));
    return kExitOk;
}

// ---------------------------------------------------------------- experiments

Rows experiment_rows(const ExperimentReport& report) {
    Rows rows;
    std::istringstream in(to_csv(report));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
        rows.push_back(std::move(fields));
    }
    return rows;
}

// ---------------------------------------------------------------- calibration

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_calibrate(const std::string& data, std::size_t warmup_days, const std::string& cal, const std::string& val,
                  const std::vector<std::string>& loss_names, const MinimizerConfig& config, Document& doc) {
    const auto cal_span = hydro::parse_span(cal);
    const auto val_span = hydro::parse_span(val);
    if (!cal_span) throw InvalidInput("--cal must be YYYY-MM-DD:YYYY-MM-DD");
    if (!val_span) throw InvalidInput("--val must be YYYY-MM-DD:YYYY-MM-DD");
    std::vector<hydro::CalibrationLoss> losses;
    for (const auto& name : loss_names) {
        const auto loss = hydro::parse_loss(name);
        if (!loss) throw InvalidInput("unknown loss '" + name + "' (expected se, lnr2 or lw)");
        if (std::find(losses.begin(), losses.end(), *loss) != losses.end()) {
            throw InvalidInput("loss '" + name + "' listed twice");
        }
        losses.push_back(*loss);
    }
    if (losses.empty()) throw InvalidInput("--loss needs at least one of se, lnr2, lw");

    const auto series = hydro::load_csv(data);
    doc.add_input(data);
    const hydro::CalibrationPlan plan{warmup_days, *cal_span, *val_span};
    const auto report = hydro::calibrate_all(series, plan, losses, config);
    doc.result = to_json(report);

    const auto names = hydro::BucketModel{}.parameter_names();
    Rows params{{"loss"}};
    for (const auto& n : names) params[0].push_back(n);
    Rows cal_rows{{"loss", "mse", "lnr2", "lw"}};
    Rows val_rows{{"loss", "mse", "lnr2", "lw"}};
    Rows vbar_rows{{"loss", "vbar_mean"}};
    for (const auto& row : report.rows) {
        const auto loss = hydro::to_string(row.loss);
        params.push_back({loss});
        for (const auto& [n, v] : row.parameters) params.back().push_back(cell(v));
        cal_rows.push_back({loss});
        for (const auto& [n, v] : row.calibration) cal_rows.back().push_back(cell(v));
        val_rows.push_back({loss, cell(row.validation_metric("mse")), cell(row.validation_metric("lnr2")),
                            cell(row.validation_metric("lw"))});
        vbar_rows.push_back({loss, cell(row.validation_metric("vbar_mean"))});
    }
    doc.blocks.emplace_back("parameters", std::move(params));
    doc.blocks.emplace_back("calibration", std::move(cal_rows));
    doc.blocks.emplace_back("validation", std::move(val_rows));
    doc.blocks.emplace_back("validation vbar_mean", std::move(vbar_rows));

    for (const auto& row : report.rows) {
        for (const auto* values : {&row.calibration, &row.validation}) {
            for (const auto& [n, v] : *values) {
                if (!std::isfinite(v)) return kExitUndefined;
            }
        }
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> default_format) {
    CLI::App app{"Index-of-agreement losses: metrics, fits, experiments and calibration", "agreeloss"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", AGREELOSS_VERSION);

    std::string format_name = default_format.value_or("json");
    app.add_option("--format", format_name, "Output format (json, csv, table); default from AGREELOSS_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Compute metrics on a z,y file");
    std::string metrics_input;
    std::vector<std::string> metric_names;
    bool as_index = false;
    metrics->add_option("--input", metrics_input, "CSV with header z,y")->required();
    metrics->add_option("--metrics", metric_names, "Comma-separated metric list")->required()->delimiter(',');
    metrics->add_flag("--as-index", as_index, "Report agreement losses L as the index d = 1 - L");

    // fit-constant
    auto* fit_constant = app.add_subcommand("fit-constant", "Constant minimisers of lw or lnr2");
    std::string fc_loss;
    std::string fc_input;
    fit_constant->add_option("--loss", fc_loss)->required()->check(CLI::IsMember({"lw", "lnr2"}));
    fit_constant->add_option("--input", fc_input, "CSV with a y column")->required();

    // fit-linear
    auto* fit_linear = app.add_subcommand("fit-linear", "Fit z = a x + b under se, lnr2 or lw");
    std::string fl_loss;
    std::string fl_train;
    std::string fl_test;
    MinimizerFlags fl_min;
    fit_linear->add_option("--loss", fl_loss)->required()->check(CLI::IsMember({"se", "lnr2", "lw"}));
    fit_linear->add_option("--train", fl_train, "CSV with header x,y")->required();
    fit_linear->add_option("--test", fl_test, "Optional CSV with header x,y to score the fit on");
    fl_min.attach(fit_linear);

    // profile
    auto* profile = app.add_subcommand("profile", "Loss of constant predictions over a theta grid");
    std::string pr_loss;
    std::string pr_input;
    double pr_min = 0.0;
    double pr_max = 0.0;
    int pr_steps = 0;
    profile->add_option("--loss", pr_loss)->required()->check(CLI::IsMember({"lw", "lnr2"}));
    profile->add_option("--input", pr_input, "CSV with a y column")->required();
    profile->add_option("--min", pr_min)->required();
    profile->add_option("--max", pr_max)->required();
    profile->add_option("--steps", pr_steps)->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Seeded simulation experiments");
    std::string ex_kind;
    std::uint64_t ex_seed = 0;
    std::uint64_t ex_stream = 0;
    std::size_t ex_n_total = 0;
    std::size_t ex_split = 0;
    double ex_mean = 0.0;
    double ex_sd = 1.0;
    std::vector<double> ex_a1{0.6, 6.0, 20.0};
    MinimizerFlags ex_min;
    experiment->add_option("kind", ex_kind, "climatology or linear")
        ->required()
        ->check(CLI::IsMember({"climatology", "linear"}));
    experiment->add_option("--seed", ex_seed, "RNG seed (required)")->required();
    experiment->add_option("--stream", ex_stream, "RNG stream id")->capture_default_str();
    experiment->add_option("--n-total", ex_n_total, "Sample size (default 1000 climatology, 4000 linear)");
    experiment->add_option("--split", ex_split, "Training size (default n-total / 2)");
    experiment->add_option("--mean", ex_mean, "Gaussian mean (climatology)")->capture_default_str();
    experiment->add_option("--sd", ex_sd, "Gaussian sd (climatology)")->capture_default_str();
    experiment->add_option("--a1", ex_a1, "Slopes (linear)")->delimiter(',')->capture_default_str();
    ex_min.attach(experiment);

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Calibrate the bucket model under several losses");
    std::string ca_data;
    std::size_t ca_warmup = 0;
    std::string ca_cal;
    std::string ca_val;
    std::string ca_losses = "se,lnr2,lw";
    MinimizerFlags ca_min;
    calibrate->add_option("--data", ca_data, "CSV date,precip_mm,pet_mm,flow_mm")->required();
    calibrate->add_option("--warmup-days", ca_warmup)->required();
    calibrate->add_option("--cal", ca_cal, "Calibration span YYYY-MM-DD:YYYY-MM-DD")->required();
    calibrate->add_option("--val", ca_val, "Validation span YYYY-MM-DD:YYYY-MM-DD")->required();
    calibrate->add_option("--loss", ca_losses, "Comma-separated losses")->capture_default_str();
    ca_min.attach(calibrate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    const auto format = parse_format(format_name);
    if (!format) {
        err << "error: unknown output format '" << format_name << "' (AGREELOSS_FORMAT)\n";
        return kExitInputError;
    }

    Document doc;
    int code = kExitOk;
    try {
        if (*metrics) {
            doc.command = "metrics";
            doc.config = {{"input", metrics_input}, {"metrics", metric_names}, {"as_index", as_index}};
            code = cmd_metrics(metrics_input, metric_names, as_index, doc);
        } else if (*fit_constant) {
            doc.command = "fit-constant";
            doc.config = {{"loss", fc_loss}, {"input", fc_input}};
            code = cmd_fit_constant(fc_loss, fc_input, doc);
        } else if (*fit_linear) {
            doc.command = "fit-linear";
            doc.config = {{"loss", fl_loss}, {"train", fl_train}, {"test", fl_test}, {"minimizer", fl_min.to_json()}};
            code = cmd_fit_linear(fl_loss, fl_train, fl_test, fl_min.config, doc);
        } else if (*profile) {
            doc.command = "profile";
            doc.config = {{"loss", pr_loss}, {"input", pr_input}, {"min", pr_min}, {"max", pr_max}, {"steps", pr_steps}};
            code = cmd_profile(pr_loss, pr_input, pr_min, pr_max, pr_steps, doc);
        } else if (*experiment) {
            doc.command = "experiment " + ex_kind;
            const bool linear = ex_kind == "linear";
            const std::size_t n_total = ex_n_total != 0 ? ex_n_total : (linear ? 4000 : 1000);
            const std::size_t split = ex_split != 0 ? ex_split : n_total / 2;
            doc.config = {{"kind", ex_kind}, {"seed", ex_seed}, {"stream", ex_stream}, {"n_total", n_total},
                          {"split", split}};
            Json reports = Json::array();
            if (linear) {
                doc.config["a1"] = ex_a1;
                doc.config["minimizer"] = ex_min.to_json();
                for (double a1 : ex_a1) {
                    const auto report = run_linear_experiment(a1, n_total, split, RngState(ex_seed, ex_stream), ex_min.config);
                    reports.push_back(to_json(report));
                    doc.blocks.emplace_back("a1=" + csv::format_number(a1), experiment_rows(report));
                }
            } else {
                doc.config["mean"] = ex_mean;
                doc.config["sd"] = ex_sd;
                const auto report =
                    run_climatology_experiment(n_total, split, GaussianSpec{ex_mean, ex_sd}, RngState(ex_seed, ex_stream));
                reports.push_back(to_json(report));
                doc.blocks.emplace_back("", experiment_rows(report));
            }
            doc.result = {{"reports", reports}};
        } else if (*calibrate) {
            doc.command = "calibrate";
            const auto losses = split_list(ca_losses);
            doc.config = {{"data", ca_data}, {"warmup_days", ca_warmup}, {"cal", ca_cal}, {"val", ca_val},
                          {"loss", losses}, {"minimizer", ca_min.to_json()}};
            code = cmd_calibrate(ca_data, ca_warmup, ca_cal, ca_val, losses, ca_min.config, doc);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const UndefinedError& e) {
        err << "undefined: " << e.what() << '\n';
        return kExitUndefined;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << " (best value " << e.best_value() << ")\n";
        return kExitConvergence;
    }

    doc.config["format"] = format_name;
    doc.write(out, *format);
    return code;
}

}  // namespace agreeloss::cli
