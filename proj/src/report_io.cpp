#include "agreeloss/report_io.hpp"

#include <cmath>

#include "agreeloss/csv.hpp"

namespace agreeloss {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json("undefined"); }

Json object_of(const NamedValues& values) {
    Json out = Json::object();
    for (const auto& [name, value] : values) out[name] = number(value);
    return out;
}

std::string cell(double v) { return std::isfinite(v) ? csv::format_number(v) : std::string("undefined"); }

}  // namespace

Json to_json(const ExperimentReport& report) {
    const auto& m = report.metadata;
    Json doc;
    doc["metadata"] = {{"kind", m.kind},
                       {"seed", m.seed},
                       {"stream_id", m.stream_id},
                       {"n_total", m.n_total},
                       {"split", m.split},
                       {"true_parameters", object_of(m.true_parameters)}};
    doc["models"] = Json::array();
    for (const auto& row : report.models) {
        doc["models"].push_back(
            {{"name", row.name}, {"parameters", object_of(row.parameters)}, {"metrics", object_of(row.metrics)}});
    }
    return doc;
}

std::string to_csv(const ExperimentReport& report) {
    std::string out = "model";
    if (!report.models.empty()) {
        for (const auto& [name, v] : report.models.front().parameters) out += ',' + name;
        for (const auto& [name, v] : report.models.front().metrics) out += ',' + name;
    }
    out += '\n';
    for (const auto& row : report.models) {
        out += row.name;
        for (const auto& [name, v] : row.parameters) out += ',' + cell(v);
        for (const auto& [name, v] : row.metrics) out += ',' + cell(v);
        out += '\n';
    }
    return out;
}

Json to_json(const hydro::CalibrationReport& report) {
    Json doc;
    doc["model"] = report.model;
    doc["warmup_days"] = report.warmup_days;
    doc["calibration_span"] = {hydro::format_date(report.calibration.first),
                               hydro::format_date(report.calibration.last)};
    doc["validation_span"] = {hydro::format_date(report.validation.first),
                              hydro::format_date(report.validation.last)};
    doc["rows"] = Json::array();
    for (const auto& row : report.rows) {
        doc["rows"].push_back({{"loss", hydro::to_string(row.loss)},
                               {"parameters", object_of(row.parameters)},
                               {"calibration", object_of(row.calibration)},
                               {"validation", object_of(row.validation)},
                               {"objective", number(row.objective)},
                               {"evaluations", row.evaluations}});
    }
    return doc;
}

std::string to_csv(const hydro::CalibrationReport& report) {
    std::string out = "loss";
    if (!report.rows.empty()) {
        for (const auto& [name, v] : report.rows.front().parameters) out += ',' + name;
        for (const auto& [name, v] : report.rows.front().calibration) out += ",cal_" + name;
        for (const auto& [name, v] : report.rows.front().validation) out += ",val_" + name;
    }
    out += '\n';
    for (const auto& row : report.rows) {
        out += hydro::to_string(row.loss);
        for (const auto& [name, v] : row.parameters) out += ',' + cell(v);
        for (const auto& [name, v] : row.calibration) out += ',' + cell(v);
        for (const auto& [name, v] : row.validation) out += ',' + cell(v);
        out += '\n';
    }
    return out;
}

}  // namespace agreeloss
