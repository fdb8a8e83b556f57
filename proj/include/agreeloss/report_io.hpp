#pragma once

#include <string>

#include <json.hpp>

#include "agreeloss/hydro.hpp"
#include "agreeloss/losses.hpp"
#include "agreeloss/simulate.hpp"

namespace agreeloss {

using Json = nlohmann::ordered_json;

// JSON layout of an experiment report:
//   {"metadata": {"kind", "seed", "stream_id", "n_total", "split", "true_parameters": {...}},
//    "models": [{"name", "parameters": {...}, "metrics": {...}}, ...]}
Json to_json(const ExperimentReport& report);

/// Header `model,<parameters...>,<metrics...>`, one row per model.
std::string to_csv(const ExperimentReport& report);

// {"model", "warmup_days", "calibration_span", "validation_span",
//  "rows": [{"loss", "parameters", "calibration", "validation", "objective", "evaluations"}]}
Json to_json(const hydro::CalibrationReport& report);

/// Header `loss,<parameters...>,cal_mse,cal_lnr2,cal_lw,val_mse,val_lnr2,val_lw,val_vbar_mean`.
std::string to_csv(const hydro::CalibrationReport& report);

}  // namespace agreeloss
