#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agreeloss/hydro.hpp"
#include "commands.hpp"
#include "synthetic_catchment.hpp"

namespace fs = std::filesystem;
using agreeloss::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, std::optional<std::string> format = std::nullopt) {
    std::ostringstream out, err;
    const int code = run(args, out, err, format);
    return {code, out.str(), err.str()};
}

/// A file under the temp directory, removed when the test ends.
class TempFile {
public:
    TempFile(const std::string& name, const std::string& contents)
        : path_(fs::temp_directory_path() / ("agreeloss_cli_" + name)) {
        std::ofstream(path_) << contents;
    }
    ~TempFile() { fs::remove(path_); }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

double metric_value(const json& doc, const std::string& name) {
    for (const auto& m : doc["result"]["metrics"]) {
        if (m["name"] == name) return m["value"].get<double>();
    }
    FAIL("metric not found: " << name);
    return 0;
}

}  // namespace

TEST_CASE("metrics command") {
    const TempFile same("same.csv", "z,y\n1,1\n2,2\n4,4\n");
    const auto r = invoke({"metrics", "--input", same.str(), "--metrics", "mse,lw,lnr2,nse"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["tool"]["name"] == "agreeloss");
    CHECK(doc["command"] == "metrics");
    CHECK(doc["config"]["format"] == "json");
    CHECK(doc["inputs"][same.str()].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(metric_value(doc, "mse") == 0.0);
    CHECK(metric_value(doc, "lw") == 0.0);
    CHECK(metric_value(doc, "lnr2") == 0.0);
    CHECK(metric_value(doc, "nse") == 1.0);

    // z = (0, 1), y = (0, 2), mu = 1: |z - y|^2 = 1, |z - mu| + |mu - y| = (2, 1).
    const TempFile two("two.csv", "z,y\n0,0\n1,2\n");
    const auto lw = json::parse(invoke({"metrics", "--input", two.str(), "--metrics", "lw"}).out);
    CHECK(metric_value(lw, "lw") == doctest::Approx(0.2));
    const auto idx = json::parse(invoke({"metrics", "--input", two.str(), "--metrics", "lw,mse", "--as-index"}).out);
    CHECK(metric_value(idx, "d_lw") == doctest::Approx(1.0 - 0.2));
    CHECK(metric_value(idx, "mse") == doctest::Approx(0.5));
    CHECK(idx["result"]["metrics"][0]["orientation"] == "positive");
}

TEST_CASE("metrics exit codes") {
    const TempFile flat("flat.csv", "z,y\n1,3\n2,3\n");
    const auto undefined = invoke({"metrics", "--input", flat.str(), "--metrics", "nse,mse"});
    CHECK(undefined.code == 2);
    const auto doc = json::parse(undefined.out);
    CHECK(doc["result"]["metrics"][0]["value"] == "undefined");

    const TempFile bad("bad.csv", "z,y\n1,2\n3\n");
    const auto malformed = invoke({"metrics", "--input", bad.str(), "--metrics", "mse"});
    CHECK(malformed.code == 1);
    CHECK(malformed.err.find("error") != std::string::npos);

    const TempFile text("text.csv", "z,y\n1,x\n");
    CHECK(invoke({"metrics", "--input", text.str(), "--metrics", "mse"}).code == 1);
    CHECK(invoke({"metrics", "--input", "/nonexistent/file.csv", "--metrics", "mse"}).code == 1);
    CHECK(invoke({"metrics", "--input", flat.str(), "--metrics", "nope"}).code == 1);
    CHECK(invoke({"metrics", "--input", flat.str(), "--metrics", "mse", "--bogus"}).code == 1);
    CHECK(invoke({"metrics", "--input", flat.str()}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("output formats") {
    const TempFile two("fmt.csv", "z,y\n0,0\n1,2\n");
    const std::vector<std::string> args{"metrics", "--input", two.str(), "--metrics", "mse"};
    const auto csv = invoke(args, "csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("# tool: agreeloss", 0) == 0);
    CHECK(csv.out.find("metric,value,orientation\nmse,0.5,negative\n") != std::string::npos);

    auto with_flag = args;
    with_flag.insert(with_flag.begin(), {"--format", "json"});
    CHECK(invoke(with_flag, "csv").out.front() == '{');

    const auto table = invoke(args, "table");
    CHECK(table.out.find("metric  value  orientation") != std::string::npos);
    CHECK(invoke(args, "xml").code == 1);
}

TEST_CASE("fit-constant and profile") {
    const TempFile y("y.csv", "y\n1\n2\n3\n4\n");
    const auto fit = json::parse(invoke({"fit-constant", "--loss", "lnr2", "--input", y.str()}).out);
    const double sd = std::sqrt(1.25);
    CHECK(fit["result"]["theta_plus"].get<double>() == doctest::Approx(2.5 + sd));
    CHECK(fit["result"]["theta_minus"].get<double>() == doctest::Approx(2.5 - sd));
    CHECK(fit["result"]["min_loss"].get<double>() == doctest::Approx(0.5));

    const auto lw = json::parse(invoke({"fit-constant", "--loss", "lw", "--input", y.str()}).out);
    CHECK(lw["result"]["min_loss"].get<double>() == doctest::Approx(sd / (sd + 1.0)));
    CHECK(invoke({"fit-constant", "--loss", "mse", "--input", y.str()}).code == 1);

    const auto prof = json::parse(invoke({"profile", "--loss", "lnr2", "--input", y.str(), "--min", "0", "--max",
                                          "5", "--steps", "11"})
                                      .out);
    const auto& grid = prof["result"]["grid"];
    REQUIRE(grid.size() == 11);
    CHECK(grid[5]["theta"] == 2.5);
    CHECK(grid[5]["loss"] == 1.0);
    CHECK(grid[10]["theta"] == 5.0);
    for (const auto& m : prof["result"]["minima"]) CHECK(m["loss"].get<double>() == doctest::Approx(0.5));
    CHECK(invoke({"profile", "--loss", "lnr2", "--input", y.str(), "--min", "5", "--max", "0", "--steps", "3"}).code ==
          1);

    const TempFile flat("yflat.csv", "y\n2\n2\n");
    CHECK(invoke({"fit-constant", "--loss", "lw", "--input", flat.str()}).code == 2);
}

TEST_CASE("fit-linear") {
    const TempFile train("train.csv", "x,y\n1,1\n2,3\n3,2\n");
    const auto r = invoke({"fit-linear", "--loss", "lnr2", "--train", train.str(), "--test", train.str()});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["result"]["slope"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["result"]["intercept"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(doc["result"]["test"]["lnr2"].get<double>() == doctest::Approx(0.25));
    CHECK(doc["config"]["minimizer"]["max_iterations"] == 10000);

    const auto lw = invoke({"fit-linear", "--loss", "lw", "--train", train.str(), "--restarts", "1"});
    CHECK(lw.code == 0);
    CHECK(json::parse(lw.out)["config"]["minimizer"]["restarts"] == 1);
    CHECK(invoke({"fit-linear", "--loss", "lw", "--train", train.str(), "--max-iterations", "1"}).code == 3);
}

TEST_CASE("experiment command") {
    CHECK(invoke({"experiment", "climatology"}).code == 1);
    CHECK(invoke({"experiment", "weather", "--seed", "1"}).code == 1);

    const std::vector<std::string> args{"experiment", "climatology", "--seed", "42"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = json::parse(a.out);
    const auto& report = doc["result"]["reports"][0];
    CHECK(report["metadata"]["seed"] == 42);
    CHECK(report["models"].size() == 3);

    const auto csv = invoke({"experiment", "linear", "--seed", "3", "--a1", "0.6,20", "--n-total", "400"}, "csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.find("# a1=0.6\nmodel,intercept,slope,train_loss,") != std::string::npos);
    CHECK(csv.out.find("# a1=20\n") != std::string::npos);
    CHECK(invoke({"experiment", "linear", "--seed", "3", "--n-total", "10", "--split", "10"}).code == 1);
}

TEST_CASE("calibrate command") {
    const auto series = synthetic::catchment(900, 11, {90, 0.15, 0.25}, 0.2);
    const TempFile data("hydro.csv", agreeloss::hydro::to_csv(series));
    const auto r = invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal",
                           "2000-04-10:2001-04-30", "--val", "2001-05-01:2002-06-18", "--loss", "se"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["result"]["rows"].size() == 1);

    const auto all = invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal",
                             "2000-04-10:2001-04-30", "--val", "2001-05-01:2002-06-18"},
                            "csv");
    REQUIRE(all.code == 0);
    CHECK(all.out.find("# calibration\nloss,mse,lnr2,lw\n") != std::string::npos);
    CHECK(all.out.find("\nlw,") != std::string::npos);

    CHECK(invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal", "2001-04-30:2000-04-10",
                  "--val", "2001-05-01:2002-06-18"})
              .code == 1);
    CHECK(invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal", "2000-04-10:2001-04-30",
                  "--val", "2001-04-01:2002-06-18"})
              .code == 1);
    CHECK(invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal", "2000-04-10",
                  "--val", "2001-05-01:2002-06-18"})
              .code == 1);
    CHECK(invoke({"calibrate", "--data", data.str(), "--warmup-days", "100", "--cal", "2000-04-10:2001-04-30",
                  "--val", "2001-05-01:2002-06-18", "--loss", "se,mae"})
              .code == 1);
}

TEST_CASE("installed binary honours AGREELOSS_FORMAT") {
    const TempFile two("bin.csv", "z,y\n0,0\n1,2\n");
    const auto out = fs::temp_directory_path() / "agreeloss_cli_bin_out.txt";
    const std::string cmd = std::string("AGREELOSS_FORMAT=csv \"") + AGREELOSS_BINARY + "\" metrics --input \"" +
                            two.str() + "\" --metrics mse > \"" + out.string() + "\"";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::stringstream text;
    text << std::ifstream(out).rdbuf();
    fs::remove(out);
    CHECK(text.str().find("mse,0.5,negative") != std::string::npos);
}
