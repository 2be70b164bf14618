#include "doctest.h"

#include "cli.hpp"
#include "dcurve/ingest.hpp"
#include "dcurve/report.hpp"
#include "support.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace dcurve;
using namespace dcurve::testing;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dcurve");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "dcurve-test-cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

const std::string d0_csv = data_path("d0.csv");

} // namespace

TEST_CASE("curves on the D0 fixture at one threshold") {
    const auto r = run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "m1", "--grid",
                        "0.5:0.5:0.01"});
    REQUIRE(r.code == 0);
    const auto doc = parse_report_json(r.out);
    REQUIRE(doc.models.size() == 1);
    REQUIRE(doc.models[0].points.size() == 1);
    CHECK(doc.models[0].points[0].nb_model == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(doc.models[0].points[0].ppv == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(doc.metadata.command == "curves");
    CHECK(doc.metadata.input_digest == file_digest(d0_csv));
}

TEST_CASE("global options may follow the subcommand") {
    const auto r = run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "m1", "m2",
                        "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("model,t,tp,fp", 0) == 0);
    // Header plus 50 rows for each model.
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 101);
}

TEST_CASE("compare reports a winner per threshold") {
    const auto r = run({"compare", "--input", d0_csv, "--outcome", "y", "--models", "m1", "m2",
                        "--grid", "0.5:0.5:0.1"});
    REQUIRE(r.code == 0);
    const auto doc = parse_report_json(r.out);
    REQUIRE(doc.comparisons.size() == 1);
    CHECK(doc.comparisons[0].points[0].winner == Winner::model1);
    CHECK(*doc.comparisons[0].points[0].ppv_superiority_ref == doctest::Approx(0.4));

    const auto one = run({"compare", "--input", d0_csv, "--outcome", "y", "--models", "m1"});
    CHECK(one.code == cli::usage);
}

TEST_CASE("bounds") {
    SUBCASE("zero net benefit gives the two-point set") {
        const auto r = run({"bounds", "--nb", "0", "--prevalence", "0.4", "--t", "0.3"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["kind"] == "zero_nb_two_point");
        CHECK(j["feasible_set"] == json::array({0.0, 0.3}));
    }
    SUBCASE("positive net benefit") {
        const auto r = run({"bounds", "--nb", "0.1", "--prevalence", "0.4", "--t", "0.5"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["upper"] == 1.0);
        CHECK(j.contains("feasible_interval"));
    }
    SUBCASE("infeasible inputs are data errors") {
        CHECK(run({"bounds", "--nb", "0.5", "--prevalence", "0.4", "--t", "0.5"}).code == cli::data);
    }
    SUBCASE("csv") {
        const auto r = run({"bounds", "--nb", "0", "--prevalence", "0.4", "--t", "0.3", "--format", "csv"});
        CHECK(r.out.find("zero_nb_two_point") != std::string::npos);
    }
}

TEST_CASE("bootstrap adds bands and is reproducible") {
    const std::vector<std::string> args = {"bootstrap", "--input", d0_csv, "--outcome", "y", "--models",
                                           "m1", "--replicates", "200", "--seed", "3"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == run(args).out);
    const auto doc = parse_report_json(a.out);
    REQUIRE(doc.bands.size() == 1);
    CHECK(doc.bands[0].spec.replicates == 200);
    CHECK(doc.bands[0].spec.seed == 3);
    CHECK(doc.bands[0].band.points.size() == 50);
    CHECK(run({"bootstrap", "--input", d0_csv, "--outcome", "y", "--models", "m1", "--level", "1.5"})
              .code == cli::data);
}

TEST_CASE("demo-miscalibration flags a high-threshold region") {
    const auto r = run({"demo-miscalibration", "--shift", "1.0", "--n", "20000", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const double prevalence = j["prevalence"];
    bool found = false;
    for (const auto& region : j["regions"]["worse_than_treat_none"]) {
        if (region[1].get<double>() > prevalence) found = true;
    }
    CHECK(found);
    CHECK(j["spec"]["distribution"] == "beta:2:5");
    CHECK(run({"demo-miscalibration"}).code == cli::usage);
    CHECK(run({"demo-miscalibration", "--shift", "1", "--distribution", "gamma"}).code == cli::usage);
}

TEST_CASE("--out and --svg write files") {
    const auto report = scratch("report.json");
    const auto prefix = scratch("plot").string();
    const auto r = run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "m1", "--out",
                        report.string(), "--svg", prefix});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(parse_report_json(read_file(report)).models.size() == 1);
    for (const char* panel : {"decision", "ppv", "calibration"}) {
        const auto svg = read_file(prefix + "-" + panel + ".svg");
        CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({"--help"}).code == cli::ok);
    CHECK(run({"curves", "--outcome", "y", "--models", "m1"}).code == cli::usage);
    CHECK(run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "m1", "--format", "xml"})
              .code == cli::usage);
    CHECK(run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "m1", "--grid", "0.5"})
              .code == cli::usage);
    CHECK(run({"curves", "--input", d0_csv, "--outcome", "y", "--models", "nope"}).code == cli::data);
    CHECK(run({"curves", "--input", "/nonexistent.csv", "--outcome", "y", "--models", "m1"}).code ==
          cli::data);

    const auto bad = scratch("bad.csv");
    write_file_atomic(bad, "y,p\n1,0.2\n0,0.4\n1,1.2\n");
    const auto r = run({"curves", "--input", bad.string(), "--outcome", "y", "--models", "p"});
    CHECK(r.code == cli::data);
    CHECK(r.err.find("row 3") != std::string::npos);
    CHECK(r.err.find("'p'") != std::string::npos);
}
