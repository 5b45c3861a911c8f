#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "transport/csv.hpp"
#include "transport/dataset.hpp"
#include "transport/errors.hpp"
#include "transport/estimators.hpp"
#include "transport/json_report.hpp"
#include "transport/replication.hpp"
#include "transport/rng.hpp"
#include "transport/simulation.hpp"

using nlohmann::json;
using transport::Method;
using transport::PropensityPolicy;
using transport::run_estimate_report;
using transport::StudyDataset;

namespace {

const std::vector<Method> kAllMethods = {Method::Naive, Method::InteractionOls,
                                         Method::Ipsw, Method::GFormula};

StudyDataset simulated_dataset(std::uint64_t seed) {
  const auto config = transport::calibrated({});
  transport::RandomSource master(seed);
  transport::RandomSource rng = master.substream(0);
  return transport::generate_dataset(config, rng).dataset;
}

// Three subjects: a complete two-arm trial plus one target record. The
// weighting and outcome-model estimators legitimately fail here.
const char* kTinyCsv = "x,s,a,y\n20,1,1,55.2\n18,1,0,49\n33,0,,\n";

int run_cli(const std::string& args) {
  const char* bin = std::getenv("TRANSPORT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TRANSPORT_BIN must point at the CLI");
  const std::string command = std::string(bin) + " " + args +
                              " >tmp_cli_stdout.txt 2>tmp_cli_stderr.txt";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  return transport::read_text_file(path);
}

}  // namespace

TEST_SUITE_BEGIN("estimate report");

TEST_CASE("the full report carries every stable key") {
  const StudyDataset ds = simulated_dataset(17);
  const auto run = run_estimate_report(ds, kAllMethods, PropensityPolicy{}, 2,
                                       std::uint64_t{17});
  CHECK(run.succeeded == 4);
  CHECK_FALSE(run.any_numeric_error);
  const json root = json::parse(run.json);

  REQUIRE(root.contains("estimates"));
  const json& est = root["estimates"];
  CHECK(est["naive"].contains("value"));
  CHECK(est["interaction_ols"].contains("value"));
  CHECK(est["interaction_ols"].contains("intercept"));
  CHECK(est["interaction_ols"].contains("slope"));
  CHECK(est["ipsw"].contains("value"));
  CHECK(est["ipsw"].contains("max_weight"));
  CHECK(est["ipsw"].contains("ess"));
  CHECK(est["gformula"].contains("value"));
  CHECK(est["gformula"]["degree"] == 2);
  CHECK(est["gformula"].contains("intercept_only_fallback"));

  REQUIRE(root.contains("diagnostics"));
  const json& diag = root["diagnostics"];
  for (const char* key :
       {"smd", "trial_support", "target_support", "transportable_range",
        "empty_overlap", "out_of_support_fraction", "min_eligibility",
        "positivity_warning", "eligibility_bins"})
    CHECK(diag.contains(key));
  CHECK(diag["trial_support"].size() == 2);
  CHECK(diag["eligibility_bins"].size() == 10);
  // the weighting ran, so weight health is attached
  CHECK(diag.contains("max_weight"));
  CHECK(diag.contains("ess"));
  CHECK(diag.contains("extreme_weights"));
  CHECK(diag["max_weight"] == est["ipsw"]["max_weight"]);

  REQUIRE(root.contains("meta"));
  CHECK(root["meta"]["n"] == ds.n);
  CHECK(root["meta"]["m"] == ds.m);
  CHECK(root["meta"]["seed"] == 17);

  // reported values match the library exactly
  CHECK(est["naive"]["value"].get<double>() ==
        transport::estimate_naive(ds).value);
  CHECK(est["ipsw"]["value"].get<double>() == transport::estimate_ipsw(ds).value);
}

TEST_CASE("failed methods become error entries without killing the report") {
  const StudyDataset ds = transport::parse_csv(kTinyCsv);
  const auto run =
      run_estimate_report(ds, kAllMethods, PropensityPolicy{}, 1, std::nullopt);
  CHECK(run.succeeded == 2);
  CHECK_FALSE(run.any_numeric_error);  // the failures are validation-shaped
  const json root = json::parse(run.json);
  const json& est = root["estimates"];
  CHECK(est["naive"]["value"].get<double>() == doctest::Approx(6.2).epsilon(1e-12));
  CHECK(est["interaction_ols"]["value"].get<double>() ==
        doctest::Approx(10.23).epsilon(1e-9));
  CHECK(est["ipsw"]["error"] == "DegenerateTrial");
  CHECK(est["ipsw"].contains("message"));
  CHECK_FALSE(est["ipsw"].contains("value"));
  CHECK(est["gformula"]["error"] == "DegenerateTrial");
  // with 18 < 20 < 33 the membership fit separates, so diagnostics report
  // that instead of aborting the whole run
  CHECK(root["diagnostics"]["error"] == "Separation");
  CHECK(root["meta"]["seed"].is_null());
}

TEST_CASE("method subsets only report what they ran") {
  const StudyDataset ds = simulated_dataset(18);
  const auto run = run_estimate_report(ds, {Method::Naive, Method::GFormula},
                                       PropensityPolicy{}, 1, std::nullopt);
  const json root = json::parse(run.json);
  CHECK(root["estimates"].contains("naive"));
  CHECK(root["estimates"].contains("gformula"));
  CHECK_FALSE(root["estimates"].contains("interaction_ols"));
  CHECK_FALSE(root["estimates"].contains("ipsw"));
  // no weighting ran, so no weight health is attached
  CHECK_FALSE(root["diagnostics"].contains("extreme_weights"));
}

TEST_CASE("diagnostics-only report") {
  const StudyDataset ds = simulated_dataset(19);
  const json root = json::parse(transport::diagnostics_report_json(ds, std::nullopt));
  CHECK(root.contains("diagnostics"));
  CHECK(root.contains("meta"));
  CHECK_FALSE(root.contains("estimates"));
  CHECK(root["diagnostics"]["smd"].get<double>() > 0.0);
}

TEST_CASE("replication report schema") {
  const auto summary = transport::run_replications(transport::calibrated({}), 6, 9);
  const json root = json::parse(transport::replication_report_json(summary));
  CHECK(root["study"]["replications"] == 6);
  CHECK(root["study"]["master_seed"] == 9);
  CHECK(root["study"]["true_tau"].get<double>() == doctest::Approx(16.7));
  for (const char* key : {"naive", "interaction_ols", "ipsw", "gformula"}) {
    const json& entry = root["methods"][key];
    for (const char* stat : {"median", "q25", "q75", "mean", "bias", "rmse"})
      CHECK(entry.contains(stat));
    CHECK(entry["estimates"].size() == 6);
  }
  CHECK(root["retries"].is_array());
}

TEST_CASE("error payload shape") {
  const json root = json::parse(transport::error_json("Separation", "boom"));
  CHECK(root["error"] == "Separation");
  CHECK(root["message"] == "boom");
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("command line");

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("simulate --help") == 0);
}

TEST_CASE("simulate writes a deterministic thousand-record study") {
  CHECK(run_cli("simulate --seed 7 --out tmp_cli_a.csv") == 0);
  CHECK(run_cli("simulate --seed 7 --out tmp_cli_b.csv") == 0);
  const std::string first = slurp("tmp_cli_a.csv");
  CHECK(first == slurp("tmp_cli_b.csv"));

  const StudyDataset ds = transport::parse_csv(first);
  CHECK(ds.n + ds.m == 1000);

  // the CLI draws the dataset from substream 0 of the master seed
  CHECK(first == transport::serialize_csv(simulated_dataset(7)));

  CHECK(run_cli("simulate --seed 8 --out tmp_cli_c.csv") == 0);
  CHECK_FALSE(first == slurp("tmp_cli_c.csv"));
}

TEST_CASE("simulate then estimate then diagnose round trip") {
  REQUIRE(run_cli("simulate --seed 21 --out tmp_cli_study.csv") == 0);
  REQUIRE(run_cli("estimate --data tmp_cli_study.csv --out tmp_cli_est.json") == 0);
  const json est = json::parse(slurp("tmp_cli_est.json"));
  const StudyDataset ds = transport::load_csv_file("tmp_cli_study.csv");
  CHECK(est["estimates"]["naive"]["value"].get<double>() ==
        transport::estimate_naive(ds).value);
  CHECK(est["estimates"]["gformula"]["degree"] == 1);  // CLI default
  CHECK(est["meta"]["n"] == ds.n);

  REQUIRE(run_cli("diagnose --data tmp_cli_study.csv --out tmp_cli_diag.json") == 0);
  const json diag = json::parse(slurp("tmp_cli_diag.json"));
  CHECK(diag["diagnostics"]["smd"].get<double>() > 0.0);
  CHECK_FALSE(diag.contains("estimates"));
}

TEST_CASE("estimate respects method selection and degree") {
  REQUIRE(run_cli("simulate --seed 22 --out tmp_cli_study2.csv") == 0);
  REQUIRE(run_cli("estimate --data tmp_cli_study2.csv --methods naive,ols "
                  "--out tmp_cli_est2.json") == 0);
  const json est = json::parse(slurp("tmp_cli_est2.json"));
  CHECK(est["estimates"].contains("naive"));
  CHECK(est["estimates"].contains("interaction_ols"));
  CHECK_FALSE(est["estimates"].contains("ipsw"));

  REQUIRE(run_cli("estimate --data tmp_cli_study2.csv --methods gformula "
                  "--degree 2 --out tmp_cli_est3.json") == 0);
  const json est3 = json::parse(slurp("tmp_cli_est3.json"));
  CHECK(est3["estimates"]["gformula"]["degree"] == 2);

  CHECK(run_cli("estimate --data tmp_cli_study2.csv --methods sorcery "
                "--out tmp_cli_est4.json") == 2);
}

TEST_CASE("replicate is byte deterministic including the picture") {
  {
    std::ofstream config("tmp_cli_small.conf");
    config << "population_size = 300\n";
  }
  const std::string base =
      "replicate --config tmp_cli_small.conf --reps 8 --seed 5 ";
  REQUIRE(run_cli(base + "--out tmp_cli_r1.json --svg tmp_cli_r1.svg") == 0);
  REQUIRE(run_cli(base + "--out tmp_cli_r2.json --svg tmp_cli_r2.svg") == 0);
  REQUIRE(run_cli(base + "--threads 3 --out tmp_cli_r3.json --svg tmp_cli_r3.svg") ==
          0);
  const std::string r1 = slurp("tmp_cli_r1.json");
  CHECK(r1 == slurp("tmp_cli_r2.json"));
  CHECK(r1 == slurp("tmp_cli_r3.json"));
  const std::string svg1 = slurp("tmp_cli_r1.svg");
  CHECK(svg1 == slurp("tmp_cli_r2.svg"));
  CHECK(svg1 == slurp("tmp_cli_r3.svg"));
  CHECK(svg1.rfind("<svg", 0) == 0);
  const json rep = json::parse(r1);
  CHECK(rep["study"]["replications"] == 8);
  CHECK(rep["methods"]["naive"]["estimates"].size() == 8);
}

TEST_CASE("partial estimation failures still succeed with error entries") {
  {
    std::ofstream tiny("tmp_cli_tiny.csv");
    tiny << kTinyCsv;
  }
  CHECK(run_cli("estimate --data tmp_cli_tiny.csv --out tmp_cli_tiny.json") == 0);
  const json est = json::parse(slurp("tmp_cli_tiny.json"));
  CHECK(est["estimates"]["naive"].contains("value"));
  CHECK(est["estimates"]["ipsw"]["error"] == "DegenerateTrial");
}

TEST_CASE("validation problems exit with code two") {
  {
    std::ofstream bad("tmp_cli_bad.csv");
    bad << "x,s,a,y\n1,1\n";
  }
  CHECK(run_cli("estimate --data tmp_cli_bad.csv --out tmp_cli_bad.json") == 2);
  CHECK(slurp("tmp_cli_stderr.txt").find("MalformedRow") != std::string::npos);

  {
    std::ofstream targets("tmp_cli_targets.csv");
    targets << "x,s,a,y\n5,0,,\n8,0,,\n";
  }
  CHECK(run_cli("estimate --data tmp_cli_targets.csv --out tmp_cli_t.json") == 2);

  {
    std::ofstream conf("tmp_cli_bad.conf");
    conf << "mystery = 1\n";
  }
  CHECK(run_cli("simulate --config tmp_cli_bad.conf --out tmp_cli_x.csv") == 2);
  CHECK(slurp("tmp_cli_stderr.txt").find("ConfigError") != std::string::npos);

  CHECK(run_cli("estimate --data no_such_file.csv --out tmp_cli_y.json") == 2);
  CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_CASE("numerical failures exit with code three") {
  // Trial covariates 1..4, targets far away at 50 and 60: the membership
  // fit separates, which is a numerical condition, not an input error.
  {
    std::ofstream sep("tmp_cli_sep.csv");
    sep << "x,s,a,y\n1,1,1,5\n2,1,1,6\n3,1,0,4\n4,1,0,5\n50,0,,\n60,0,,\n";
  }
  CHECK(run_cli("estimate --data tmp_cli_sep.csv --methods ipsw "
                "--out tmp_cli_sep.json") == 3);
  CHECK(slurp("tmp_cli_stderr.txt").find("Separation") != std::string::npos);

  // A three-person population can never feed the degree-1 outcome model.
  {
    std::ofstream conf("tmp_cli_tiny.conf");
    conf << "population_size = 3\ngformula_degree = 1\n";
  }
  CHECK(run_cli("replicate --config tmp_cli_tiny.conf --reps 2 --seed 1 "
                "--out tmp_cli_fail.json") == 3);
  CHECK(slurp("tmp_cli_stderr.txt").find("ReplicationFailed") != std::string::npos);
}

TEST_SUITE_END();
