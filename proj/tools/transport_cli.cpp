// Command-line front end: simulate / estimate / diagnose / replicate.
// Exit codes: 0 success, 2 input or validation problem, 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "transport/csv.hpp"
#include "transport/errors.hpp"
#include "transport/json_report.hpp"
#include "transport/replication.hpp"
#include "transport/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

transport::SimulationConfig config_from(const std::string& path) {
  if (path.empty()) return transport::SimulationConfig{};
  return transport::load_config_file(path);
}

std::vector<transport::Method> parse_methods(const std::string& csv) {
  std::vector<transport::Method> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    const std::string token = csv.substr(start, comma - start);
    start = comma + 1;
    if (token.empty()) continue;
    if (token == "naive") {
      out.push_back(transport::Method::Naive);
    } else if (token == "ols" || token == "interaction_ols") {
      out.push_back(transport::Method::InteractionOls);
    } else if (token == "ipsw") {
      out.push_back(transport::Method::Ipsw);
    } else if (token == "gformula") {
      out.push_back(transport::Method::GFormula);
    } else {
      throw transport::InvalidParameter(
          "unknown method '" + token +
          "' (expected naive, ols, ipsw or gformula)");
    }
  }
  if (out.empty()) throw transport::InvalidParameter("no methods selected");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"causal transport toolkit: simulate studies, estimate average "
               "treatment effects, check transportability"};
  app.require_subcommand(1);

  std::string config_path, data_path, out_path, svg_path, methods_csv;
  std::uint64_t seed = 1;
  double e1 = 0.5;
  int degree = 1;
  int reps = 50;
  int threads = 1;

  auto* simulate = app.add_subcommand("simulate", "generate one study dataset as CSV");
  simulate->add_option("--config", config_path, "key = value config file");
  simulate->add_option("--seed", seed, "master seed (dataset uses substream 0)");
  simulate->add_option("--out", out_path, "output CSV path")->required();

  auto* estimate = app.add_subcommand("estimate", "estimate effects from a CSV dataset");
  estimate->add_option("--data", data_path, "input CSV path")->required();
  estimate->add_option("--methods", methods_csv,
                       "comma list of naive,ols,ipsw,gformula (default all)");
  estimate->add_option("--e1", e1, "randomization probability of treatment");
  estimate->add_option("--degree", degree, "outcome model polynomial degree");
  estimate->add_option("--out", out_path, "output JSON path")->required();

  auto* diagnose = app.add_subcommand("diagnose", "transportability diagnostics only");
  diagnose->add_option("--data", data_path, "input CSV path")->required();
  diagnose->add_option("--out", out_path, "output JSON path")->required();

  auto* replicate = app.add_subcommand("replicate", "run the repeated-study comparison");
  replicate->add_option("--config", config_path, "key = value config file");
  replicate->add_option("--reps", reps, "number of replications");
  replicate->add_option("--seed", seed, "master seed");
  replicate->add_option("--threads", threads, "worker threads (any count, same result)");
  replicate->add_option("--out", out_path, "output JSON path")->required();
  replicate->add_option("--svg", svg_path, "also write a box plot SVG here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (simulate->parsed()) {
      const auto config = transport::calibrated(config_from(config_path));
      transport::RandomSource master(seed);
      transport::RandomSource rng = master.substream(0);
      const auto study = transport::generate_dataset(config, rng);
      transport::write_text_file(out_path, transport::serialize_csv(study.dataset));
    } else if (estimate->parsed()) {
      const auto dataset = transport::load_csv_file(data_path);
      const auto methods = methods_csv.empty()
                               ? std::vector<transport::Method>{
                                     transport::Method::Naive,
                                     transport::Method::InteractionOls,
                                     transport::Method::Ipsw,
                                     transport::Method::GFormula}
                               : parse_methods(methods_csv);
      const auto run = transport::run_estimate_report(
          dataset, methods, transport::PropensityPolicy{e1}, degree, std::nullopt);
      transport::write_text_file(out_path, run.json);
      if (run.succeeded == 0) {
        std::cerr << transport::error_json(run.first_error_name,
                                           run.first_error_message);
        return run.any_numeric_error ? kExitNumeric : kExitValidation;
      }
    } else if (diagnose->parsed()) {
      const auto dataset = transport::load_csv_file(data_path);
      transport::write_text_file(
          out_path, transport::diagnostics_report_json(dataset, std::nullopt));
    } else if (replicate->parsed()) {
      const auto config = transport::calibrated(config_from(config_path));
      const auto summary =
          transport::run_replications(config, reps, seed, threads);
      transport::write_text_file(out_path,
                                 transport::replication_report_json(summary));
      if (!svg_path.empty())
        transport::write_text_file(svg_path,
                                   transport::render_boxplot_svg(summary));
    }
  } catch (const transport::NumericError& e) {
    std::cerr << transport::error_json(e.name(), e.what());
    return kExitNumeric;
  } catch (const transport::Error& e) {
    std::cerr << transport::error_json(e.name(), e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << transport::error_json("Internal", e.what());
    return 1;
  }
  return kExitOk;
}
