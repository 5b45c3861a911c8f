#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "transport/errors.hpp"
#include "transport/estimators.hpp"
#include "transport/replication.hpp"
#include "transport/rng.hpp"
#include "transport/simulation.hpp"
#include "transport/svg.hpp"

using transport::calibrated;
using transport::Method;
using transport::quantile;
using transport::ReplicationSummary;
using transport::run_replications;
using transport::SimulationConfig;

namespace {

// Small flat-selection population: most studies work, a few draw an arm too
// small for the degree-1 outcome model and must be retried.
SimulationConfig flaky_config() {
  SimulationConfig config;
  config.population_size = 24;
  config.selection_intercept = 0.0;
  config.selection_slope = 0.0;
  config.gformula_degree = 1;
  return calibrated(config);
}

}  // namespace

TEST_SUITE_BEGIN("quantiles");

TEST_CASE("order-statistic interpolation on 1..100") {
  std::vector<double> values;
  for (int i = 1; i <= 100; ++i) values.push_back(static_cast<double>(i));
  CHECK(quantile(values, 0.25) == doctest::Approx(25.75).epsilon(1e-12));
  CHECK(quantile(values, 0.5) == doctest::Approx(50.5).epsilon(1e-12));
  CHECK(quantile(values, 0.75) == doctest::Approx(75.25).epsilon(1e-12));
  CHECK(quantile(values, 0.0) == 1.0);
  CHECK(quantile(values, 1.0) == 100.0);
}

TEST_CASE("small inputs and unsorted order") {
  CHECK(quantile({3.0}, 0.25) == 3.0);
  CHECK(quantile({2.0, 1.0}, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(quantile({9.0, 1.0, 5.0}, 0.5) == 5.0);
  CHECK_THROWS_AS(quantile({}, 0.5), transport::InvalidParameter);
  CHECK_THROWS_AS(quantile({1.0}, -0.1), transport::InvalidParameter);
  CHECK_THROWS_AS(quantile({1.0}, 1.1), transport::InvalidParameter);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("replication");

TEST_CASE("a single replication equals the direct pipeline on substream zero") {
  const SimulationConfig config = calibrated({});
  const std::uint64_t seed = 2718;
  const ReplicationSummary summary = run_replications(config, 1, seed);

  transport::RandomSource master(seed);
  transport::RandomSource sub = master.substream(0);
  const auto study = transport::generate_dataset(config, sub);
  CHECK(summary.of(Method::Naive).estimates[0] ==
        transport::estimate_naive(study.dataset).value);
  CHECK(summary.of(Method::InteractionOls).estimates[0] ==
        transport::estimate_interaction_ols(study.dataset).value);
  CHECK(summary.of(Method::Ipsw).estimates[0] ==
        transport::estimate_ipsw(study.dataset).value);
  CHECK(summary.of(Method::GFormula).estimates[0] ==
        transport::estimate_gformula(study.dataset, config.gformula_degree).value);
  CHECK(summary.retries.empty());
  CHECK(summary.replications == 1);
  CHECK(summary.master_seed == seed);
  CHECK(summary.true_tau == 16.7);
}

TEST_CASE("summary statistics are internally consistent") {
  const ReplicationSummary summary = run_replications(calibrated({}), 20, 11);
  for (const auto& ms : summary.per_method) {
    REQUIRE(ms.estimates.size() == 20);
    CHECK(ms.q25 <= ms.median);
    CHECK(ms.median <= ms.q75);
    CHECK(ms.rmse >= std::fabs(ms.bias) - 1e-12);
    CHECK(ms.median == doctest::Approx(quantile(ms.estimates, 0.5)).epsilon(1e-12));
    double sum = 0.0;
    for (double v : ms.estimates) sum += v;
    CHECK(ms.mean == doctest::Approx(sum / 20.0).epsilon(1e-12));
    CHECK(ms.bias == doctest::Approx(ms.mean - 16.7).epsilon(1e-12));
  }
}

TEST_CASE("thread count never changes the result") {
  const SimulationConfig config = flaky_config();
  const ReplicationSummary serial = run_replications(config, 16, 5, 1);
  const ReplicationSummary parallel = run_replications(config, 16, 5, 4);
  const ReplicationSummary oversubscribed = run_replications(config, 16, 5, 64);
  for (const ReplicationSummary* other : {&parallel, &oversubscribed}) {
    for (std::size_t m = 0; m < 4; ++m) {
      REQUIRE(other->per_method[m].estimates == serial.per_method[m].estimates);
      CHECK(other->per_method[m].median == serial.per_method[m].median);
      CHECK(other->per_method[m].rmse == serial.per_method[m].rmse);
    }
    REQUIRE(other->retries.size() == serial.retries.size());
    for (std::size_t i = 0; i < serial.retries.size(); ++i) {
      CHECK(other->retries[i].slot == serial.retries[i].slot);
      CHECK(other->retries[i].attempt == serial.retries[i].attempt);
      CHECK(other->retries[i].substream == serial.retries[i].substream);
      CHECK(other->retries[i].error == serial.retries[i].error);
    }
  }
}

TEST_CASE("failed attempts are logged with their substream and retried") {
  const SimulationConfig config = flaky_config();
  // Chosen so at least one slot needs a re-draw; behavior is fully
  // deterministic given the seed.
  ReplicationSummary summary = run_replications(config, 40, 31337);
  CHECK_FALSE(summary.retries.empty());
  std::set<std::pair<int, int>> seen;
  int last_slot = -1;
  for (const auto& retry : summary.retries) {
    CHECK(retry.slot >= 0);
    CHECK(retry.slot < 40);
    CHECK(retry.attempt >= 0);
    CHECK(retry.attempt < 4);
    CHECK(retry.substream ==
          static_cast<std::uint64_t>(retry.attempt) * 40 +
              static_cast<std::uint64_t>(retry.slot));
    CHECK_FALSE(retry.error.empty());
    CHECK(seen.insert({retry.slot, retry.attempt}).second);
    CHECK(retry.slot >= last_slot);  // concatenated in slot order
    last_slot = retry.slot;
  }
  // Every logged failure was eventually recovered: all estimates are finite.
  for (const auto& ms : summary.per_method)
    for (double v : ms.estimates) CHECK(std::isfinite(v));
}

TEST_CASE("a hopeless configuration fails loudly after four attempts") {
  SimulationConfig config;
  config.population_size = 3;  // can never give both arms three records
  config.selection_intercept = 0.0;
  config.selection_slope = 0.0;
  config.gformula_degree = 1;
  config = calibrated(config);
  CHECK_THROWS_AS(run_replications(config, 2, 1), transport::ReplicationFailed);
  CHECK_THROWS_AS(run_replications(config, 2, 1, 2), transport::ReplicationFailed);
}

TEST_CASE("replication count is validated") {
  CHECK_THROWS_AS(run_replications(calibrated({}), 0, 1), transport::InvalidParameter);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("svg");

TEST_CASE("rendering is deterministic and contains the expected structure") {
  const ReplicationSummary summary = run_replications(calibrated({}), 10, 404);
  const std::string svg = transport::render_boxplot_svg(summary);
  CHECK(svg == transport::render_boxplot_svg(summary));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  for (const char* label : {"naive", "interaction OLS", "IPSW", "g-formula"})
    CHECK(svg.find(label) != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // reference line
}

TEST_CASE("two identical studies render byte-identical pictures") {
  const ReplicationSummary a = run_replications(calibrated({}), 8, 777);
  const ReplicationSummary b = run_replications(calibrated({}), 8, 777);
  CHECK(transport::render_boxplot_svg(a) == transport::render_boxplot_svg(b));
}

TEST_CASE("too few replications cannot be drawn") {
  ReplicationSummary summary;
  summary.replications = 3;
  CHECK_THROWS_AS(transport::render_boxplot_svg(summary),
                  transport::InsufficientReplications);
}

TEST_SUITE_END();
