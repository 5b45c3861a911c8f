#pragma once

#include <string>
#include <vector>

#include "transport/dataset.hpp"
#include "transport/rng.hpp"

namespace transport {

// Study generator settings. The covariate is negative binomial
// (mean/dispersion form), trial membership follows a logit-linear curve in
// the covariate, treatment is randomized at propensity_e1 inside the trial,
// and the conditional effect decays exponentially:
//   tau(x) = effect_scale * exp(-x / effect_decay).
// effect_scale is not set directly; calibrate_effect_scale() solves it so
// that the population average of tau(X) equals target_ate.
struct SimulationConfig {
  int population_size = 1000;
  double covariate_mean = 10.0;
  double covariate_dispersion = 3.0;
  double selection_intercept = 0.6;
  double selection_slope = -0.3;
  double effect_scale = 0.0;  // 0 = not yet calibrated
  double effect_decay = 12.0;
  double target_ate = 16.7;
  double baseline = 50.0;
  double noise_sd = 5.0;
  double propensity_e1 = 0.5;
  // Outcome-model degree used by the replication study. Degree 2 is the
  // default because a straight line extrapolates poorly into the covariate
  // tail under a convex decaying effect; the estimator API itself defaults
  // to degree 1 for standalone use.
  int gformula_degree = 2;
};

// InvalidParameter when any field is out of range.
void validate_config(const SimulationConfig& config);

// E[exp(-X / lambda)] for X negative binomial, by exact summation of the
// probability mass until the remaining tail is below 1e-12.
// NonConvergentTail if 10^6 terms do not get there.
double decay_expectation(double mean, double dispersion, double lambda);

// Solves effect_scale from target_ate: scale = target / E[exp(-X/lambda)].
double calibrate_effect_scale(const SimulationConfig& config);

// validate_config + effect_scale filled in.
SimulationConfig calibrated(SimulationConfig config);

// tau(x) for a calibrated config.
double true_cate(double x, const SimulationConfig& config);

struct GeneratedStudy {
  StudyDataset dataset;
  // tau(x_i) for every record, trial and target alike, in record order.
  std::vector<double> true_effects;
};

// One synthetic study population. Draw order per subject is fixed
// (covariate, membership, then arm and outcome for trial subjects), so a
// given (config, rng state) pins the dataset exactly.
GeneratedStudy generate_dataset(const SimulationConfig& config, RandomSource& rng);

// Flat `key = value` text, '#' starts a comment, unknown or repeated keys
// are ConfigError. Keys match the SimulationConfig field names.
SimulationConfig parse_config_text(const std::string& text);
SimulationConfig load_config_file(const std::string& path);

}  // namespace transport
