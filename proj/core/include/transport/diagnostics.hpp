#pragma once

#include <optional>
#include <vector>

#include "transport/dataset.hpp"
#include "transport/estimators.hpp"

namespace transport {

struct SupportReport {
  double trial_min = 0.0, trial_max = 0.0;
  double target_min = 0.0, target_max = 0.0;
  // Intersection of the two supports; when the supports are disjoint
  // lo > hi and empty_overlap is set.
  double transportable_lo = 0.0, transportable_hi = 0.0;
  bool empty_overlap = false;
  // Fraction of target records with x outside the trial support.
  double out_of_support_fraction = 0.0;
};

struct PositivityBin {
  double x_lo = 0.0, x_hi = 0.0;
  int count = 0;
  double min_eligibility = 0.0;
  double mean_eligibility = 0.0;
};

struct PositivityReport {
  double min_eligibility = 0.0;  // min fitted P(trial | x) over target records
  std::vector<PositivityBin> bins;  // equal-count bins of target x, low to high
  bool warning = false;  // min_eligibility < 0.01, weights likely extreme
};

struct WeightHealth {
  double max_weight = 0.0;
  double effective_sample_size = 0.0;
  bool extreme = false;  // ESS < n/10 or one weight holds half the total
};

struct DiagnosticsReport {
  double smd = 0.0;
  SupportReport support;
  PositivityReport positivity;
  std::optional<WeightHealth> weights;  // present when the weighting ran
};

// (mean target x - mean trial x) / pooled sd, where the pooled variance is
// the size-weighted average of the per-group population variances. Positive
// when the target is more experienced. Needs n >= 2 and m >= 1;
// ZeroVariance when the pooled sd is 0.
double covariate_shift_smd(const StudyDataset& dataset);

// Single pass; needs n >= 1 and m >= 1.
SupportReport check_support(const StudyDataset& dataset);

// Fits the eligibility model and summarizes fitted membership probability
// over the target records. Separation propagates.
PositivityReport check_positivity(const StudyDataset& dataset);

WeightHealth weight_health(const IpswDetail& detail);

// smd + support + positivity in one report; weights stay empty here and are
// attached by callers that also ran the weighting estimator.
DiagnosticsReport run_diagnostics(const StudyDataset& dataset);

}  // namespace transport
