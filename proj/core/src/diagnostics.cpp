#include "transport/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "transport/errors.hpp"

namespace transport {

double covariate_shift_smd(const StudyDataset& ds) {
  if (ds.n < 2 || ds.m < 1)
    throw InvalidParameter("covariate shift needs n >= 2 and m >= 1");
  double sum[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  for (const auto& r : ds.records) {
    const int g = r.s == Sample::Trial ? 0 : 1;
    sum[g] += r.x;
    count[g] += 1;
  }
  const double mean_trial = sum[0] / count[0];
  const double mean_target = sum[1] / count[1];
  double ss[2] = {0.0, 0.0};
  for (const auto& r : ds.records) {
    const int g = r.s == Sample::Trial ? 0 : 1;
    const double d = r.x - (g == 0 ? mean_trial : mean_target);
    ss[g] += d * d;
  }
  // Size-weighted population variances: (ss0 + ss1) / (n + m).
  const double pooled_var = (ss[0] + ss[1]) / static_cast<double>(ds.n + ds.m);
  if (!(pooled_var > 0.0))
    throw ZeroVariance("pooled covariate variance is zero");
  return (mean_target - mean_trial) / std::sqrt(pooled_var);
}

SupportReport check_support(const StudyDataset& ds) {
  if (ds.n < 1 || ds.m < 1)
    throw InvalidParameter("support check needs records on both sides");
  SupportReport rep;
  bool first_trial = true, first_target = true;
  for (const auto& r : ds.records) {
    if (r.s == Sample::Trial) {
      if (first_trial) {
        rep.trial_min = rep.trial_max = r.x;
        first_trial = false;
      } else {
        rep.trial_min = std::min(rep.trial_min, r.x);
        rep.trial_max = std::max(rep.trial_max, r.x);
      }
    } else {
      if (first_target) {
        rep.target_min = rep.target_max = r.x;
        first_target = false;
      } else {
        rep.target_min = std::min(rep.target_min, r.x);
        rep.target_max = std::max(rep.target_max, r.x);
      }
    }
  }
  rep.transportable_lo = std::max(rep.trial_min, rep.target_min);
  rep.transportable_hi = std::min(rep.trial_max, rep.target_max);
  rep.empty_overlap = rep.transportable_lo > rep.transportable_hi;
  int outside = 0;
  for (const auto& r : ds.records)
    if (r.s == Sample::Target && (r.x < rep.trial_min || r.x > rep.trial_max))
      ++outside;
  rep.out_of_support_fraction = static_cast<double>(outside) / ds.m;
  return rep;
}

PositivityReport check_positivity(const StudyDataset& ds) {
  if (ds.n < 1 || ds.m < 1)
    throw InvalidParameter("positivity check needs records on both sides");
  const EligibilityModel model = fit_eligibility(ds);

  std::vector<double> target_x;
  target_x.reserve(static_cast<std::size_t>(ds.m));
  for (const auto& r : ds.records)
    if (r.s == Sample::Target) target_x.push_back(r.x);
  std::sort(target_x.begin(), target_x.end());

  PositivityReport rep;
  rep.min_eligibility = 1.0;
  const std::size_t m = target_x.size();
  const std::size_t bins = std::min<std::size_t>(10, m);
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * m / bins;
    const std::size_t hi = (b + 1) * m / bins;
    if (lo == hi) continue;
    PositivityBin bin;
    bin.x_lo = target_x[lo];
    bin.x_hi = target_x[hi - 1];
    bin.count = static_cast<int>(hi - lo);
    bin.min_eligibility = 1.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double p = model.probability(target_x[i]);
      bin.min_eligibility = std::min(bin.min_eligibility, p);
      bin.mean_eligibility += p;
    }
    bin.mean_eligibility /= bin.count;
    rep.min_eligibility = std::min(rep.min_eligibility, bin.min_eligibility);
    rep.bins.push_back(bin);
  }
  rep.warning = rep.min_eligibility < 0.01;
  return rep;
}

WeightHealth weight_health(const IpswDetail& detail) {
  if (detail.weights.empty())
    throw InvalidParameter("weight health needs a non-empty weight vector");
  WeightHealth h;
  double sum_w = 0.0, sum_w2 = 0.0;
  for (double w : detail.weights) {
    if (!(w > 0.0)) throw InvalidParameter("weights must be positive");
    sum_w += w;
    sum_w2 += w * w;
    h.max_weight = std::max(h.max_weight, w);
  }
  h.effective_sample_size = sum_w * sum_w / sum_w2;
  const double n = static_cast<double>(detail.weights.size());
  h.extreme = h.effective_sample_size < n / 10.0 || h.max_weight > 0.5 * sum_w;
  return h;
}

DiagnosticsReport run_diagnostics(const StudyDataset& ds) {
  DiagnosticsReport rep;
  rep.smd = covariate_shift_smd(ds);
  rep.support = check_support(ds);
  rep.positivity = check_positivity(ds);
  return rep;
}

}  // namespace transport
