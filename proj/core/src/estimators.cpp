#include "transport/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "transport/errors.hpp"

namespace transport {

namespace {

void require_target(const StudyDataset& ds, const char* method) {
  if (ds.m < 1)
    throw MissingTarget(std::string(method) + " needs at least one target record");
}

double target_mean_x(const StudyDataset& ds) {
  double sum = 0.0;
  for (const auto& r : ds.records)
    if (r.s == Sample::Target) sum += r.x;
  return sum / static_cast<double>(ds.m);
}

struct ArmCounts {
  int treated = 0;
  int control = 0;
};

ArmCounts arm_counts(const StudyDataset& ds) {
  ArmCounts c;
  for (const auto& r : ds.records)
    if (r.s == Sample::Trial) (*r.a == Arm::Treated ? c.treated : c.control) += 1;
  return c;
}

}  // namespace

EligibilityModel fit_eligibility(const StudyDataset& dataset) {
  std::vector<double> xs;
  std::vector<int> labels;
  xs.reserve(dataset.records.size());
  labels.reserve(dataset.records.size());
  for (const auto& r : dataset.records) {
    xs.push_back(r.x);
    labels.push_back(r.s == Sample::Trial ? 1 : 0);
  }
  EligibilityModel model;
  model.logistic = fit_logistic(xs, labels);
  model.n = dataset.n;
  model.m = dataset.m;
  return model;
}

AteEstimate estimate_naive(const StudyDataset& dataset) {
  double sum_t = 0.0, sum_c = 0.0;
  int n_t = 0, n_c = 0;
  for (const auto& r : dataset.records) {
    if (r.s != Sample::Trial) continue;
    if (*r.a == Arm::Treated) {
      sum_t += *r.y;
      ++n_t;
    } else {
      sum_c += *r.y;
      ++n_c;
    }
  }
  if (n_t < 1 || n_c < 1)
    throw DegenerateTrial("difference in means needs a record in each arm");
  NaiveDetail detail{sum_t / n_t, sum_c / n_c};
  return {Method::Naive, detail.mean_treated - detail.mean_control, detail};
}

AteEstimate estimate_interaction_ols(const StudyDataset& dataset) {
  require_target(dataset, "interaction model");
  const ArmCounts arms = arm_counts(dataset);
  if (arms.treated < 1 || arms.control < 1)
    throw DegenerateTrial("interaction model needs a record in each arm");

  std::vector<std::vector<double>> rows;
  std::vector<double> ys;
  rows.reserve(static_cast<std::size_t>(dataset.n));
  ys.reserve(static_cast<std::size_t>(dataset.n));
  for (const auto& r : dataset.records) {
    if (r.s != Sample::Trial) continue;
    rows.push_back({1.0, (*r.a == Arm::Treated ? r.x : 0.0)});
    ys.push_back(*r.y);
  }
  const LinearFit fit = fit_ols(rows, ys);
  InteractionOlsDetail detail{fit.coefficients[0], fit.coefficients[1],
                              target_mean_x(dataset)};
  return {Method::InteractionOls, detail.slope * detail.target_mean_x, detail};
}

AteEstimate estimate_ipsw_with_odds(const StudyDataset& dataset,
                                    const std::vector<double>& trial_odds,
                                    const PropensityPolicy& policy) {
  require_target(dataset, "inverse-odds weighting");
  if (!(policy.e1 > 0.0 && policy.e1 < 1.0))
    throw InvalidParameter("treatment propensity must lie strictly inside (0,1)");
  const ArmCounts arms = arm_counts(dataset);
  if (arms.treated < 2 || arms.control < 2)
    throw DegenerateTrial("inverse-odds weighting needs two records per arm");
  if (trial_odds.size() != static_cast<std::size_t>(dataset.n))
    throw DimensionMismatch("one eligibility odds value per trial record required");

  const double n = static_cast<double>(dataset.n);
  const double m = static_cast<double>(dataset.m);
  IpswDetail detail;
  detail.weights.reserve(trial_odds.size());
  double total = 0.0;
  std::size_t k = 0;
  for (const auto& r : dataset.records) {
    if (r.s != Sample::Trial) continue;
    const double alpha = trial_odds[k++];
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw InvalidParameter("eligibility odds must be positive and finite");
    const double contrast = *r.a == Arm::Treated ? 1.0 / policy.e1
                                                 : -1.0 / (1.0 - policy.e1);
    total += (n / m) * (*r.y / alpha) * contrast;
    detail.weights.push_back((n / m) / alpha);
  }
  double sum_w = 0.0, sum_w2 = 0.0;
  for (double w : detail.weights) {
    sum_w += w;
    sum_w2 += w * w;
    detail.max_weight = std::max(detail.max_weight, w);
  }
  detail.effective_sample_size = sum_w * sum_w / sum_w2;
  return {Method::Ipsw, total / n, std::move(detail)};
}

AteEstimate estimate_ipsw(const StudyDataset& dataset,
                          const PropensityPolicy& policy) {
  require_target(dataset, "inverse-odds weighting");
  const ArmCounts arms = arm_counts(dataset);
  if (arms.treated < 2 || arms.control < 2)
    throw DegenerateTrial("inverse-odds weighting needs two records per arm");
  const EligibilityModel model = fit_eligibility(dataset);
  std::vector<double> odds;
  odds.reserve(static_cast<std::size_t>(dataset.n));
  for (const auto& r : dataset.records)
    if (r.s == Sample::Trial) odds.push_back(model.alpha_hat(r.x));
  return estimate_ipsw_with_odds(dataset, odds, policy);
}

AteEstimate estimate_gformula(const StudyDataset& dataset, int basis_degree) {
  if (basis_degree < 0) throw InvalidParameter("basis degree must be >= 0");
  require_target(dataset, "outcome modeling");

  std::vector<double> xs[2], ys[2];
  for (const auto& r : dataset.records) {
    if (r.s != Sample::Trial) continue;
    const int arm = *r.a == Arm::Treated ? 1 : 0;
    xs[arm].push_back(r.x);
    ys[arm].push_back(*r.y);
  }
  GFormulaDetail detail;
  for (int arm = 0; arm < 2; ++arm) {
    if (static_cast<int>(xs[arm].size()) <= basis_degree + 1)
      throw DegenerateTrial("each trial arm needs more than degree + 1 records");
    const auto [lo, hi] = std::minmax_element(xs[arm].begin(), xs[arm].end());
    int degree = basis_degree;
    if (*lo == *hi && basis_degree > 0) {
      // Constant covariate: the arm mean is still a valid outcome model.
      degree = 0;
      detail.intercept_only_fallback = true;
    }
    LinearFit fit = fit_polynomial(xs[arm], ys[arm], degree);
    (arm == 1 ? detail.treated : detail.control) = std::move(fit);
  }
  double sum = 0.0;
  for (const auto& r : dataset.records)
    if (r.s == Sample::Target)
      sum += predict(detail.treated, r.x) - predict(detail.control, r.x);
  return {Method::GFormula, sum / static_cast<double>(dataset.m), std::move(detail)};
}

}  // namespace transport
