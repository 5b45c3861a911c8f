#pragma once

#include <variant>
#include <vector>

#include "transport/dataset.hpp"
#include "transport/linear.hpp"
#include "transport/logistic.hpp"

namespace transport {

enum class Method { Naive = 0, InteractionOls = 1, Ipsw = 2, GFormula = 3 };

// Known randomization probability for the trial (not estimated).
struct PropensityPolicy {
  double e1 = 0.5;
};

struct NaiveDetail {
  double mean_treated = 0.0;
  double mean_control = 0.0;
};

struct InteractionOlsDetail {
  double intercept = 0.0;
  double slope = 0.0;  // coefficient on the treated-by-covariate column
  double target_mean_x = 0.0;
};

struct IpswDetail {
  std::vector<double> weights;  // (n/m) / alpha_hat(x_i), trial order
  double max_weight = 0.0;
  double effective_sample_size = 0.0;  // (sum w)^2 / sum w^2, in [1, n]
};

struct GFormulaDetail {
  LinearFit treated;
  LinearFit control;
  bool intercept_only_fallback = false;  // an arm had a constant covariate
};

struct AteEstimate {
  Method method = Method::Naive;
  double value = 0.0;
  std::variant<NaiveDetail, InteractionOlsDetail, IpswDetail, GFormulaDetail> detail;
};

// Membership model for the trial-versus-target split, fitted on the stacked
// covariates with label 1 = trial. alpha_hat is the fitted odds, clipped
// away from 0 and infinity, which is what turns the classifier into a
// density-ratio estimate scaled by n/m.
struct EligibilityModel {
  LogisticFit logistic;
  int n = 0;
  int m = 0;
  double probability(double x) const { return predict_probability(logistic, x); }
  double alpha_hat(double x) const {
    const double p = probability(x);
    return p / (1.0 - p);
  }
};

// Separation propagates from the logistic fit; DegenerateLabels cannot
// occur on a dataset with n >= 1 and m >= 1.
EligibilityModel fit_eligibility(const StudyDataset& dataset);

// Difference of arm means over trial records.
AteEstimate estimate_naive(const StudyDataset& dataset);

// OLS of y on {1, a*x} over trial records (no marginal terms by design);
// the single reported number is slope * mean(target x).
AteEstimate estimate_interaction_ols(const StudyDataset& dataset);

// Inverse-odds weighting, deliberately un-normalized:
//   (1/n) * sum over trial of (n/m) * (y_i / alpha_hat(x_i))
//                                   * (a_i/e1 - (1-a_i)/(1-e1)).
// Requires at least two records per arm so each weighted arm average rests
// on more than one point; raises DegenerateTrial otherwise, MissingTarget
// when m = 0, Separation from the eligibility fit.
AteEstimate estimate_ipsw(const StudyDataset& dataset,
                          const PropensityPolicy& policy = {});

// Same weighting arithmetic with externally supplied eligibility odds,
// aligned with the dataset's trial records in record order. This is the
// computational core of estimate_ipsw and is exposed for diagnostics and
// direct checks against hand-evaluated sums.
AteEstimate estimate_ipsw_with_odds(const StudyDataset& dataset,
                                    const std::vector<double>& trial_odds,
                                    const PropensityPolicy& policy = {});

// Per-arm polynomial outcome models on the trial, averaged prediction
// difference over target covariates. Each arm needs more than
// basis_degree + 1 records (DegenerateTrial otherwise); an arm whose
// covariate is constant falls back to an intercept-only fit and flags it.
AteEstimate estimate_gformula(const StudyDataset& dataset, int basis_degree = 1);

}  // namespace transport
