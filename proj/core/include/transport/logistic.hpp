#pragma once

#include <vector>

namespace transport {

// Binary logistic regression of a {0,1} label on a single feature.
// coefficients = (intercept, slope) on the original feature scale; the fit
// itself runs on the standardized feature for conditioning.
struct LogisticFit {
  std::vector<double> coefficients;
  bool converged = false;
  int iterations = 0;
};

// Probabilities are clipped into [kProbabilityClip, 1 - kProbabilityClip]
// before they are turned into odds or weights.
inline constexpr double kProbabilityClip = 1e-6;

// Solver knobs, all defaulted; every tolerance applies on the standardized
// feature scale the iteration runs on.
struct LogisticOptions {
  double gradient_tolerance = 1e-8;
  double step_tolerance = 1e-10;
  int max_iterations = 100;
  // Backstop divergence bound on the standardized coefficients. Separable
  // data is normally rejected up front by an exact threshold test; the
  // bound only catches near-separation that inflates slowly.
  double separation_bound = 30.0;
};

// Numerically stable logistic function.
double sigmoid(double t);

// Newton / IRLS maximum likelihood with step halving. Convergence: max
// absolute coefficient update < step_tolerance or gradient max-norm <
// gradient_tolerance, capped at max_iterations. Separation when a feature
// threshold splits the labels perfectly (no finite optimum exists), when
// the standardized coefficients leave the separation bound, or when the
// cap is hit without converging; DegenerateLabels when all labels are
// equal; InvalidParameter for labels outside {0,1}, fewer than two
// observations, or unusable options.
LogisticFit fit_logistic(const std::vector<double>& features,
                         const std::vector<int>& labels,
                         const LogisticOptions& options = {});

// sigmoid(b0 + b1 x), clipped into [clip, 1 - clip]. Callers get
// probabilities strictly inside (0,1), so odds are always finite and
// positive.
double predict_probability(const LogisticFit& fit, double x,
                           double clip = kProbabilityClip);

}  // namespace transport
