#include "transport/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "transport/errors.hpp"

namespace transport {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

namespace {

// Bernoulli log-likelihood at standardized-scale coefficients.
double log_likelihood(const std::vector<double>& z, const std::vector<int>& y,
                      double b0, double b1) {
  double ll = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double t = b0 + b1 * z[i];
    // log sigma(t) = -log1p(exp(-t)) computed stably on both sides.
    const double log_p = t >= 0.0 ? -std::log1p(std::exp(-t)) : t - std::log1p(std::exp(t));
    const double log_q = t >= 0.0 ? -t - std::log1p(std::exp(-t)) : -std::log1p(std::exp(t));
    ll += y[i] == 1 ? log_p : log_q;
  }
  return ll;
}

}  // namespace

LogisticFit fit_logistic(const std::vector<double>& features,
                         const std::vector<int>& labels,
                         const LogisticOptions& options) {
  const std::size_t n = features.size();
  if (n != labels.size())
    throw DimensionMismatch("features and labels must have equal length");
  if (n < 2) throw InvalidParameter("logistic fit needs at least 2 observations");
  if (!(options.gradient_tolerance > 0.0) || !(options.step_tolerance > 0.0) ||
      !(options.separation_bound > 0.0) || options.max_iterations < 1)
    throw InvalidParameter("logistic options must be positive");
  std::size_t ones = 0;
  for (int v : labels) {
    if (v != 0 && v != 1) throw InvalidParameter("labels must be 0 or 1");
    ones += static_cast<std::size_t>(v);
  }
  if (ones == 0 || ones == n)
    throw DegenerateLabels("all labels are identical");

  double mean = 0.0;
  for (double v : features) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : features) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double sd = var > 0.0 ? std::sqrt(var) : 0.0;

  LogisticFit fit;
  if (sd == 0.0) {
    // Constant feature: slope is unidentified, use the intercept-only MLE.
    const double p = static_cast<double>(ones) / static_cast<double>(n);
    fit.coefficients = {std::log(p / (1.0 - p)), 0.0};
    fit.converged = true;
    fit.iterations = 0;
    return fit;
  }

  // With one feature, separation has an exact geometric test: the MLE
  // exists iff each label's values extend strictly past the other's
  // minimum. Ties only at a shared boundary still drive the slope to
  // infinity, so they count as separated too. The in-loop divergence
  // bound below stays as a backstop but cannot be relied on alone: on
  // widely separated data the gradient drops under its tolerance while
  // the standardized coefficients are still moderate.
  double min1 = features[0], max1 = features[0];
  double min0 = features[0], max0 = features[0];
  bool seen1 = false, seen0 = false;
  for (std::size_t i = 0; i < n; ++i) {
    auto& lo = labels[i] == 1 ? min1 : min0;
    auto& hi = labels[i] == 1 ? max1 : max0;
    auto& seen = labels[i] == 1 ? seen1 : seen0;
    if (!seen) {
      lo = hi = features[i];
      seen = true;
    } else {
      lo = std::min(lo, features[i]);
      hi = std::max(hi, features[i]);
    }
  }
  if (max1 <= min0 || max0 <= min1)
    throw Separation("a feature threshold separates the labels perfectly");

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (features[i] - mean) / sd;

  double b0 = 0.0, b1 = 0.0;
  double ll = log_likelihood(z, labels, b0, b1);
  bool converged = false;
  int iter = 0;
  while (iter < options.max_iterations) {
    ++iter;
    double g0 = 0.0, g1 = 0.0;
    double h00 = 0.0, h01 = 0.0, h11 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(b0 + b1 * z[i]);
      const double r = static_cast<double>(labels[i]) - p;
      const double w = p * (1.0 - p);
      g0 += r;
      g1 += r * z[i];
      h00 += w;
      h01 += w * z[i];
      h11 += w * z[i] * z[i];
    }
    if (std::max(std::fabs(g0), std::fabs(g1)) < options.gradient_tolerance) {
      converged = true;
      break;
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 1e-300))
      throw Separation("logistic information matrix is singular");
    double d0 = (h11 * g0 - h01 * g1) / det;
    double d1 = (h00 * g1 - h01 * g0) / det;

    // Step halving keeps Newton from overshooting on flat likelihoods.
    double step = 1.0;
    double next_ll = log_likelihood(z, labels, b0 + d0, b1 + d1);
    int halvings = 0;
    while (next_ll < ll && halvings < 40) {
      step *= 0.5;
      ++halvings;
      next_ll = log_likelihood(z, labels, b0 + step * d0, b1 + step * d1);
    }
    b0 += step * d0;
    b1 += step * d1;
    ll = next_ll;
    if (std::max(std::fabs(b0), std::fabs(b1)) > options.separation_bound)
      throw Separation("logistic coefficients diverged (separable data)");
    if (std::max(std::fabs(step * d0), std::fabs(step * d1)) < options.step_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Separation("logistic fit did not converge within the iteration cap");

  fit.coefficients = {b0 - b1 * mean / sd, b1 / sd};
  fit.converged = true;
  fit.iterations = iter;
  return fit;
}

double predict_probability(const LogisticFit& fit, double x, double clip) {
  if (!(clip > 0.0) || !(clip < 0.5))
    throw InvalidParameter("probability clip must lie in (0, 0.5)");
  const double p = sigmoid(fit.coefficients[0] + fit.coefficients[1] * x);
  return std::clamp(p, clip, 1.0 - clip);
}

}  // namespace transport
