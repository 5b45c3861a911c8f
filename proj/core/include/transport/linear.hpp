#pragma once

#include <vector>

namespace transport {

// Least-squares fit. coefficients are intercept-first. For polynomial fits
// the basis is evaluated in z = (x - basis_center) / basis_scale; general
// design fits keep center 0 / scale 1 and coefficients apply to the raw
// columns.
struct LinearFit {
  std::vector<double> coefficients;
  int basis_degree = 0;
  double residual_sum_squares = 0.0;
  double basis_center = 0.0;
  double basis_scale = 1.0;
};

// Normal equations solved by Cholesky; a pivot <= 1e-12 times the largest
// diagonal raises RankDeficient. DimensionMismatch for ragged rows or
// fewer rows than columns.
LinearFit fit_ols(const std::vector<std::vector<double>>& design_rows,
                  const std::vector<double>& responses);

// Polynomial regression of y on x with an internally standardized basis
// (z, z^2, ...), which keeps the normal equations well conditioned without
// changing the fitted function. degree >= 0.
LinearFit fit_polynomial(const std::vector<double>& xs,
                         const std::vector<double>& ys, int degree);

// Evaluates a polynomial-basis fit at x.
double predict(const LinearFit& fit, double x);

}  // namespace transport
