#include "transport/linear.hpp"

#include <cmath>
#include <cstddef>

#include "transport/errors.hpp"

namespace transport {

namespace {

// Solves A b = rhs for symmetric positive definite A (dense, tiny).
// pivot_floor is relative to the largest diagonal entry of A.
std::vector<double> cholesky_solve(std::vector<double>& a, std::size_t k,
                                   std::vector<double> rhs) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    max_diag = std::max(max_diag, std::fabs(a[i * k + i]));
  const double pivot_floor = 1e-12 * (max_diag > 0.0 ? max_diag : 1.0);

  // In-place lower Cholesky factor.
  for (std::size_t j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (std::size_t p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
    if (!(d > pivot_floor))
      throw RankDeficient("design matrix is rank deficient (collinear columns)");
    const double l = std::sqrt(d);
    a[j * k + j] = l;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (std::size_t p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
      a[i * k + j] = s / l;
    }
  }
  // Forward then back substitution.
  for (std::size_t i = 0; i < k; ++i) {
    double s = rhs[i];
    for (std::size_t p = 0; p < i; ++p) s -= a[i * k + p] * rhs[p];
    rhs[i] = s / a[i * k + i];
  }
  for (std::size_t ii = k; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t p = ii + 1; p < k; ++p) s -= a[p * k + ii] * rhs[p];
    rhs[ii] = s / a[ii * k + ii];
  }
  return rhs;
}

}  // namespace

LinearFit fit_ols(const std::vector<std::vector<double>>& design_rows,
                  const std::vector<double>& responses) {
  const std::size_t nrows = design_rows.size();
  if (nrows == 0 || responses.size() != nrows)
    throw DimensionMismatch("design rows and responses must match and be non-empty");
  const std::size_t k = design_rows[0].size();
  if (k == 0) throw DimensionMismatch("design must have at least one column");
  for (const auto& row : design_rows)
    if (row.size() != k) throw DimensionMismatch("ragged design rows");
  if (nrows < k)
    throw DimensionMismatch("fewer rows than design columns");

  std::vector<double> xtx(k * k, 0.0);
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < nrows; ++i) {
    const auto& row = design_rows[i];
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += row[a] * responses[i];
      for (std::size_t b = 0; b <= a; ++b) xtx[a * k + b] += row[a] * row[b];
    }
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) xtx[a * k + b] = xtx[b * k + a];

  LinearFit fit;
  fit.coefficients = cholesky_solve(xtx, k, std::move(xty));
  fit.basis_degree = static_cast<int>(k) - 1;
  double rss = 0.0;
  for (std::size_t i = 0; i < nrows; ++i) {
    double pred = 0.0;
    for (std::size_t a = 0; a < k; ++a) pred += fit.coefficients[a] * design_rows[i][a];
    const double r = responses[i] - pred;
    rss += r * r;
  }
  fit.residual_sum_squares = rss;
  return fit;
}

LinearFit fit_polynomial(const std::vector<double>& xs,
                         const std::vector<double>& ys, int degree) {
  if (degree < 0) throw InvalidParameter("polynomial degree must be >= 0");
  const std::size_t n = xs.size();
  if (n != ys.size() || n == 0)
    throw DimensionMismatch("x and y lengths must match and be non-empty");

  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : xs) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double scale = var > 0.0 ? std::sqrt(var) : 1.0;

  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (xs[i] - mean) / scale;
    auto& row = rows[i];
    row.resize(static_cast<std::size_t>(degree) + 1);
    double p = 1.0;
    for (int d = 0; d <= degree; ++d) {
      row[static_cast<std::size_t>(d)] = p;
      p *= z;
    }
  }
  LinearFit fit = fit_ols(rows, ys);
  fit.basis_degree = degree;
  fit.basis_center = mean;
  fit.basis_scale = scale;
  return fit;
}

double predict(const LinearFit& fit, double x) {
  const double z = (x - fit.basis_center) / fit.basis_scale;
  double value = 0.0;
  for (std::size_t d = fit.coefficients.size(); d-- > 0;)
    value = value * z + fit.coefficients[d];
  return value;
}

}  // namespace transport
