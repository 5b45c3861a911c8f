#include "transport/samplers.hpp"

#include <cmath>

#include "transport/errors.hpp"

namespace transport {

int sample_bernoulli(double p, RandomSource& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameter("bernoulli probability must lie in [0,1]");
  return rng.next_double() < p ? 1 : 0;
}

double sample_normal(double mean, double sd, RandomSource& rng) {
  if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd))
    throw InvalidParameter("normal sampler needs finite mean and sd > 0");
  for (;;) {
    const double u = 2.0 * rng.next_double() - 1.0;
    const double v = 2.0 * rng.next_double() - 1.0;
    const double r2 = u * u + v * v;
    if (r2 >= 1.0 || r2 == 0.0) continue;
    return mean + sd * u * std::sqrt(-2.0 * std::log(r2) / r2);
  }
}

double sample_gamma(double shape, double scale, RandomSource& rng) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw InvalidParameter("gamma sampler needs shape > 0 and scale > 0");
  if (shape < 1.0) {
    // Boost: if G ~ Gamma(shape+1) and U uniform, G * U^(1/shape) ~ Gamma(shape).
    const double u = rng.next_double();
    return sample_gamma(shape + 1.0, scale, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = sample_normal(0.0, 1.0, rng);
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.next_double();
    if (u == 0.0) continue;
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v * scale;
  }
}

long long sample_poisson(double rate, RandomSource& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw InvalidParameter("poisson rate must be finite and non-negative");
  long long count = 0;
  double spent = -std::log1p(-rng.next_double());
  while (spent <= rate) {
    ++count;
    spent += -std::log1p(-rng.next_double());
  }
  return count;
}

long long sample_negative_binomial(double mean, double dispersion,
                                   RandomSource& rng) {
  if (!(mean > 0.0) || !(dispersion > 0.0))
    throw InvalidParameter("negative binomial needs mean > 0 and dispersion > 0");
  const double rate = sample_gamma(dispersion, mean / dispersion, rng);
  return sample_poisson(rate, rng);
}

}  // namespace transport
