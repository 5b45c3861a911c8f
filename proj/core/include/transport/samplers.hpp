#pragma once

#include "transport/rng.hpp"

namespace transport {

// Distribution samplers over a RandomSource. All of them consume a
// deterministic (input-dependent) number of draws, so a fixed seed fixes
// every downstream sample exactly.

// Returns 1 with probability p. InvalidParameter outside [0,1].
int sample_bernoulli(double p, RandomSource& rng);

// Marsaglia polar method; the second variate of each pair is discarded so
// the function stays stateless. InvalidParameter for sd <= 0 or non-finite
// arguments.
double sample_normal(double mean, double sd, RandomSource& rng);

// Marsaglia-Tsang squeeze method; shape < 1 handled by boosting.
// InvalidParameter for non-positive shape or scale.
double sample_gamma(double shape, double scale, RandomSource& rng);

// Counts unit-exponential arrivals until the budget is spent; O(rate) but
// free of the e^-rate underflow of the product method. InvalidParameter for
// negative or non-finite rate.
long long sample_poisson(double rate, RandomSource& rng);

// Negative binomial in mean-dispersion form: E = mean, Var = mean +
// mean^2/dispersion, realized as a gamma-Poisson mixture
// (rate ~ Gamma(shape=dispersion, scale=mean/dispersion), then Poisson).
// InvalidParameter for non-positive mean or dispersion.
long long sample_negative_binomial(double mean, double dispersion,
                                   RandomSource& rng);

}  // namespace transport
