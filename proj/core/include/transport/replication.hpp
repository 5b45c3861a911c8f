#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "transport/estimators.hpp"
#include "transport/simulation.hpp"

namespace transport {

// Linear interpolation between order statistics (the "type 7" rule):
// h = (K-1)p, result = v[floor h] + frac(h) * (v[floor h + 1] - v[floor h]).
// Works on a sorted copy. InvalidParameter for empty input or p outside
// [0,1].
double quantile(std::vector<double> values, double p);

struct MethodSummary {
  std::vector<double> estimates;  // one per replication, slot order
  double median = 0.0, q25 = 0.0, q75 = 0.0;
  double mean = 0.0;
  double bias = 0.0;  // mean - true_tau
  double rmse = 0.0;  // sqrt(mean squared error vs true_tau)
};

struct RetryRecord {
  int slot = 0;
  int attempt = 0;
  std::uint64_t substream = 0;
  std::string error;
};

inline constexpr std::array<const char*, 4> kMethodKeys = {
    "naive", "interaction_ols", "ipsw", "gformula"};

struct ReplicationSummary {
  std::array<MethodSummary, 4> per_method;  // indexed by Method
  double true_tau = 0.0;
  int replications = 0;
  std::uint64_t master_seed = 0;
  std::vector<RetryRecord> retries;

  const MethodSummary& of(Method m) const {
    return per_method[static_cast<std::size_t>(m)];
  }
};

// Runs K studies. Slot i, attempt r draws from substream r*K + i of the
// master seed, so every slot and every retry consumes its own stream and
// the result is identical for any thread count (slots write into indexed
// storage, retry logs are concatenated in slot order). A slot that fails
// 4 attempts raises ReplicationFailed; failed attempts are logged, never
// silently dropped.
ReplicationSummary run_replications(const SimulationConfig& config, int replications,
                                    std::uint64_t master_seed, int threads = 1);

}  // namespace transport
