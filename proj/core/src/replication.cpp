#include "transport/replication.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "transport/errors.hpp"

namespace transport {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidParameter("quantile of an empty vector");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

struct SlotResult {
  std::array<double, 4> estimates{};
  std::vector<RetryRecord> retries;
};

SlotResult run_slot(const SimulationConfig& config, int slot, int total,
                    const RandomSource& master) {
  SlotResult result;
  constexpr int kMaxAttempts = 4;  // first try plus three re-draws
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t index = static_cast<std::uint64_t>(attempt) *
                                    static_cast<std::uint64_t>(total) +
                                static_cast<std::uint64_t>(slot);
    RandomSource rng = master.substream(index);
    try {
      const GeneratedStudy study = generate_dataset(config, rng);
      const PropensityPolicy policy{config.propensity_e1};
      result.estimates[0] = estimate_naive(study.dataset).value;
      result.estimates[1] = estimate_interaction_ols(study.dataset).value;
      result.estimates[2] = estimate_ipsw(study.dataset, policy).value;
      result.estimates[3] =
          estimate_gformula(study.dataset, config.gformula_degree).value;
      return result;
    } catch (const Error& e) {
      result.retries.push_back(
          {slot, attempt, index, e.name() + std::string(": ") + e.what()});
    }
  }
  throw ReplicationFailed("slot " + std::to_string(slot) +
                          " failed 4 attempts; last: " +
                          result.retries.back().error);
}

}  // namespace

ReplicationSummary run_replications(const SimulationConfig& config, int replications,
                                    std::uint64_t master_seed, int threads) {
  if (replications < 1) throw InvalidParameter("replications must be >= 1");
  const SimulationConfig cfg =
      config.effect_scale > 0.0 ? config : calibrated(config);
  const RandomSource master(master_seed);

  std::vector<SlotResult> slots(static_cast<std::size_t>(replications));
  const int workers = std::clamp(threads, 1, replications);

  if (workers == 1) {
    for (int i = 0; i < replications; ++i)
      slots[static_cast<std::size_t>(i)] = run_slot(cfg, i, replications, master);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= replications) return;
        try {
          slots[static_cast<std::size_t>(i)] = run_slot(cfg, i, replications, master);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  ReplicationSummary summary;
  summary.true_tau = cfg.target_ate;
  summary.replications = replications;
  summary.master_seed = master_seed;
  for (std::size_t method = 0; method < 4; ++method) {
    MethodSummary& ms = summary.per_method[method];
    ms.estimates.reserve(static_cast<std::size_t>(replications));
    for (const auto& slot : slots) ms.estimates.push_back(slot.estimates[method]);
    ms.median = quantile(ms.estimates, 0.5);
    ms.q25 = quantile(ms.estimates, 0.25);
    ms.q75 = quantile(ms.estimates, 0.75);
    double sum = 0.0, sq = 0.0;
    for (double v : ms.estimates) {
      sum += v;
      const double d = v - summary.true_tau;
      sq += d * d;
    }
    ms.mean = sum / static_cast<double>(replications);
    ms.bias = ms.mean - summary.true_tau;
    ms.rmse = std::sqrt(sq / static_cast<double>(replications));
  }
  for (const auto& slot : slots)
    summary.retries.insert(summary.retries.end(), slot.retries.begin(),
                           slot.retries.end());
  return summary;
}

}  // namespace transport
