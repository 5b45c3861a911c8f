#include "transport/json_report.hpp"

#include <json.hpp>

#include "transport/errors.hpp"

namespace transport {

namespace {

using json = nlohmann::ordered_json;

json support_interval(double lo, double hi) { return json::array({lo, hi}); }

json diagnostics_to_json(const DiagnosticsReport& rep) {
  json d;
  d["smd"] = rep.smd;
  d["trial_support"] = support_interval(rep.support.trial_min, rep.support.trial_max);
  d["target_support"] =
      support_interval(rep.support.target_min, rep.support.target_max);
  d["transportable_range"] =
      support_interval(rep.support.transportable_lo, rep.support.transportable_hi);
  d["empty_overlap"] = rep.support.empty_overlap;
  d["out_of_support_fraction"] = rep.support.out_of_support_fraction;
  d["min_eligibility"] = rep.positivity.min_eligibility;
  d["positivity_warning"] = rep.positivity.warning;
  json bins = json::array();
  for (const auto& b : rep.positivity.bins) {
    json jb;
    jb["x_lo"] = b.x_lo;
    jb["x_hi"] = b.x_hi;
    jb["count"] = b.count;
    jb["min_eligibility"] = b.min_eligibility;
    jb["mean_eligibility"] = b.mean_eligibility;
    bins.push_back(jb);
  }
  d["eligibility_bins"] = bins;
  return d;
}

json meta_to_json(const StudyDataset& ds, std::optional<std::uint64_t> seed) {
  json meta;
  meta["n"] = ds.n;
  meta["m"] = ds.m;
  if (seed.has_value()) {
    meta["seed"] = *seed;
  } else {
    meta["seed"] = nullptr;
  }
  return meta;
}

}  // namespace

EstimateRun run_estimate_report(const StudyDataset& dataset,
                                const std::vector<Method>& methods,
                                const PropensityPolicy& policy, int gformula_degree,
                                std::optional<std::uint64_t> seed) {
  EstimateRun run;
  json estimates = json::object();
  std::optional<IpswDetail> ipsw_detail;

  for (Method method : methods) {
    const char* key = kMethodKeys[static_cast<std::size_t>(method)];
    try {
      json entry;
      switch (method) {
        case Method::Naive: {
          const AteEstimate est = estimate_naive(dataset);
          entry["value"] = est.value;
          break;
        }
        case Method::InteractionOls: {
          const AteEstimate est = estimate_interaction_ols(dataset);
          const auto& detail = std::get<InteractionOlsDetail>(est.detail);
          entry["value"] = est.value;
          entry["intercept"] = detail.intercept;
          entry["slope"] = detail.slope;
          break;
        }
        case Method::Ipsw: {
          const AteEstimate est = estimate_ipsw(dataset, policy);
          const auto& detail = std::get<IpswDetail>(est.detail);
          entry["value"] = est.value;
          entry["max_weight"] = detail.max_weight;
          entry["ess"] = detail.effective_sample_size;
          ipsw_detail = detail;
          break;
        }
        case Method::GFormula: {
          const AteEstimate est = estimate_gformula(dataset, gformula_degree);
          const auto& detail = std::get<GFormulaDetail>(est.detail);
          entry["value"] = est.value;
          entry["degree"] = gformula_degree;
          entry["intercept_only_fallback"] = detail.intercept_only_fallback;
          break;
        }
      }
      estimates[key] = entry;
      ++run.succeeded;
    } catch (const Error& e) {
      json entry;
      entry["error"] = e.name();
      entry["message"] = e.what();
      estimates[key] = entry;
      if (dynamic_cast<const NumericError*>(&e) != nullptr)
        run.any_numeric_error = true;
      if (run.first_error_name.empty()) {
        run.first_error_name = e.name();
        run.first_error_message = e.what();
      }
    }
  }

  json root;
  root["estimates"] = estimates;
  // A diagnostics failure is reported in place, like a failed method, so a
  // run with at least one good estimate still produces its report.
  try {
    DiagnosticsReport diag = run_diagnostics(dataset);
    if (ipsw_detail.has_value()) diag.weights = weight_health(*ipsw_detail);
    json d = diagnostics_to_json(diag);
    if (diag.weights.has_value()) {
      d["max_weight"] = diag.weights->max_weight;
      d["ess"] = diag.weights->effective_sample_size;
      d["extreme_weights"] = diag.weights->extreme;
    }
    root["diagnostics"] = d;
  } catch (const Error& e) {
    json d;
    d["error"] = e.name();
    d["message"] = e.what();
    root["diagnostics"] = d;
  }
  root["meta"] = meta_to_json(dataset, seed);
  run.json = root.dump(2) + "\n";
  return run;
}

std::string diagnostics_report_json(const StudyDataset& dataset,
                                    std::optional<std::uint64_t> seed) {
  json root;
  root["diagnostics"] = diagnostics_to_json(run_diagnostics(dataset));
  root["meta"] = meta_to_json(dataset, seed);
  return root.dump(2) + "\n";
}

std::string replication_report_json(const ReplicationSummary& summary) {
  json root;
  json study;
  study["replications"] = summary.replications;
  study["master_seed"] = summary.master_seed;
  study["true_tau"] = summary.true_tau;
  root["study"] = study;
  json methods;
  for (std::size_t i = 0; i < summary.per_method.size(); ++i) {
    const MethodSummary& ms = summary.per_method[i];
    json entry;
    entry["median"] = ms.median;
    entry["q25"] = ms.q25;
    entry["q75"] = ms.q75;
    entry["mean"] = ms.mean;
    entry["bias"] = ms.bias;
    entry["rmse"] = ms.rmse;
    entry["estimates"] = ms.estimates;
    methods[kMethodKeys[i]] = entry;
  }
  root["methods"] = methods;
  json retries = json::array();
  for (const auto& r : summary.retries) {
    json entry;
    entry["slot"] = r.slot;
    entry["attempt"] = r.attempt;
    entry["substream"] = r.substream;
    entry["error"] = r.error;
    retries.push_back(entry);
  }
  root["retries"] = retries;
  return root.dump(2) + "\n";
}

std::string error_json(const std::string& name, const std::string& message) {
  json root;
  root["error"] = name;
  root["message"] = message;
  return root.dump(2) + "\n";
}

}  // namespace transport
