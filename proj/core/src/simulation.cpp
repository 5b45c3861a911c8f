#include "transport/simulation.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string_view>

#include "transport/csv.hpp"
#include "transport/errors.hpp"
#include "transport/logistic.hpp"
#include "transport/samplers.hpp"

namespace transport {

void validate_config(const SimulationConfig& c) {
  if (c.population_size < 1)
    throw InvalidParameter("population_size must be >= 1");
  if (!(c.covariate_mean > 0.0))
    throw InvalidParameter("covariate_mean must be > 0");
  if (!(c.covariate_dispersion > 0.0))
    throw InvalidParameter("covariate_dispersion must be > 0");
  if (!std::isfinite(c.selection_intercept) || !std::isfinite(c.selection_slope))
    throw InvalidParameter("selection curve parameters must be finite");
  if (!(c.effect_decay > 0.0))
    throw InvalidParameter("effect_decay must be > 0");
  if (!(c.target_ate > 0.0))
    throw InvalidParameter("target_ate must be > 0 (the conditional effect is positive by construction)");
  if (!(c.noise_sd >= 0.0))
    throw InvalidParameter("noise_sd must be >= 0");
  if (!(c.propensity_e1 > 0.0 && c.propensity_e1 < 1.0))
    throw InvalidParameter("propensity_e1 must lie strictly inside (0,1)");
  if (c.gformula_degree < 0 || c.gformula_degree > 5)
    throw InvalidParameter("gformula_degree must be between 0 and 5");
}

double decay_expectation(double mean, double dispersion, double lambda) {
  if (!(mean > 0.0) || !(dispersion > 0.0) || !(lambda > 0.0))
    throw InvalidParameter("decay expectation needs positive mean, dispersion, lambda");
  // NB pmf in mean-dispersion form: success fraction q = mean/(dispersion+mean),
  // p(0) = (1-q)^dispersion, p(k+1) = p(k) * (k+dispersion)/(k+1) * q.
  const double q = mean / (dispersion + mean);
  double pk = std::pow(dispersion / (dispersion + mean), dispersion);
  double mass = 0.0;
  double expectation = 0.0;
  constexpr double kTailTolerance = 1e-12;
  constexpr long long kMaxTerms = 1000000;
  for (long long k = 0; k < kMaxTerms; ++k) {
    expectation += pk * std::exp(-static_cast<double>(k) / lambda);
    mass += pk;
    if (1.0 - mass < kTailTolerance) return expectation;
    pk *= (static_cast<double>(k) + dispersion) / (static_cast<double>(k) + 1.0) * q;
  }
  throw NonConvergentTail("covariate tail mass did not fall below 1e-12 within 10^6 terms");
}

double calibrate_effect_scale(const SimulationConfig& c) {
  validate_config(c);
  return c.target_ate /
         decay_expectation(c.covariate_mean, c.covariate_dispersion, c.effect_decay);
}

SimulationConfig calibrated(SimulationConfig config) {
  config.effect_scale = calibrate_effect_scale(config);
  return config;
}

double true_cate(double x, const SimulationConfig& c) {
  return c.effect_scale * std::exp(-x / c.effect_decay);
}

GeneratedStudy generate_dataset(const SimulationConfig& c, RandomSource& rng) {
  validate_config(c);
  if (!(c.effect_scale > 0.0))
    throw InvalidParameter("config is not calibrated (effect_scale unset)");

  GeneratedStudy study;
  study.true_effects.reserve(static_cast<std::size_t>(c.population_size));
  std::vector<SubjectRecord> records;
  records.reserve(static_cast<std::size_t>(c.population_size));
  for (int i = 0; i < c.population_size; ++i) {
    SubjectRecord rec;
    rec.x = static_cast<double>(
        sample_negative_binomial(c.covariate_mean, c.covariate_dispersion, rng));
    const double p_trial = sigmoid(c.selection_intercept + c.selection_slope * rec.x);
    const double tau = true_cate(rec.x, c);
    if (sample_bernoulli(p_trial, rng) == 1) {
      rec.s = Sample::Trial;
      const int treated = sample_bernoulli(c.propensity_e1, rng);
      rec.a = treated == 1 ? Arm::Treated : Arm::Control;
      double y = c.baseline + tau * static_cast<double>(treated);
      if (c.noise_sd > 0.0) y += sample_normal(0.0, c.noise_sd, rng);
      rec.y = y;
    } else {
      rec.s = Sample::Target;
    }
    records.push_back(rec);
    study.true_effects.push_back(tau);
  }
  study.dataset = validate(std::move(records));
  return study;
}

namespace {

double parse_double_value(std::string_view value, const std::string& key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("bad numeric value for '" + key + "'");
  return out;
}

int parse_int_value(std::string_view value, const std::string& key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("bad integer value for '" + key + "'");
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

SimulationConfig parse_config_text(const std::string& text) {
  SimulationConfig config;
  std::map<std::string, bool> seen;
  std::size_t pos = 0;
  int line = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view row(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line;
    if (const auto hash = row.find('#'); hash != std::string_view::npos)
      row = row.substr(0, hash);
    row = trim(row);
    if (row.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const auto eq = row.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key{trim(row.substr(0, eq))};
    const std::string_view value = trim(row.substr(eq + 1));
    if (seen[key])
      throw ConfigError("duplicate key '" + key + "'");
    seen[key] = true;

    if (key == "population_size") {
      config.population_size = parse_int_value(value, key);
    } else if (key == "covariate_mean") {
      config.covariate_mean = parse_double_value(value, key);
    } else if (key == "covariate_dispersion") {
      config.covariate_dispersion = parse_double_value(value, key);
    } else if (key == "selection_intercept") {
      config.selection_intercept = parse_double_value(value, key);
    } else if (key == "selection_slope") {
      config.selection_slope = parse_double_value(value, key);
    } else if (key == "effect_decay") {
      config.effect_decay = parse_double_value(value, key);
    } else if (key == "target_ate") {
      config.target_ate = parse_double_value(value, key);
    } else if (key == "baseline") {
      config.baseline = parse_double_value(value, key);
    } else if (key == "noise_sd") {
      config.noise_sd = parse_double_value(value, key);
    } else if (key == "propensity_e1") {
      config.propensity_e1 = parse_double_value(value, key);
    } else if (key == "gformula_degree") {
      config.gformula_degree = parse_int_value(value, key);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  validate_config(config);
  return config;
}

SimulationConfig load_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

}  // namespace transport
