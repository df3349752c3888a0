#include "capstone/beliefs.hpp"

#include <cmath>
#include <cstdio>

namespace capstone {

namespace {

std::string key_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<double> off_path_fallback(const std::vector<double>& prior, OffPathRule rule) {
  if (rule == OffPathRule::RevertToPrior) return prior;
  return std::vector<double>(prior.size(), 1.0 / static_cast<double>(prior.size()));
}

}  // namespace

TypePriors TypePriors::uniform(int n_theta) {
  if (n_theta < 1) throw ValidationError("priors.f_c.n_points", "grid needs at least one point");
  TypePriors priors;
  priors.sponsor_grid.resize(static_cast<std::size_t>(n_theta));
  priors.sponsor_weights.assign(static_cast<std::size_t>(n_theta),
                                1.0 / static_cast<double>(n_theta));
  if (n_theta == 1) {
    priors.sponsor_grid[0] = 0.5;
  } else {
    for (int i = 0; i < n_theta; ++i) {
      priors.sponsor_grid[static_cast<std::size_t>(i)] =
          static_cast<double>(i) / static_cast<double>(n_theta - 1);
    }
  }
  return priors;
}

TypePriors TypePriors::point_mass(const TypeProfile& types) {
  TypePriors priors;
  priors.university = {0.0, 0.0};
  priors.university[static_cast<std::size_t>(types.university)] = 1.0;
  priors.sponsor_grid = {types.sponsor.value};
  priors.sponsor_weights = {1.0};
  priors.student = {0.0, 0.0};
  priors.student[static_cast<std::size_t>(types.student.tier)] = 1.0;
  return priors;
}

void validate(const TypePriors& priors, const std::string& field) {
  auto check_pair = [&](const std::array<double, 2>& p, const std::string& name) {
    if (!(p[0] >= 0.0) || !(p[1] >= 0.0))
      throw ValidationError(field + "." + name, "probabilities must be nonnegative");
    if (std::abs(p[0] + p[1] - 1.0) > 1e-12)
      throw ValidationError(field + "." + name, "probabilities must sum to 1");
  };
  check_pair(priors.university, "p_u");
  check_pair(priors.student, "p_s");
  if (priors.sponsor_grid.empty())
    throw ValidationError(field + ".f_c", "sponsor type grid must be nonempty");
  if (priors.sponsor_grid.size() != priors.sponsor_weights.size())
    throw ValidationError(field + ".f_c", "grid and weights must have equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < priors.sponsor_grid.size(); ++i) {
    const double t = priors.sponsor_grid[i];
    if (!(t >= 0.0 && t <= 1.0))
      throw ValidationError(field + ".f_c", "grid points must lie in [0,1]");
    if (i > 0 && !(t > priors.sponsor_grid[i - 1]))
      throw ValidationError(field + ".f_c", "grid points must be strictly ascending");
    if (!(priors.sponsor_weights[i] >= 0.0))
      throw ValidationError(field + ".f_c", "weights must be nonnegative");
    sum += priors.sponsor_weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError(field + ".f_c", "weights must sum to 1");
}

std::string to_string(OffPathRule rule) {
  return rule == OffPathRule::RevertToPrior ? "prior" : "uniform";
}

OffPathRule parse_off_path_rule(const std::string& s, const std::string& field) {
  if (s == "prior") return OffPathRule::RevertToPrior;
  if (s == "uniform") return OffPathRule::Uniform;
  throw ValidationError(field, "expected \"prior\" or \"uniform\", got \"" + s + "\"");
}

std::string action_key(const UniversityAction& a) {
  return "r=" + key_number(a.rubric_strictness) + "|i=" + to_string(a.ip_policy) +
         "|m=" + std::to_string(a.mentoring_requirement);
}

std::string action_key(const SponsorAction& a) {
  return "s=" + to_string(a.posture) + "|o=" + std::to_string(a.mentoring_intensity) +
         "|d=" + key_number(a.scope_strictness);
}

std::string action_key(const StudentAction& a) {
  return "e=" + key_number(a.effort) + "|x=" + to_string(a.orientation);
}

int LikelihoodTable::action_index(const std::string& key) const {
  for (std::size_t j = 0; j < action_keys.size(); ++j) {
    if (action_keys[j] == key) return static_cast<int>(j);
  }
  return -1;
}

void validate(const LikelihoodTable& table, std::size_t expected_rows,
              const std::string& field) {
  if (table.action_keys.empty())
    throw ValidationError(field, "likelihood table needs at least one action");
  if (table.rows.size() != expected_rows)
    throw ValidationError(field, "expected " + std::to_string(expected_rows) +
                                     " rows, got " + std::to_string(table.rows.size()));
  for (std::size_t t = 0; t < table.rows.size(); ++t) {
    const auto& row = table.rows[t];
    const std::string row_field = field + ".rows[" + std::to_string(t) + "]";
    if (row.size() != table.action_keys.size())
      throw ValidationError(row_field, "row length does not match the action set");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw ValidationError(row_field, "likelihoods must be nonnegative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError(row_field, "behavioral strategy row must sum to 1");
  }
}

int SponsorLikelihood::policy_index(const std::string& key) const {
  for (std::size_t j = 0; j < policy_keys.size(); ++j) {
    if (policy_keys[j] == key) return static_cast<int>(j);
  }
  return -1;
}

std::array<double, 2> posterior_university(const TypePriors& priors,
                                           const LikelihoodTable& likelihood,
                                           const UniversityAction& observed,
                                           OffPathRule rule, bool* off_path) {
  validate(likelihood, 2, "likelihoods.university");
  const std::string key = action_key(observed);
  const int j = likelihood.action_index(key);
  if (j < 0)
    throw ValidationError("likelihoods.university",
                          "unknown action \"" + key + "\" in likelihood table");
  const double w_low = priors.university[0] * likelihood.rows[0][static_cast<std::size_t>(j)];
  const double w_high = priors.university[1] * likelihood.rows[1][static_cast<std::size_t>(j)];
  const double denom = w_low + w_high;
  if (off_path) *off_path = (denom == 0.0);
  if (denom == 0.0) {
    if (rule == OffPathRule::RevertToPrior) return priors.university;
    return {0.5, 0.5};
  }
  return {w_low / denom, w_high / denom};
}

std::vector<double> posterior_sponsor(const TypePriors& priors,
                                      const SponsorLikelihood& likelihood,
                                      const UniversityAction& observed_policy,
                                      const SponsorAction& observed_sponsor,
                                      OffPathRule rule, bool* off_path) {
  const std::string policy_key = action_key(observed_policy);
  const int p = likelihood.policy_index(policy_key);
  if (p < 0)
    throw ValidationError("likelihoods.sponsor",
                          "unknown action \"" + policy_key + "\" in likelihood table");
  const LikelihoodTable& table = likelihood.tables[static_cast<std::size_t>(p)];
  validate(table, priors.sponsor_grid.size(), "likelihoods.sponsor");
  const std::string key = action_key(observed_sponsor);
  const int j = table.action_index(key);
  if (j < 0)
    throw ValidationError("likelihoods.sponsor",
                          "unknown action \"" + key + "\" in likelihood table");

  std::vector<double> weights(priors.sponsor_grid.size());
  double denom = 0.0;
  for (std::size_t t = 0; t < weights.size(); ++t) {
    weights[t] = priors.sponsor_weights[t] * table.rows[t][static_cast<std::size_t>(j)];
    denom += weights[t];
  }
  if (off_path) *off_path = (denom == 0.0);
  if (denom == 0.0) return off_path_fallback(priors.sponsor_weights, rule);
  for (double& w : weights) w /= denom;
  return weights;
}

}  // namespace capstone
