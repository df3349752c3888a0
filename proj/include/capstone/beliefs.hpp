#pragma once

#include <array>
#include <string>
#include <vector>

#include "capstone/model.hpp"

namespace capstone {

// Common priors over the three type spaces. The continuous sponsor type is
// discretized as weights over an ascending grid on [0,1].
struct TypePriors {
  std::array<double, 2> university{0.5, 0.5};  // P(Low), P(High)
  std::vector<double> sponsor_grid;            // theta_C grid points
  std::vector<double> sponsor_weights;         // same length, sums to 1
  std::array<double, 2> student{0.5, 0.5};     // P(LowCost), P(HighCost)

  // Uniform weights over an n-point grid {0, 1/(n-1), ..., 1}.
  static TypePriors uniform(int n_theta = 101);
  // Degenerate priors concentrated on one realized type profile.
  static TypePriors point_mass(const TypeProfile& types);
};

void validate(const TypePriors& priors, const std::string& field);

enum class OffPathRule { RevertToPrior, Uniform };

std::string to_string(OffPathRule rule);
OffPathRule parse_off_path_rule(const std::string& s, const std::string& field);

// Canonical text keys used to address discretized actions in likelihood
// tables and diagnostics. Formatting absorbs grid round-off so that
// arithmetically equal actions share one key.
std::string action_key(const UniversityAction& a);
std::string action_key(const SponsorAction& a);
std::string action_key(const StudentAction& a);

// Behavioral-strategy likelihoods: rows[t][j] = P(action j | type t).
// Each row must sum to 1 within 1e-9.
struct LikelihoodTable {
  std::vector<std::string> action_keys;
  std::vector<std::vector<double>> rows;

  int action_index(const std::string& key) const;  // -1 when absent
};

void validate(const LikelihoodTable& table, std::size_t expected_rows,
              const std::string& field);

// Sponsor likelihoods are conditional on the observed university policy:
// one table (rows indexed by the theta_C grid) per policy key.
struct SponsorLikelihood {
  std::vector<std::string> policy_keys;
  std::vector<LikelihoodTable> tables;

  int policy_index(const std::string& key) const;  // -1 when absent
};

// Posterior over player types given observed on-path actions, with the
// configured fallback at off-path observations.
struct BeliefState {
  std::array<double, 2> mu_university{0.5, 0.5};
  std::vector<double> mu_sponsor;
  OffPathRule off_path_rule = OffPathRule::RevertToPrior;
  bool university_off_path = false;
  bool sponsor_off_path = false;
};

// posterior(theta) = prior(theta) l(a|theta) / sum_theta' prior(theta') l(a|theta').
// A zero denominator is an off-path observation, resolved by `rule`.
std::array<double, 2> posterior_university(const TypePriors& priors,
                                           const LikelihoodTable& likelihood,
                                           const UniversityAction& observed,
                                           OffPathRule rule = OffPathRule::RevertToPrior,
                                           bool* off_path = nullptr);

// Grid analogue of the integral form: weight at grid point t proportional to
// f_C(t) l(a_C | a_U, t), renormalized.
std::vector<double> posterior_sponsor(const TypePriors& priors,
                                      const SponsorLikelihood& likelihood,
                                      const UniversityAction& observed_policy,
                                      const SponsorAction& observed_sponsor,
                                      OffPathRule rule = OffPathRule::RevertToPrior,
                                      bool* off_path = nullptr);

// Expectation of f over the product prior p_U x f_C x p_S. Summation order is
// fixed: university type outer, sponsor grid middle, student tier inner.
// The index-based form is the primitive; the TypeProfile form wraps it.
template <typename F>
double expectation_over_type_grid(const TypePriors& priors, F&& f) {
  double total = 0.0;
  for (std::size_t u = 0; u < 2; ++u) {
    const double pu = priors.university[u];
    if (pu == 0.0) continue;
    for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
      const double ft = priors.sponsor_weights[t];
      if (ft == 0.0) continue;
      for (std::size_t s = 0; s < 2; ++s) {
        const double ps = priors.student[s];
        if (ps == 0.0) continue;
        total += pu * ft * ps * f(u, t, s);
      }
    }
  }
  return total;
}

template <typename F>
double expectation_over_types(const TypePriors& priors,
                              const std::array<double, 2>& student_costs, F&& f) {
  return expectation_over_type_grid(
      priors, [&](std::size_t u, std::size_t t, std::size_t s) {
        TypeProfile profile;
        profile.university = static_cast<UniversityType>(u);
        profile.sponsor.value = priors.sponsor_grid[t];
        profile.student.tier = static_cast<StudentCostTier>(s);
        profile.student.effort_cost = student_costs[s];
        return f(profile);
      });
}

}  // namespace capstone
