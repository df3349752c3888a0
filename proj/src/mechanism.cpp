#include "capstone/mechanism.hpp"

#include <cmath>
#include <unordered_map>

#include "capstone/parallel.hpp"

namespace capstone {

void validate(const WelfareWeights& w, const std::string& field) {
  if (!(w.lambda >= 0.0) || !std::isfinite(w.lambda))
    throw ValidationError(field + ".lambda", "must be nonnegative");
  if (!(w.eta >= 0.0) || !std::isfinite(w.eta))
    throw ValidationError(field + ".eta", "must be nonnegative");
}

ResponseMap induced_responses(const UniversityAction& policy, const GameConfig& config,
                              const TypePriors& priors, const ActionGrids& grids) {
  // The student objective does not involve theta_C, so the nested responses
  // are computed once per (tier, sponsor action) and reused across the grid.
  std::array<std::unordered_map<std::string, StudentAction>, 2> memo;
  for (const SponsorAction& action : grids.sponsor_actions()) {
    const std::string key = action_key(action);
    for (std::size_t s = 0; s < 2; ++s) {
      memo[s].emplace(key, student_best_response(
                               config.student_type(static_cast<StudentCostTier>(s)), policy,
                               action, config, grids)
                               .action);
    }
  }
  StudentRule student_rule = [&](const StudentType& st, const UniversityAction& u,
                                 const SponsorAction& c) {
    const auto& cache = memo[static_cast<std::size_t>(st.tier)];
    const auto it = cache.find(action_key(c));
    if (it != cache.end()) return it->second;
    return student_best_response(st, u, c, config, grids).action;
  };

  ResponseMap map;
  map.theta_grid = priors.sponsor_grid;
  map.entries.resize(priors.sponsor_grid.size());
  for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
    ResponseEntry& entry = map.entries[t];
    entry.sponsor = sponsor_best_response(SponsorType{priors.sponsor_grid[t]}, policy,
                                          student_rule, priors, config, grids)
                        .action;
    for (std::size_t s = 0; s < 2; ++s) {
      entry.student[s] =
          student_rule(config.student_type(static_cast<StudentCostTier>(s)), policy, entry.sponsor);
    }
  }
  return map;
}

WelfareBreakdown expected_welfare(const UniversityAction& policy, const ResponseMap& responses,
                                  const WelfareWeights& weights, const TypePriors& priors,
                                  const GameConfig& config,
                                  std::optional<UniversityType> university_type) {
  if (responses.entries.size() != priors.sponsor_grid.size())
    throw ValidationError("responses", "response map does not cover the sponsor type grid");

  TypePriors effective = priors;
  if (university_type) {
    effective.university = {0.0, 0.0};
    effective.university[static_cast<std::size_t>(*university_type)] = 1.0;
  }

  WelfareBreakdown result;
  result.university = expectation_over_type_grid(
      effective, [&](std::size_t u, std::size_t t, std::size_t s) {
        const ResponseEntry& entry = responses.entries[t];
        ActionProfile profile{policy, entry.sponsor, entry.student[s]};
        TypeProfile tp;
        tp.university = static_cast<UniversityType>(u);
        tp.sponsor.value = priors.sponsor_grid[t];
        tp.student = config.student_type(static_cast<StudentCostTier>(s));
        const OutcomeVector out = outcomes(profile, tp, config.coefficients);
        return university_utility(out, policy, tp.university, config.weights);
      });
  result.students = expectation_over_type_grid(
      effective, [&](std::size_t, std::size_t t, std::size_t s) {
        const ResponseEntry& entry = responses.entries[t];
        ActionProfile profile{policy, entry.sponsor, entry.student[s]};
        TypeProfile tp;
        tp.sponsor.value = priors.sponsor_grid[t];
        tp.student = config.student_type(static_cast<StudentCostTier>(s));
        const OutcomeVector out = outcomes(profile, tp, config.coefficients);
        return student_utility(out, profile.student, tp.student, config.weights);
      });
  result.sponsor = expectation_over_type_grid(
      effective, [&](std::size_t, std::size_t t, std::size_t s) {
        const ResponseEntry& entry = responses.entries[t];
        ActionProfile profile{policy, entry.sponsor, entry.student[s]};
        TypeProfile tp;
        tp.sponsor.value = priors.sponsor_grid[t];
        tp.student = config.student_type(static_cast<StudentCostTier>(s));
        const OutcomeVector out = outcomes(profile, tp, config.coefficients);
        return sponsor_utility(out, profile.sponsor, config.weights);
      });
  result.welfare = result.university + weights.lambda * result.students + weights.eta * result.sponsor;
  return result;
}

OptimalPolicyResult optimal_policy(const GameConfig& config, const TypePriors& priors,
                                   const WelfareWeights& weights, const ActionGrids& grids,
                                   std::optional<UniversityType> university_type,
                                   int threads) {
  validate(weights, "weights");
  threads = resolve_thread_count(threads);
  const std::vector<UniversityAction> policy_grid = grids.university_actions();
  if (policy_grid.empty()) throw ValidationError("grids", "policy grid must be nonempty");

  OptimalPolicyResult result;
  result.surface.rows.resize(policy_grid.size());
  parallel_for(static_cast<int>(policy_grid.size()), threads, [&](int p) {
    const UniversityAction& policy = policy_grid[static_cast<std::size_t>(p)];
    const ResponseMap responses = induced_responses(policy, config, priors, grids);
    result.surface.rows[static_cast<std::size_t>(p)] = SurfaceRow{
        policy, expected_welfare(policy, responses, weights, priors, config, university_type)};
  });

  std::size_t best = 0;
  for (std::size_t p = 1; p < result.surface.rows.size(); ++p) {
    if (result.surface.rows[p].value.welfare > result.surface.rows[best].value.welfare) best = p;
  }
  result.policy = result.surface.rows[best].policy;
  result.value = result.surface.rows[best].value;
  return result;
}

std::vector<SweepRow> weight_sweep(const GameConfig& config, const TypePriors& priors,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& etas, const ActionGrids& grids,
                                   std::optional<UniversityType> university_type,
                                   int threads) {
  if (lambdas.empty()) throw ValidationError("lambda", "sweep needs at least one value");
  if (etas.empty()) throw ValidationError("eta", "sweep needs at least one value");
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size() * etas.size());
  for (double lambda : lambdas) {
    for (double eta : etas) {
      const OptimalPolicyResult best = optimal_policy(
          config, priors, WelfareWeights{lambda, eta}, grids, university_type, threads);
      rows.push_back(SweepRow{lambda, eta, best.policy, best.value});
    }
  }
  return rows;
}

}  // namespace capstone
