#pragma once

#include <array>
#include <optional>
#include <vector>

#include "capstone/strategy.hpp"

namespace capstone {

// Scalarization weights of the university's welfare objective
// U_U + lambda U_S + eta U_C.
struct WelfareWeights {
  double lambda = 0.0;
  double eta = 0.0;
};

void validate(const WelfareWeights& w, const std::string& field);

// Equilibrium follower responses under one fixed policy: the sponsor action
// per theta_C grid point and the nested student action per cost tier.
struct ResponseEntry {
  SponsorAction sponsor;
  std::array<StudentAction, 2> student;  // [LowCost, HighCost]
};

struct ResponseMap {
  std::vector<double> theta_grid;
  std::vector<ResponseEntry> entries;
};

ResponseMap induced_responses(const UniversityAction& policy, const GameConfig& config,
                              const TypePriors& priors, const ActionGrids& grids);

struct WelfareBreakdown {
  double university = 0.0;  // E[U_U]
  double students = 0.0;    // E[U_S]
  double sponsor = 0.0;     // E[U_C]
  double welfare = 0.0;     // E[U_U] + lambda E[U_S] + eta E[U_C]
};

// Expectations over the product prior in the fixed summation order
// (university type outer, theta_C middle, student tier inner). When
// `university_type` is set, the expectation conditions on that type;
// otherwise it averages over p_U.
WelfareBreakdown expected_welfare(const UniversityAction& policy, const ResponseMap& responses,
                                  const WelfareWeights& weights, const TypePriors& priors,
                                  const GameConfig& config,
                                  std::optional<UniversityType> university_type);

struct SurfaceRow {
  UniversityAction policy;
  WelfareBreakdown value;
};

// One row per policy-grid point, in grid order.
struct WelfareSurface {
  std::vector<SurfaceRow> rows;
};

struct OptimalPolicyResult {
  UniversityAction policy;
  WelfareBreakdown value;
  WelfareSurface surface;
};

// Full enumeration of the policy grid with induced equilibrium responses;
// ties break to lower r, permissive first, lower m.
OptimalPolicyResult optimal_policy(const GameConfig& config, const TypePriors& priors,
                                   const WelfareWeights& weights, const ActionGrids& grids,
                                   std::optional<UniversityType> university_type,
                                   int threads = 1);

struct SweepRow {
  double lambda = 0.0;
  double eta = 0.0;
  UniversityAction policy;
  WelfareBreakdown value;
};

// optimal_policy per (lambda, eta) pair, ordered lambda-major.
std::vector<SweepRow> weight_sweep(const GameConfig& config, const TypePriors& priors,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& etas, const ActionGrids& grids,
                                   std::optional<UniversityType> university_type,
                                   int threads = 1);

}  // namespace capstone
