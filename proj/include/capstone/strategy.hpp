#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capstone/beliefs.hpp"
#include "capstone/grids.hpp"
#include "capstone/scenario.hpp"

namespace capstone {

using StudentRule =
    std::function<StudentAction(const StudentType&, const UniversityAction&, const SponsorAction&)>;
using SponsorRule = std::function<SponsorAction(const SponsorType&, const UniversityAction&)>;

struct StudentBestResponse {
  StudentAction action;
  double utility = 0.0;
};

struct SponsorBestResponse {
  SponsorAction action;
  double expected_utility = 0.0;
};

struct PolicyBestResponse {
  UniversityAction action;
  double expected_utility = 0.0;
};

// Exhaustive maximization of U_S over the student grid for a fixed
// environment. Ties break to lower effort, then learning < deliverable <
// minimalist.
StudentBestResponse student_best_response(const StudentType& type,
                                          const UniversityAction& policy,
                                          const SponsorAction& sponsor,
                                          const GameConfig& config,
                                          const ActionGrids& grids);

// Maximizes E_{p_S}[U_C] over the sponsor grid, anticipating the student
// response per cost tier. Ties break to supportive first, lower o, lower d.
SponsorBestResponse sponsor_best_response(const SponsorType& type,
                                          const UniversityAction& policy,
                                          const StudentRule& student_rule,
                                          const TypePriors& priors,
                                          const GameConfig& config,
                                          const ActionGrids& grids);

// Maximizes E_{f_C x p_S}[U_U] over the policy grid with both follower rules
// rolled out. Ties break to lower r, permissive first, lower m.
PolicyBestResponse university_best_policy(UniversityType type,
                                          const SponsorRule& sponsor_rule,
                                          const StudentRule& student_rule,
                                          const TypePriors& priors,
                                          const GameConfig& config,
                                          const ActionGrids& grids,
                                          int threads = 1);

// Complete-information benchmark for one realized type profile: the three
// best responses composed along the move order.
ActionProfile backward_induction(const GameConfig& config, const TypeProfile& types,
                                 const ActionGrids& grids);

struct DeviationEntry {
  std::string player;
  std::string description;  // e.g. "e: 0.85 -> 0.9"
  double gain = 0.0;
};

struct PlayerDeviationReport {
  double max_gain = 0.0;
  std::optional<DeviationEntry> best;
  bool consistent = true;
  std::vector<DeviationEntry> entries;
};

struct DeviationReport {
  PlayerDeviationReport university;
  PlayerDeviationReport sponsor;
  PlayerDeviationReport student;
  double step = 0.0;
  double tolerance = 0.0;

  bool all_consistent() const {
    return university.consistent && sponsor.consistent && student.consistent;
  }
};

// One-step deviation audit at a realized profile: +-step in each continuous
// coordinate (skipping infeasible points), every alternative for discrete
// coordinates, all other actions held fixed. step == 0 disables the
// deviation set entirely, which makes every player trivially consistent.
DeviationReport verify_local_equilibrium(const ActionProfile& profile,
                                         const TypeProfile& types,
                                         const GameConfig& config, double step,
                                         double tolerance = 1e-9);

// Pure behavioral strategies over the grids, stored as grid indices
// (degenerate distributions).
struct StrategyProfile {
  std::vector<UniversityAction> policy_grid;
  std::vector<SponsorAction> sponsor_grid;
  std::vector<StudentAction> student_grid;
  std::vector<double> theta_grid;

  std::array<int, 2> university_choice{0, 0};  // [university type] -> policy index
  std::vector<int> sponsor_choice;             // [theta][policy] -> sponsor index
  std::vector<int> student_choice;             // [tier][policy][sponsor] -> student index

  int sponsor_at(std::size_t theta, std::size_t policy) const {
    return sponsor_choice[theta * policy_grid.size() + policy];
  }
  int student_at(std::size_t tier, std::size_t policy, std::size_t sponsor) const {
    return student_choice[(tier * policy_grid.size() + policy) * sponsor_grid.size() + sponsor];
  }
};

struct PbeResult {
  StrategyProfile strategy;
  BeliefState beliefs;
  bool converged = false;
  int iterations = 0;
};

// Iterated best-response sweep over all information sets: students, then
// sponsors, then the university, then beliefs induced from the strategies.
// Stops when a full sweep leaves every table unchanged, or at max_iter.
PbeResult pbe_search(const GameConfig& config, const TypePriors& priors,
                     const ActionGrids& grids, int max_iter = 10,
                     OffPathRule off_path = OffPathRule::RevertToPrior,
                     int threads = 1);

}  // namespace capstone
