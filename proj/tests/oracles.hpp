#pragma once

// Independent exhaustive enumerators used to cross-check every solver. These
// loops are written from the published payoff definitions and tie-break rules
// only; they deliberately share no code with the solver implementations.

#include <array>
#include <optional>
#include <vector>

#include "capstone/mechanism.hpp"

namespace oracle {

using namespace capstone;

inline StudentBestResponse student_br(const StudentType& type, const UniversityAction& policy,
                                      const SponsorAction& sponsor, const GameConfig& config,
                                      const ActionGrids& grids) {
  StudentBestResponse best;
  bool first = true;
  for (double e : grids.effort) {
    for (Orientation x : grids.orientations) {
      const StudentAction action{e, x};
      OutcomeVector out;
      out.technical_quality = expected_technical_quality(action, sponsor, config.coefficients);
      out.documentation_quality =
          expected_documentation_quality(action, policy, sponsor, config.coefficients);
      out.timeliness = expected_timeliness(action, sponsor, config.coefficients);
      const double utility = student_utility(out, action, type, config.weights);
      if (first || utility > best.utility) {
        best = {action, utility};
        first = false;
      }
    }
  }
  return best;
}

inline SponsorBestResponse sponsor_br(const UniversityAction& policy, const GameConfig& config,
                                      const TypePriors& priors, const ActionGrids& grids) {
  SponsorBestResponse best;
  bool first = true;
  for (Posture s : grids.postures) {
    for (int o : grids.mentoring_intensities) {
      for (double d : grids.scope) {
        const SponsorAction action{s, o, d};
        double total = 0.0;
        for (std::size_t tier = 0; tier < 2; ++tier) {
          const double ps = priors.student[tier];
          if (ps == 0.0) continue;
          const StudentAction response =
              student_br(config.student_type(static_cast<StudentCostTier>(tier)), policy, action,
                         config, grids)
                  .action;
          OutcomeVector out;
          out.alignment = expected_alignment(response, action, config.coefficients);
          out.timeliness = expected_timeliness(response, action, config.coefficients);
          total += ps * sponsor_utility(out, action, config.weights);
        }
        if (first || total > best.expected_utility) {
          best = {action, total};
          first = false;
        }
      }
    }
  }
  return best;
}

inline PolicyBestResponse university_policy(UniversityType type, const GameConfig& config,
                                            const TypePriors& priors, const ActionGrids& grids) {
  PolicyBestResponse best;
  bool first = true;
  for (double r : grids.rubric) {
    for (IpPolicy i : grids.ip_policies) {
      for (int m : grids.mentoring_requirements) {
        const UniversityAction policy{r, i, m};
        const SponsorAction sponsor = sponsor_br(policy, config, priors, grids).action;
        std::array<StudentAction, 2> responses{};
        for (std::size_t tier = 0; tier < 2; ++tier) {
          responses[tier] =
              student_br(config.student_type(static_cast<StudentCostTier>(tier)), policy, sponsor,
                         config, grids)
                  .action;
        }
        double total = 0.0;
        for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
          const double ft = priors.sponsor_weights[t];
          if (ft == 0.0) continue;
          for (std::size_t tier = 0; tier < 2; ++tier) {
            const double ps = priors.student[tier];
            if (ps == 0.0) continue;
            ActionProfile profile{policy, sponsor, responses[tier]};
            TypeProfile tp;
            tp.university = type;
            tp.sponsor.value = priors.sponsor_grid[t];
            tp.student = config.student_type(static_cast<StudentCostTier>(tier));
            const OutcomeVector out = outcomes(profile, tp, config.coefficients);
            total += ft * ps * university_utility(out, policy, type, config.weights);
          }
        }
        if (first || total > best.expected_utility) {
          best = {policy, total};
          first = false;
        }
      }
    }
  }
  return best;
}

struct WelfarePoint {
  UniversityAction policy;
  double university = 0.0;
  double students = 0.0;
  double sponsor = 0.0;
  double welfare = 0.0;
};

inline WelfarePoint optimal(const GameConfig& config, const TypePriors& priors,
                            const WelfareWeights& weights, const ActionGrids& grids,
                            std::optional<UniversityType> university_type) {
  std::array<double, 2> pu = priors.university;
  if (university_type) {
    pu = {0.0, 0.0};
    pu[static_cast<std::size_t>(*university_type)] = 1.0;
  }

  WelfarePoint best;
  bool first = true;
  for (double r : grids.rubric) {
    for (IpPolicy i : grids.ip_policies) {
      for (int m : grids.mentoring_requirements) {
        const UniversityAction policy{r, i, m};
        const SponsorAction sponsor = sponsor_br(policy, config, priors, grids).action;
        std::array<StudentAction, 2> responses{};
        for (std::size_t tier = 0; tier < 2; ++tier) {
          responses[tier] =
              student_br(config.student_type(static_cast<StudentCostTier>(tier)), policy, sponsor,
                         config, grids)
                  .action;
        }

        WelfarePoint point;
        point.policy = policy;
        // Three separate passes in the documented summation order, matching
        // the three expectations the engine reports.
        auto expectation = [&](auto&& value_of) {
          double total = 0.0;
          for (std::size_t u = 0; u < 2; ++u) {
            if (pu[u] == 0.0) continue;
            for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
              const double ft = priors.sponsor_weights[t];
              if (ft == 0.0) continue;
              for (std::size_t tier = 0; tier < 2; ++tier) {
                const double ps = priors.student[tier];
                if (ps == 0.0) continue;
                ActionProfile profile{policy, sponsor, responses[tier]};
                TypeProfile tp;
                tp.university = static_cast<UniversityType>(u);
                tp.sponsor.value = priors.sponsor_grid[t];
                tp.student = config.student_type(static_cast<StudentCostTier>(tier));
                total += pu[u] * ft * ps * value_of(profile, tp);
              }
            }
          }
          return total;
        };
        point.university = expectation([&](const ActionProfile& profile, const TypeProfile& tp) {
          const OutcomeVector out = outcomes(profile, tp, config.coefficients);
          return university_utility(out, policy, tp.university, config.weights);
        });
        point.students = expectation([&](const ActionProfile& profile, const TypeProfile& tp) {
          const OutcomeVector out = outcomes(profile, tp, config.coefficients);
          return student_utility(out, profile.student, tp.student, config.weights);
        });
        point.sponsor = expectation([&](const ActionProfile& profile, const TypeProfile& tp) {
          const OutcomeVector out = outcomes(profile, tp, config.coefficients);
          return sponsor_utility(out, profile.sponsor, config.weights);
        });
        point.welfare = point.university + weights.lambda * point.students +
                        weights.eta * point.sponsor;

        if (first || point.welfare > best.welfare) {
          best = point;
          first = false;
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
