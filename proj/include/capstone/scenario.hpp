#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "capstone/beliefs.hpp"
#include "capstone/grids.hpp"
#include "capstone/model.hpp"

namespace capstone {

// Regime rules are qualitative in origin; the cutoffs live in config so a
// scenario can override them.
struct RegimeThresholds {
  double cooperative_min_effort = 0.7;
};

// One complete model instance: coefficients, payoff weights, student costs,
// priors, grids and the scope bound.
struct GameConfig {
  OutcomeCoefficients coefficients;
  PayoffWeights weights;
  std::array<double, 2> student_costs{0.15, 0.25};  // [LowCost, HighCost]
  TypePriors priors = TypePriors::uniform();
  ActionGrids grids = ActionGrids::regular();
  double d_max = 1.0;
  RegimeThresholds regime;
  std::string name;
  std::string description;

  StudentType student_type(StudentCostTier tier) const {
    return StudentType{tier, student_costs[static_cast<std::size_t>(tier)]};
  }
};

void validate(const GameConfig& config);

// Optional likelihood sections of a scenario document.
struct ScenarioLikelihoods {
  std::optional<LikelihoodTable> university;
  std::optional<SponsorLikelihood> sponsor;
};

struct Scenario {
  GameConfig config;
  std::optional<ActionProfile> actions;
  std::optional<TypeProfile> types;
  ScenarioLikelihoods likelihoods;
};

// Parses and fully validates a scenario JSON document. Unknown keys and every
// violated invariant are reported with a dotted field path.
Scenario load_scenario(const std::string& text);

// Serializes a scenario back to JSON (schema_version 1). load(save(x)) is
// semantically identical to x.
std::string save_scenario(const Scenario& scenario);

enum class PresetName { Case1, Case2, Case3 };

PresetName parse_preset_name(const std::string& s, const std::string& field);
std::string to_string(PresetName name);

// Built-in configurations of the three published case studies.
Scenario preset(PresetName name);

enum class Regime { Cooperative, ExploitativeSponsor, GradeGaming, Other };

std::string to_string(Regime regime);

struct RegimeLabel {
  Regime value = Regime::Other;
  std::vector<std::string> rule_trace;
};

// Rule order: minimalist orientation -> grade gaming; exploitative posture
// with zero mentoring -> exploitative sponsor; supportive posture, mentoring,
// learning orientation and effort above the threshold -> cooperative;
// otherwise Other (empty trace).
RegimeLabel classify_regime(const ActionProfile& profile,
                            const RegimeThresholds& thresholds = RegimeThresholds{});

}  // namespace capstone
