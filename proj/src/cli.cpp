#include "capstone/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "capstone/mechanism.hpp"
#include "capstone/parallel.hpp"
#include "capstone/report.hpp"
#include "capstone/scenario.hpp"
#include "capstone/strategy.hpp"

namespace capstone::cli {

namespace {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string preset_name;
  std::string scenario_path;
  std::string format = "table";
  std::string out_path;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_source = true) {
  if (with_source) {
    cmd->add_option("--preset", flags.preset_name, "Built-in scenario: case1, case2 or case3");
    cmd->add_option("--scenario", flags.scenario_path, "Path to a scenario JSON file");
  }
  cmd->add_option("--format", flags.format, "Output format: table, csv, json or svg-bars");
  cmd->add_option("--out", flags.out_path, "Write the document to this path instead of stdout");
  cmd->add_option("--threads", flags.threads,
                  "Worker threads for grid enumeration (default: CAPSTONE_GAME_THREADS or 1)");
}

Scenario load_from_flags(const CommonFlags& flags) {
  const bool has_preset = !flags.preset_name.empty();
  const bool has_path = !flags.scenario_path.empty();
  if (has_preset == has_path) {
    throw ValidationError("", "provide exactly one of --preset or --scenario");
  }
  if (has_preset) {
    return preset(parse_preset_name(flags.preset_name, "--preset"));
  }
  std::ifstream in(flags.scenario_path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file \"" + flags.scenario_path + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("failed reading scenario file \"" + flags.scenario_path + "\"");
  return load_scenario(text.str());
}

void emit(const std::string& document, const CommonFlags& flags, std::ostream& out) {
  if (flags.out_path.empty()) {
    out << document;
    return;
  }
  std::ofstream file(flags.out_path, std::ios::binary);
  if (!file) throw IoError("cannot write output file \"" + flags.out_path + "\"");
  file << document;
  if (!file) throw IoError("failed writing output file \"" + flags.out_path + "\"");
}

const ActionProfile& require_actions(const Scenario& scenario) {
  if (!scenario.actions)
    throw ValidationError("actions", "this command needs an \"actions\" section in the scenario");
  return *scenario.actions;
}

const TypeProfile& require_types(const Scenario& scenario) {
  if (!scenario.types)
    throw ValidationError("types", "this command needs a \"types\" section in the scenario");
  return *scenario.types;
}

std::string scenario_label(const Scenario& scenario) {
  return scenario.config.name.empty() ? "scenario" : scenario.config.name;
}

void warn_out_of_range(const OutcomeVector& out, std::ostream& err) {
  if (!out.in_unit_range) {
    err << "warning: one or more outcome values fall outside [0,1]; "
           "values are reported unclamped and the validity flag is false\n";
  }
}

json outcome_json(const OutcomeVector& out) {
  json j;
  j["technical_quality"] = out.technical_quality;
  j["documentation_quality"] = out.documentation_quality;
  j["timeliness"] = out.timeliness;
  j["alignment"] = out.alignment;
  j["publishability"] = out.publishability;
  j["in_unit_range"] = out.in_unit_range;
  return j;
}

json utility_json(const UtilityVector& u) {
  json j;
  j["university"] = u.university;
  j["sponsor"] = u.sponsor;
  j["students"] = u.students;
  return j;
}

json regime_json(const RegimeLabel& label) {
  json j;
  j["label"] = to_string(label.value);
  j["rule_trace"] = label.rule_trace;
  return j;
}

TableDocument evaluation_table(const std::string& label, const OutcomeVector& out,
                               const UtilityVector& u, const RegimeLabel& regime) {
  TableDocument doc;
  doc.title = "Evaluation of " + label;
  doc.columns = {"section", "name", "value", "value_full", "interpretation"};
  const TableDocument outcomes = outcome_report(out);
  for (const auto& row : outcomes.rows)
    doc.rows.push_back({"outcome", row[0], row[1], row[2], row[3]});
  const TableDocument utils = utility_report(u);
  for (const auto& row : utils.rows)
    doc.rows.push_back({"utility", row[0], row[1], row[2], row[3]});
  std::string trace;
  for (const auto& rule : regime.rule_trace) {
    if (!trace.empty()) trace += "; ";
    trace += rule;
  }
  doc.rows.push_back({"regime", "label", to_string(regime.value), "", trace});
  return doc;
}

int emit_evaluation(const Scenario& scenario, const std::string& label,
                    const ActionProfile& profile, const TypeProfile& types,
                    const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const ReportFormat format = parse_report_format(flags.format, "--format");
  const OutcomeVector outv = outcomes(profile, types, scenario.config.coefficients);
  const UtilityVector utils = utilities(profile, types, scenario.config.coefficients,
                                        scenario.config.weights);
  const RegimeLabel regime = classify_regime(profile, scenario.config.regime);
  warn_out_of_range(outv, err);

  switch (format) {
    case ReportFormat::Table:
      emit(render_table(evaluation_table(label, outv, utils, regime)), flags, out);
      break;
    case ReportFormat::Csv:
      emit(render_csv(evaluation_table(label, outv, utils, regime)), flags, out);
      break;
    case ReportFormat::Json: {
      json j;
      j["scenario"] = label;
      j["outcomes"] = outcome_json(outv);
      j["utilities"] = utility_json(utils);
      j["regime"] = regime_json(regime);
      emit(j.dump(2) + "\n", flags, out);
      break;
    }
    case ReportFormat::SvgBars: {
      BarGroup group;
      group.label = label;
      group.bars = {{"U_U", utils.university}, {"U_C", utils.sponsor}, {"U_S", utils.students}};
      emit(render_svg_bars({group}, "Stakeholder utilities"), flags, out);
      break;
    }
  }
  return 0;
}

int run_evaluate(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_from_flags(flags);
  return emit_evaluation(scenario, scenario_label(scenario), require_actions(scenario),
                         require_types(scenario), flags, out, err);
}

// Precomputed student responses for every (tier, policy, sponsor action)
// triple, so follower rules are read-only lookups during policy enumeration.
std::unordered_map<std::string, StudentAction> precompute_student_map(
    const GameConfig& config, const ActionGrids& grids,
    const std::vector<UniversityAction>& policies) {
  std::unordered_map<std::string, StudentAction> memo;
  const std::vector<SponsorAction> sponsor_grid = grids.sponsor_actions();
  for (const UniversityAction& policy : policies) {
    const std::string policy_key = action_key(policy);
    for (const SponsorAction& sponsor : sponsor_grid) {
      const std::string pair_key = policy_key + "|" + action_key(sponsor);
      for (std::size_t s = 0; s < 2; ++s) {
        memo.emplace(std::to_string(s) + "|" + pair_key,
                     student_best_response(config.student_type(static_cast<StudentCostTier>(s)),
                                           policy, sponsor, config, grids)
                         .action);
      }
    }
  }
  return memo;
}

StudentRule memoized_student_rule(const GameConfig& config, const ActionGrids& grids,
                                  const std::unordered_map<std::string, StudentAction>& memo) {
  return [&config, &grids, &memo](const StudentType& st, const UniversityAction& u,
                                  const SponsorAction& c) {
    const std::string key = std::to_string(static_cast<std::size_t>(st.tier)) + "|" +
                            action_key(u) + "|" + action_key(c);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return student_best_response(st, u, c, config, grids).action;
  };
}

int run_best_response(const CommonFlags& flags, const std::string& player, std::ostream& out,
                      std::ostream& err) {
  (void)err;
  const Scenario scenario = load_from_flags(flags);
  const GameConfig& config = scenario.config;
  const ActionGrids& grids = config.grids;
  const ReportFormat format = parse_report_format(flags.format, "--format");
  const int threads = resolve_thread_count(flags.threads);

  std::string action_text;
  double value = 0.0;
  std::string value_name = "expected_utility";
  if (player == "student") {
    const TypeProfile& types = require_types(scenario);
    const ActionProfile& actions = require_actions(scenario);
    const StudentBestResponse best =
        student_best_response(types.student, actions.university, actions.sponsor, config, grids);
    action_text = action_key(best.action);
    value = best.utility;
    value_name = "utility";
  } else if (player == "sponsor") {
    const TypeProfile& types = require_types(scenario);
    const ActionProfile& actions = require_actions(scenario);
    const auto memo = precompute_student_map(config, grids, {actions.university});
    const SponsorBestResponse best =
        sponsor_best_response(types.sponsor, actions.university,
                              memoized_student_rule(config, grids, memo), config.priors, config,
                              grids);
    action_text = action_key(best.action);
    value = best.expected_utility;
  } else if (player == "university") {
    const TypeProfile& types = require_types(scenario);
    const auto memo = precompute_student_map(config, grids, grids.university_actions());
    const StudentRule student_rule = memoized_student_rule(config, grids, memo);
    const SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
      return sponsor_best_response(ct, u, student_rule, config.priors, config, grids).action;
    };
    const PolicyBestResponse best = university_best_policy(
        types.university, sponsor_rule, student_rule, config.priors, config, grids, threads);
    action_text = action_key(best.action);
    value = best.expected_utility;
  } else {
    throw ValidationError("--player", "expected \"student\", \"sponsor\" or \"university\"");
  }

  if (format == ReportFormat::Json) {
    json j;
    j["player"] = player;
    j["action"] = action_text;
    j[value_name] = value;
    emit(j.dump(2) + "\n", flags, out);
    return 0;
  }
  TableDocument doc;
  doc.title = "Best response of the " + player;
  doc.columns = {"key", "value"};
  doc.rows = {{"player", player},
              {"action", action_text},
              {value_name, format_full(value)}};
  emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  return 0;
}

int run_verify(const CommonFlags& flags, double step, double tolerance, std::ostream& out,
               std::ostream& err) {
  (void)err;
  const Scenario scenario = load_from_flags(flags);
  const DeviationReport report =
      verify_local_equilibrium(require_actions(scenario), require_types(scenario),
                               scenario.config, step, tolerance);
  const ReportFormat format = parse_report_format(flags.format, "--format");

  const std::pair<const char*, const PlayerDeviationReport*> players[] = {
      {"university", &report.university}, {"sponsor", &report.sponsor}, {"student", &report.student}};

  if (format == ReportFormat::Json) {
    json j;
    j["step"] = report.step;
    j["tolerance"] = report.tolerance;
    json body;
    for (const auto& [name, player] : players) {
      json p;
      p["max_gain"] = player->max_gain;
      p["consistent"] = player->consistent;
      if (player->best) p["best_deviation"] = player->best->description;
      json deviations = json::array();
      for (const auto& entry : player->entries) {
        json d;
        d["deviation"] = entry.description;
        d["gain"] = entry.gain;
        deviations.push_back(std::move(d));
      }
      p["deviations"] = std::move(deviations);
      body[name] = std::move(p);
    }
    j["players"] = std::move(body);
    emit(j.dump(2) + "\n", flags, out);
    return 0;
  }

  TableDocument doc;
  doc.title = "Local best-response audit (step " + format_compact(step) + ", tolerance " +
              format_compact(tolerance) + ")";
  doc.columns = {"player", "deviation", "gain", "gain_full", "improving"};
  for (const auto& [name, player] : players) {
    for (const auto& entry : player->entries) {
      doc.rows.push_back({name, entry.description, format_round3(entry.gain),
                          format_full(entry.gain), entry.gain > tolerance ? "yes" : "no"});
    }
    doc.rows.push_back({name, "(max over deviations)", format_round3(player->max_gain),
                        format_full(player->max_gain),
                        player->consistent ? "no (consistent)" : "yes (inconsistent)"});
  }
  emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  return 0;
}

int run_solve(const CommonFlags& flags, int max_iter, const std::string& offpath,
              bool complete_info, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_from_flags(flags);
  const GameConfig& config = scenario.config;
  const ReportFormat format = parse_report_format(flags.format, "--format");
  const int threads = resolve_thread_count(flags.threads);

  if (complete_info) {
    const TypeProfile& types = require_types(scenario);
    const ActionProfile profile = backward_induction(config, types, config.grids);
    return emit_evaluation(scenario, scenario_label(scenario) + " (backward induction)", profile,
                           types, flags, out, err);
  }

  const OffPathRule rule = parse_off_path_rule(offpath, "--offpath");
  const PbeResult result =
      pbe_search(config, config.priors, config.grids, max_iter, rule, threads);
  const StrategyProfile& strategy = result.strategy;

  const std::size_t modal_u =
      config.priors.university[1] > config.priors.university[0] ? 1 : 0;
  const std::size_t on_path_policy =
      static_cast<std::size_t>(strategy.university_choice[modal_u]);

  // Distinct on-path sponsor actions with their prior mass, in grid order.
  std::map<int, double> sponsor_mass;
  for (std::size_t t = 0; t < strategy.theta_grid.size(); ++t) {
    sponsor_mass[strategy.sponsor_at(t, on_path_policy)] += config.priors.sponsor_weights[t];
  }

  double posterior_mean = 0.0;
  for (std::size_t t = 0; t < result.beliefs.mu_sponsor.size(); ++t) {
    posterior_mean += strategy.theta_grid[t] * result.beliefs.mu_sponsor[t];
  }

  if (format == ReportFormat::Json) {
    json j;
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["off_path_rule"] = to_string(rule);
    json policies;
    policies["low"] = action_key(strategy.policy_grid[
        static_cast<std::size_t>(strategy.university_choice[0])]);
    policies["high"] = action_key(strategy.policy_grid[
        static_cast<std::size_t>(strategy.university_choice[1])]);
    j["policy_by_university_type"] = std::move(policies);
    json sponsors = json::array();
    for (const auto& [index, mass] : sponsor_mass) {
      json row;
      row["action"] = action_key(strategy.sponsor_grid[static_cast<std::size_t>(index)]);
      row["prior_mass"] = mass;
      json students;
      for (std::size_t s = 0; s < 2; ++s) {
        students[s == 0 ? "low" : "high"] = action_key(
            strategy.student_grid[static_cast<std::size_t>(strategy.student_at(
                s, on_path_policy, static_cast<std::size_t>(index)))]);
      }
      row["student_response"] = std::move(students);
      sponsors.push_back(std::move(row));
    }
    j["on_path_sponsor_actions"] = std::move(sponsors);
    json beliefs;
    beliefs["mu_university"] = {{"low", result.beliefs.mu_university[0]},
                                {"high", result.beliefs.mu_university[1]}};
    beliefs["mu_sponsor_mean"] = posterior_mean;
    beliefs["university_off_path"] = result.beliefs.university_off_path;
    beliefs["sponsor_off_path"] = result.beliefs.sponsor_off_path;
    j["beliefs"] = std::move(beliefs);
    emit(j.dump(2) + "\n", flags, out);
  } else {
    TableDocument doc;
    doc.title = "Equilibrium search";
    doc.columns = {"key", "value"};
    doc.rows.push_back({"converged", result.converged ? "true" : "false"});
    doc.rows.push_back({"iterations", std::to_string(result.iterations)});
    doc.rows.push_back({"off_path_rule", to_string(rule)});
    doc.rows.push_back({"policy[low]", action_key(strategy.policy_grid[
        static_cast<std::size_t>(strategy.university_choice[0])])});
    doc.rows.push_back({"policy[high]", action_key(strategy.policy_grid[
        static_cast<std::size_t>(strategy.university_choice[1])])});
    for (const auto& [index, mass] : sponsor_mass) {
      const std::string key =
          action_key(strategy.sponsor_grid[static_cast<std::size_t>(index)]);
      doc.rows.push_back({"sponsor_action{" + key + "}", "prior mass " + format_compact(mass)});
      for (std::size_t s = 0; s < 2; ++s) {
        doc.rows.push_back(
            {"student[" + std::string(s == 0 ? "low" : "high") + "|" + key + "]",
             action_key(strategy.student_grid[static_cast<std::size_t>(
                 strategy.student_at(s, on_path_policy, static_cast<std::size_t>(index)))])});
      }
    }
    doc.rows.push_back({"mu_university", format_full(result.beliefs.mu_university[0]) + " / " +
                                             format_full(result.beliefs.mu_university[1])});
    doc.rows.push_back({"mu_sponsor_mean", format_full(posterior_mean)});
    emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  }

  if (!result.converged) {
    err << "equilibrium search did not converge within " << max_iter << " iteration(s)\n";
    return 2;
  }
  return 0;
}

std::optional<UniversityType> configured_university_type(const Scenario& scenario,
                                                         bool average_over_types) {
  if (average_over_types) return std::nullopt;
  if (scenario.types) return scenario.types->university;
  return UniversityType::High;
}

void append_welfare_columns(TableDocument& doc) {
  doc.columns = {"lambda", "eta", "r", "i", "m", "E_UU", "E_US", "E_UC", "welfare"};
}

std::vector<std::string> welfare_row(double lambda, double eta, const UniversityAction& policy,
                                     const WelfareBreakdown& value) {
  return {format_compact(lambda),
          format_compact(eta),
          format_compact(policy.rubric_strictness),
          to_string(policy.ip_policy),
          std::to_string(policy.mentoring_requirement),
          format_full(value.university),
          format_full(value.students),
          format_full(value.sponsor),
          format_full(value.welfare)};
}

json welfare_json(const UniversityAction& policy, const WelfareBreakdown& value) {
  json j;
  j["policy"] = action_key(policy);
  j["E_UU"] = value.university;
  j["E_US"] = value.students;
  j["E_UC"] = value.sponsor;
  j["welfare"] = value.welfare;
  return j;
}

int run_optimize(const CommonFlags& flags, double lambda, double eta, bool average,
                 std::ostream& out, std::ostream& err) {
  (void)err;
  const Scenario scenario = load_from_flags(flags);
  const GameConfig& config = scenario.config;
  const ReportFormat format = parse_report_format(flags.format, "--format");
  const int threads = resolve_thread_count(flags.threads);
  const WelfareWeights weights{lambda, eta};
  const OptimalPolicyResult result =
      optimal_policy(config, config.priors, weights, config.grids,
                     configured_university_type(scenario, average), threads);

  if (format == ReportFormat::Json) {
    json j;
    j["lambda"] = lambda;
    j["eta"] = eta;
    j["university_type"] =
        average ? "averaged" : to_string(*configured_university_type(scenario, false));
    j["optimal"] = welfare_json(result.policy, result.value);
    json surface = json::array();
    for (const SurfaceRow& row : result.surface.rows)
      surface.push_back(welfare_json(row.policy, row.value));
    j["surface"] = std::move(surface);
    emit(j.dump(2) + "\n", flags, out);
    return 0;
  }

  TableDocument doc;
  doc.title = "Policy welfare surface (optimum first)";
  append_welfare_columns(doc);
  doc.rows.push_back(welfare_row(lambda, eta, result.policy, result.value));
  for (const SurfaceRow& row : result.surface.rows)
    doc.rows.push_back(welfare_row(lambda, eta, row.policy, row.value));
  emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  return 0;
}

int run_sweep(const CommonFlags& flags, const std::vector<double>& lambdas,
              const std::vector<double>& etas, bool average, std::ostream& out,
              std::ostream& err) {
  (void)err;
  const Scenario scenario = load_from_flags(flags);
  const GameConfig& config = scenario.config;
  const ReportFormat format = parse_report_format(flags.format, "--format");
  const int threads = resolve_thread_count(flags.threads);
  const std::vector<SweepRow> rows =
      weight_sweep(config, config.priors, lambdas.empty() ? std::vector<double>{0.0} : lambdas,
                   etas.empty() ? std::vector<double>{0.0} : etas, config.grids,
                   configured_university_type(scenario, average), threads);

  if (format == ReportFormat::Json) {
    json j = json::array();
    for (const SweepRow& row : rows) {
      json r = welfare_json(row.policy, row.value);
      r["lambda"] = row.lambda;
      r["eta"] = row.eta;
      j.push_back(std::move(r));
    }
    emit(j.dump(2) + "\n", flags, out);
    return 0;
  }

  TableDocument doc;
  doc.title = "Welfare-weight sweep";
  append_welfare_columns(doc);
  for (const SweepRow& row : rows)
    doc.rows.push_back(welfare_row(row.lambda, row.eta, row.policy, row.value));
  emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  return 0;
}

struct CaseResult {
  std::string name;
  OutcomeVector outcomes;
  UtilityVector utilities;
  RegimeLabel regime;
};

int run_reproduce(const CommonFlags& flags, const std::string& case_name, bool all,
                  std::ostream& out, std::ostream& err) {
  if (all == !case_name.empty()) {
    throw ValidationError("", "reproduce needs a case name (case1|case2|case3) or --all");
  }

  if (!all) {
    CommonFlags case_flags = flags;
    case_flags.preset_name = case_name;
    const Scenario scenario = preset(parse_preset_name(case_name, "reproduce"));
    return emit_evaluation(scenario, case_name, *scenario.actions, *scenario.types, case_flags,
                           out, err);
  }

  const ReportFormat format = parse_report_format(flags.format, "--format");
  std::vector<CaseResult> cases;
  for (const PresetName name : {PresetName::Case1, PresetName::Case2, PresetName::Case3}) {
    const Scenario scenario = preset(name);
    CaseResult result;
    result.name = to_string(name);
    result.outcomes = outcomes(*scenario.actions, *scenario.types, scenario.config.coefficients);
    result.utilities = utilities(*scenario.actions, *scenario.types,
                                 scenario.config.coefficients, scenario.config.weights);
    result.regime = classify_regime(*scenario.actions, scenario.config.regime);
    warn_out_of_range(result.outcomes, err);
    cases.push_back(std::move(result));
  }

  if (format == ReportFormat::SvgBars) {
    std::vector<BarGroup> groups;
    for (const CaseResult& c : cases) {
      BarGroup group;
      group.label = c.name;
      group.bars = {{"U_U", c.utilities.university},
                    {"U_C", c.utilities.sponsor},
                    {"U_S", c.utilities.students}};
      groups.push_back(std::move(group));
    }
    emit(render_svg_bars(groups, "Stakeholder utilities by scenario"), flags, out);
    return 0;
  }
  if (format == ReportFormat::Json) {
    json j = json::array();
    for (const CaseResult& c : cases) {
      json row;
      row["case"] = c.name;
      row["regime"] = regime_json(c.regime);
      row["outcomes"] = outcome_json(c.outcomes);
      row["utilities"] = utility_json(c.utilities);
      j.push_back(std::move(row));
    }
    emit(j.dump(2) + "\n", flags, out);
    return 0;
  }

  TableDocument doc;
  doc.title = "Cross-case outcomes and utilities";
  doc.columns = {"case", "regime", "section", "name", "value", "value_full"};
  for (const CaseResult& c : cases) {
    const std::string regime = to_string(c.regime.value);
    const TableDocument outs = outcome_report(c.outcomes);
    for (const auto& row : outs.rows)
      doc.rows.push_back({c.name, regime, "outcome", row[0], row[1], row[2]});
    const TableDocument utils = utility_report(c.utilities);
    for (const auto& row : utils.rows)
      doc.rows.push_back({c.name, regime, "utility", row[0], row[1], row[2]});
  }
  emit(format == ReportFormat::Csv ? render_csv(doc) : render_table(doc), flags, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential Bayesian game engine for university-sponsor-student "
               "capstone incentives"};
  app.require_subcommand(1);

  CommonFlags evaluate_flags;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Outcomes, utilities and regime of a configured action profile");
  add_common(evaluate, evaluate_flags);

  CommonFlags br_flags;
  std::string br_player = "student";
  CLI::App* best_response = app.add_subcommand(
      "best-response", "Grid best response of one player in the configured environment");
  add_common(best_response, br_flags);
  best_response->add_option("--player", br_player, "student, sponsor or university");

  CommonFlags verify_flags;
  double verify_step = 0.05;
  double verify_tolerance = 1e-9;
  CLI::App* verify = app.add_subcommand(
      "verify", "One-step deviation audit of the configured action profile");
  add_common(verify, verify_flags);
  verify->add_option("--step", verify_step, "Deviation step for continuous coordinates");
  verify->add_option("--tolerance", verify_tolerance, "Consistency tolerance on utility gains");

  CommonFlags solve_flags;
  int solve_max_iter = 25;
  std::string solve_offpath = "prior";
  bool solve_complete_info = false;
  CLI::App* solve = app.add_subcommand(
      "solve", "Equilibrium search over the discretized game");
  add_common(solve, solve_flags);
  solve->add_option("--max-iter", solve_max_iter, "Iteration cap for the equilibrium sweep");
  solve->add_option("--offpath", solve_offpath, "Off-path belief rule: prior or uniform");
  solve->add_flag("--complete-info", solve_complete_info,
                  "Backward induction for the realized type profile instead");

  CommonFlags optimize_flags;
  double optimize_lambda = 0.0;
  double optimize_eta = 0.0;
  bool optimize_average = false;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Welfare-optimal university policy with induced responses");
  add_common(optimize, optimize_flags);
  optimize->add_option("--lambda", optimize_lambda, "Weight on student welfare");
  optimize->add_option("--eta", optimize_eta, "Weight on sponsor welfare");
  optimize->add_flag("--avg-university-type", optimize_average,
                     "Average the objective over the university-type prior");

  CommonFlags sweep_flags;
  std::vector<double> sweep_lambdas;
  std::vector<double> sweep_etas;
  bool sweep_average = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Optimal policy across a grid of welfare weights");
  add_common(sweep, sweep_flags);
  sweep->add_option("--lambda", sweep_lambdas, "Comma-separated student-welfare weights")
      ->delimiter(',');
  sweep->add_option("--eta", sweep_etas, "Comma-separated sponsor-welfare weights")
      ->delimiter(',');
  sweep->add_flag("--avg-university-type", sweep_average,
                  "Average the objective over the university-type prior");

  CommonFlags reproduce_flags;
  std::string reproduce_case;
  bool reproduce_all = false;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Reference tables for the built-in case studies");
  reproduce->add_option("case", reproduce_case, "case1, case2 or case3");
  reproduce->add_flag("--all", reproduce_all, "All three cases plus the grouped-bar chart");
  add_common(reproduce, reproduce_flags, /*with_source=*/false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (evaluate->parsed()) return run_evaluate(evaluate_flags, out, err);
    if (best_response->parsed()) return run_best_response(br_flags, br_player, out, err);
    if (verify->parsed())
      return run_verify(verify_flags, verify_step, verify_tolerance, out, err);
    if (solve->parsed())
      return run_solve(solve_flags, solve_max_iter, solve_offpath, solve_complete_info, out, err);
    if (optimize->parsed())
      return run_optimize(optimize_flags, optimize_lambda, optimize_eta, optimize_average, out, err);
    if (sweep->parsed())
      return run_sweep(sweep_flags, sweep_lambdas, sweep_etas, sweep_average, out, err);
    if (reproduce->parsed())
      return run_reproduce(reproduce_flags, reproduce_case, reproduce_all, out, err);
    err << "error: no subcommand selected\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace capstone::cli
