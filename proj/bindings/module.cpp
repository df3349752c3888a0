#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "capstone/cli.hpp"
#include "capstone/mechanism.hpp"
#include "capstone/report.hpp"
#include "capstone/scenario.hpp"
#include "capstone/strategy.hpp"

namespace py = pybind11;
using namespace capstone;

namespace {

// Keyword-free convenience: run the CLI in-process, returning
// (exit_code, stdout, stderr).
py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_capstone, m) {
  m.doc() = "Deterministic game engine for capstone-project incentives";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::enum_<UniversityType>(m, "UniversityType")
      .value("Low", UniversityType::Low)
      .value("High", UniversityType::High);
  py::enum_<IpPolicy>(m, "IpPolicy")
      .value("Permissive", IpPolicy::Permissive)
      .value("Restrictive", IpPolicy::Restrictive);
  py::enum_<Posture>(m, "Posture")
      .value("Supportive", Posture::Supportive)
      .value("Exploitative", Posture::Exploitative);
  py::enum_<Orientation>(m, "Orientation")
      .value("Learning", Orientation::Learning)
      .value("Deliverable", Orientation::Deliverable)
      .value("Minimalist", Orientation::Minimalist);
  py::enum_<StudentCostTier>(m, "StudentCostTier")
      .value("LowCost", StudentCostTier::LowCost)
      .value("HighCost", StudentCostTier::HighCost);
  py::enum_<OffPathRule>(m, "OffPathRule")
      .value("RevertToPrior", OffPathRule::RevertToPrior)
      .value("Uniform", OffPathRule::Uniform);
  py::enum_<Regime>(m, "Regime")
      .value("Cooperative", Regime::Cooperative)
      .value("ExploitativeSponsor", Regime::ExploitativeSponsor)
      .value("GradeGaming", Regime::GradeGaming)
      .value("Other", Regime::Other);
  py::enum_<PresetName>(m, "PresetName")
      .value("Case1", PresetName::Case1)
      .value("Case2", PresetName::Case2)
      .value("Case3", PresetName::Case3);

  py::class_<SponsorType>(m, "SponsorType")
      .def(py::init<>())
      .def(py::init([](double value) { return SponsorType{value}; }), py::arg("value"))
      .def_readwrite("value", &SponsorType::value);

  py::class_<StudentType>(m, "StudentType")
      .def(py::init<>())
      .def(py::init([](StudentCostTier tier, double cost) {
             return StudentType{tier, cost};
           }),
           py::arg("tier"), py::arg("effort_cost"))
      .def_readwrite("tier", &StudentType::tier)
      .def_readwrite("effort_cost", &StudentType::effort_cost);

  py::class_<UniversityAction>(m, "UniversityAction")
      .def(py::init<>())
      .def(py::init([](double r, IpPolicy i, int mreq) {
             return UniversityAction{r, i, mreq};
           }),
           py::arg("r"), py::arg("i"), py::arg("m"))
      .def_readwrite("r", &UniversityAction::rubric_strictness)
      .def_readwrite("i", &UniversityAction::ip_policy)
      .def_readwrite("m", &UniversityAction::mentoring_requirement)
      .def("__repr__", [](const UniversityAction& a) { return action_key(a); });

  py::class_<SponsorAction>(m, "SponsorAction")
      .def(py::init<>())
      .def(py::init([](Posture s, int o, double d) {
             return SponsorAction{s, o, d};
           }),
           py::arg("s"), py::arg("o"), py::arg("d"))
      .def_readwrite("s", &SponsorAction::posture)
      .def_readwrite("o", &SponsorAction::mentoring_intensity)
      .def_readwrite("d", &SponsorAction::scope_strictness)
      .def("__repr__", [](const SponsorAction& a) { return action_key(a); });

  py::class_<StudentAction>(m, "StudentAction")
      .def(py::init<>())
      .def(py::init([](double e, Orientation x) { return StudentAction{e, x}; }),
           py::arg("e"), py::arg("x"))
      .def_readwrite("e", &StudentAction::effort)
      .def_readwrite("x", &StudentAction::orientation)
      .def("__repr__", [](const StudentAction& a) { return action_key(a); });

  py::class_<TypeProfile>(m, "TypeProfile")
      .def(py::init<>())
      .def_readwrite("university", &TypeProfile::university)
      .def_readwrite("sponsor", &TypeProfile::sponsor)
      .def_readwrite("student", &TypeProfile::student);

  py::class_<ActionProfile>(m, "ActionProfile")
      .def(py::init<>())
      .def_readwrite("university", &ActionProfile::university)
      .def_readwrite("sponsor", &ActionProfile::sponsor)
      .def_readwrite("student", &ActionProfile::student);

  py::class_<OutcomeCoefficients>(m, "OutcomeCoefficients")
      .def(py::init<>())
      .def_readwrite("q0", &OutcomeCoefficients::q0)
      .def_readwrite("q1", &OutcomeCoefficients::q1)
      .def_readwrite("q2", &OutcomeCoefficients::q2)
      .def_readwrite("q3", &OutcomeCoefficients::q3)
      .def_readwrite("q4", &OutcomeCoefficients::q4)
      .def_readwrite("q5", &OutcomeCoefficients::q5)
      .def_readwrite("d0", &OutcomeCoefficients::d0)
      .def_readwrite("d1", &OutcomeCoefficients::d1)
      .def_readwrite("d2", &OutcomeCoefficients::d2)
      .def_readwrite("d3", &OutcomeCoefficients::d3)
      .def_readwrite("d4", &OutcomeCoefficients::d4)
      .def_readwrite("t0", &OutcomeCoefficients::t0)
      .def_readwrite("t1", &OutcomeCoefficients::t1)
      .def_readwrite("t2", &OutcomeCoefficients::t2)
      .def_readwrite("t3", &OutcomeCoefficients::t3)
      .def_readwrite("a0", &OutcomeCoefficients::a0)
      .def_readwrite("a1", &OutcomeCoefficients::a1)
      .def_readwrite("a2", &OutcomeCoefficients::a2)
      .def_readwrite("a3", &OutcomeCoefficients::a3)
      .def_readwrite("p0", &OutcomeCoefficients::p0)
      .def_readwrite("p1", &OutcomeCoefficients::p1)
      .def_readwrite("p2", &OutcomeCoefficients::p2)
      .def_readwrite("p3", &OutcomeCoefficients::p3)
      .def_readwrite("p4", &OutcomeCoefficients::p4);

  py::class_<PayoffWeights>(m, "PayoffWeights")
      .def(py::init<>())
      .def_readwrite("alpha_q", &PayoffWeights::alpha_q)
      .def_readwrite("alpha_d", &PayoffWeights::alpha_d)
      .def_readwrite("alpha_p", &PayoffWeights::alpha_p)
      .def_readwrite("c_r", &PayoffWeights::c_r)
      .def_readwrite("c_m", &PayoffWeights::c_m)
      .def_readwrite("beta_a", &PayoffWeights::beta_a)
      .def_readwrite("beta_t", &PayoffWeights::beta_t)
      .def_readwrite("c_o", &PayoffWeights::c_o)
      .def_readwrite("c_d", &PayoffWeights::c_d)
      .def_readwrite("gamma_q", &PayoffWeights::gamma_q)
      .def_readwrite("gamma_d", &PayoffWeights::gamma_d)
      .def_readwrite("gamma_t", &PayoffWeights::gamma_t);

  py::class_<OutcomeVector>(m, "OutcomeVector")
      .def(py::init<>())
      .def_readwrite("technical_quality", &OutcomeVector::technical_quality)
      .def_readwrite("documentation_quality", &OutcomeVector::documentation_quality)
      .def_readwrite("timeliness", &OutcomeVector::timeliness)
      .def_readwrite("alignment", &OutcomeVector::alignment)
      .def_readwrite("publishability", &OutcomeVector::publishability)
      .def_readwrite("in_unit_range", &OutcomeVector::in_unit_range);

  py::class_<UtilityVector>(m, "UtilityVector")
      .def(py::init<>())
      .def_readwrite("university", &UtilityVector::university)
      .def_readwrite("sponsor", &UtilityVector::sponsor)
      .def_readwrite("students", &UtilityVector::students);

  py::class_<TypePriors>(m, "TypePriors")
      .def(py::init<>())
      .def_static("uniform", &TypePriors::uniform, py::arg("n_theta") = 101)
      .def_static("point_mass", &TypePriors::point_mass, py::arg("types"))
      .def_readwrite("university", &TypePriors::university)
      .def_readwrite("sponsor_grid", &TypePriors::sponsor_grid)
      .def_readwrite("sponsor_weights", &TypePriors::sponsor_weights)
      .def_readwrite("student", &TypePriors::student);

  py::class_<ActionGrids>(m, "ActionGrids")
      .def(py::init<>())
      .def_static("regular", &ActionGrids::regular, py::arg("effort_step") = 0.05,
                  py::arg("scope_step") = 0.05, py::arg("rubric_step") = 0.05,
                  py::arg("d_max") = 1.0)
      .def_readwrite("effort", &ActionGrids::effort)
      .def_readwrite("scope", &ActionGrids::scope)
      .def_readwrite("rubric", &ActionGrids::rubric);

  py::class_<RegimeThresholds>(m, "RegimeThresholds")
      .def(py::init<>())
      .def_readwrite("cooperative_min_effort", &RegimeThresholds::cooperative_min_effort);

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init<>())
      .def_readwrite("coefficients", &GameConfig::coefficients)
      .def_readwrite("weights", &GameConfig::weights)
      .def_readwrite("student_costs", &GameConfig::student_costs)
      .def_readwrite("priors", &GameConfig::priors)
      .def_readwrite("grids", &GameConfig::grids)
      .def_readwrite("d_max", &GameConfig::d_max)
      .def_readwrite("regime", &GameConfig::regime)
      .def_readwrite("name", &GameConfig::name)
      .def_readwrite("description", &GameConfig::description);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("config", &Scenario::config)
      .def_readwrite("actions", &Scenario::actions)
      .def_readwrite("types", &Scenario::types);

  py::class_<RegimeLabel>(m, "RegimeLabel")
      .def_readonly("value", &RegimeLabel::value)
      .def_readonly("rule_trace", &RegimeLabel::rule_trace);

  py::class_<StudentBestResponse>(m, "StudentBestResponse")
      .def_readonly("action", &StudentBestResponse::action)
      .def_readonly("utility", &StudentBestResponse::utility);
  py::class_<SponsorBestResponse>(m, "SponsorBestResponse")
      .def_readonly("action", &SponsorBestResponse::action)
      .def_readonly("expected_utility", &SponsorBestResponse::expected_utility);
  py::class_<PolicyBestResponse>(m, "PolicyBestResponse")
      .def_readonly("action", &PolicyBestResponse::action)
      .def_readonly("expected_utility", &PolicyBestResponse::expected_utility);

  py::class_<DeviationEntry>(m, "DeviationEntry")
      .def_readonly("player", &DeviationEntry::player)
      .def_readonly("description", &DeviationEntry::description)
      .def_readonly("gain", &DeviationEntry::gain);
  py::class_<PlayerDeviationReport>(m, "PlayerDeviationReport")
      .def_readonly("max_gain", &PlayerDeviationReport::max_gain)
      .def_readonly("best", &PlayerDeviationReport::best)
      .def_readonly("consistent", &PlayerDeviationReport::consistent)
      .def_readonly("entries", &PlayerDeviationReport::entries);
  py::class_<DeviationReport>(m, "DeviationReport")
      .def_readonly("university", &DeviationReport::university)
      .def_readonly("sponsor", &DeviationReport::sponsor)
      .def_readonly("student", &DeviationReport::student)
      .def_readonly("step", &DeviationReport::step)
      .def_readonly("tolerance", &DeviationReport::tolerance)
      .def("all_consistent", &DeviationReport::all_consistent);

  py::class_<BeliefState>(m, "BeliefState")
      .def_readonly("mu_university", &BeliefState::mu_university)
      .def_readonly("mu_sponsor", &BeliefState::mu_sponsor)
      .def_readonly("off_path_rule", &BeliefState::off_path_rule)
      .def_readonly("university_off_path", &BeliefState::university_off_path)
      .def_readonly("sponsor_off_path", &BeliefState::sponsor_off_path);

  py::class_<StrategyProfile>(m, "StrategyProfile")
      .def_readonly("policy_grid", &StrategyProfile::policy_grid)
      .def_readonly("sponsor_grid", &StrategyProfile::sponsor_grid)
      .def_readonly("student_grid", &StrategyProfile::student_grid)
      .def_readonly("theta_grid", &StrategyProfile::theta_grid)
      .def_readonly("university_choice", &StrategyProfile::university_choice)
      .def("sponsor_at", &StrategyProfile::sponsor_at, py::arg("theta"), py::arg("policy"))
      .def("student_at", &StrategyProfile::student_at, py::arg("tier"), py::arg("policy"),
           py::arg("sponsor"));

  py::class_<PbeResult>(m, "PbeResult")
      .def_readonly("strategy", &PbeResult::strategy)
      .def_readonly("beliefs", &PbeResult::beliefs)
      .def_readonly("converged", &PbeResult::converged)
      .def_readonly("iterations", &PbeResult::iterations);

  py::class_<WelfareWeights>(m, "WelfareWeights")
      .def(py::init<>())
      .def(py::init([](double lambda, double eta) {
             return WelfareWeights{lambda, eta};
           }),
           py::arg("lambda_"), py::arg("eta"))
      .def_readwrite("lambda_", &WelfareWeights::lambda)
      .def_readwrite("eta", &WelfareWeights::eta);

  py::class_<WelfareBreakdown>(m, "WelfareBreakdown")
      .def_readonly("university", &WelfareBreakdown::university)
      .def_readonly("students", &WelfareBreakdown::students)
      .def_readonly("sponsor", &WelfareBreakdown::sponsor)
      .def_readonly("welfare", &WelfareBreakdown::welfare);

  py::class_<SurfaceRow>(m, "SurfaceRow")
      .def_readonly("policy", &SurfaceRow::policy)
      .def_readonly("value", &SurfaceRow::value);
  py::class_<WelfareSurface>(m, "WelfareSurface")
      .def_readonly("rows", &WelfareSurface::rows);
  py::class_<OptimalPolicyResult>(m, "OptimalPolicyResult")
      .def_readonly("policy", &OptimalPolicyResult::policy)
      .def_readonly("value", &OptimalPolicyResult::value)
      .def_readonly("surface", &OptimalPolicyResult::surface);
  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("lambda_", &SweepRow::lambda)
      .def_readonly("eta", &SweepRow::eta)
      .def_readonly("policy", &SweepRow::policy)
      .def_readonly("value", &SweepRow::value);

  // Outcome and payoff arithmetic.
  m.def("expected_technical_quality", &expected_technical_quality, py::arg("student"),
        py::arg("sponsor"), py::arg("coefficients"));
  m.def("expected_documentation_quality", &expected_documentation_quality, py::arg("student"),
        py::arg("university"), py::arg("sponsor"), py::arg("coefficients"));
  m.def("expected_timeliness", &expected_timeliness, py::arg("student"), py::arg("sponsor"),
        py::arg("coefficients"));
  m.def("expected_alignment", &expected_alignment, py::arg("student"), py::arg("sponsor"),
        py::arg("coefficients"));
  m.def("expected_publishability", &expected_publishability, py::arg("university"),
        py::arg("sponsor_type"), py::arg("technical_quality"), py::arg("documentation_quality"),
        py::arg("coefficients"));
  m.def("outcomes", &outcomes, py::arg("profile"), py::arg("types"), py::arg("coefficients"));
  m.def("university_utility", &university_utility, py::arg("outcomes"), py::arg("policy"),
        py::arg("type"), py::arg("weights"));
  m.def("sponsor_utility", &sponsor_utility, py::arg("outcomes"), py::arg("action"),
        py::arg("weights"));
  m.def("student_utility", &student_utility, py::arg("outcomes"), py::arg("action"),
        py::arg("type"), py::arg("weights"));
  m.def("utilities", &utilities, py::arg("profile"), py::arg("types"), py::arg("coefficients"),
        py::arg("weights"));

  // Scenario handling.
  m.def("preset", [](const std::string& name) { return preset(parse_preset_name(name, "preset")); },
        py::arg("name"));
  m.def("load_scenario", &load_scenario, py::arg("text"));
  m.def("save_scenario", &save_scenario, py::arg("scenario"));
  m.def("classify_regime", &classify_regime, py::arg("profile"),
        py::arg("thresholds") = RegimeThresholds{});
  m.def("validate_config", [](const GameConfig& config) { validate(config); },
        py::arg("config"));

  // Solvers.
  m.def("student_best_response", &student_best_response, py::arg("type"), py::arg("policy"),
        py::arg("sponsor"), py::arg("config"), py::arg("grids"));
  m.def(
      "sponsor_best_response",
      [](const SponsorType& type, const UniversityAction& policy, const GameConfig& config,
         const TypePriors& priors, const ActionGrids& grids) {
        StudentRule rule = [&](const StudentType& st, const UniversityAction& u,
                               const SponsorAction& c) {
          return student_best_response(st, u, c, config, grids).action;
        };
        return sponsor_best_response(type, policy, rule, priors, config, grids);
      },
      py::arg("type"), py::arg("policy"), py::arg("config"), py::arg("priors"), py::arg("grids"));
  m.def(
      "university_best_policy",
      [](UniversityType type, const GameConfig& config, const TypePriors& priors,
         const ActionGrids& grids, int threads) {
        StudentRule student_rule = [&](const StudentType& st, const UniversityAction& u,
                                       const SponsorAction& c) {
          return student_best_response(st, u, c, config, grids).action;
        };
        SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
          return sponsor_best_response(ct, u, student_rule, priors, config, grids).action;
        };
        return university_best_policy(type, sponsor_rule, student_rule, priors, config, grids,
                                      threads);
      },
      py::arg("type"), py::arg("config"), py::arg("priors"), py::arg("grids"),
      py::arg("threads") = 1);
  m.def("backward_induction", &backward_induction, py::arg("config"), py::arg("types"),
        py::arg("grids"));
  m.def("verify_local_equilibrium", &verify_local_equilibrium, py::arg("profile"),
        py::arg("types"), py::arg("config"), py::arg("step"), py::arg("tolerance") = 1e-9);
  m.def("pbe_search", &pbe_search, py::arg("config"), py::arg("priors"), py::arg("grids"),
        py::arg("max_iter") = 10, py::arg("off_path") = OffPathRule::RevertToPrior,
        py::arg("threads") = 1);

  // Mechanism design.
  m.def("induced_responses", &induced_responses, py::arg("policy"), py::arg("config"),
        py::arg("priors"), py::arg("grids"));
  m.def(
      "optimal_policy",
      [](const GameConfig& config, const TypePriors& priors, const WelfareWeights& weights,
         const ActionGrids& grids, std::optional<UniversityType> university_type, int threads) {
        return optimal_policy(config, priors, weights, grids, university_type, threads);
      },
      py::arg("config"), py::arg("priors"), py::arg("weights"), py::arg("grids"),
      py::arg("university_type") = std::nullopt, py::arg("threads") = 1);
  m.def(
      "weight_sweep",
      [](const GameConfig& config, const TypePriors& priors, const std::vector<double>& lambdas,
         const std::vector<double>& etas, const ActionGrids& grids,
         std::optional<UniversityType> university_type, int threads) {
        return weight_sweep(config, priors, lambdas, etas, grids, university_type, threads);
      },
      py::arg("config"), py::arg("priors"), py::arg("lambdas"), py::arg("etas"), py::arg("grids"),
      py::arg("university_type") = std::nullopt, py::arg("threads") = 1);

  m.def("run_cli", &run_cli, py::arg("args"));
  m.def("action_key",
        [](const py::object& action) -> std::string {
          if (py::isinstance<UniversityAction>(action))
            return action_key(action.cast<UniversityAction>());
          if (py::isinstance<SponsorAction>(action))
            return action_key(action.cast<SponsorAction>());
          return action_key(action.cast<StudentAction>());
        },
        py::arg("action"));
}
