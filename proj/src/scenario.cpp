#include "capstone/scenario.hpp"

#include <cmath>
#include <initializer_list>

#include <json.hpp>

namespace capstone {

namespace {

using json = nlohmann::ordered_json;

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& expect_object(const json& j, const std::string& path) {
  if (!j.is_object())
    throw ValidationError(path.empty() ? "document" : path, "expected a JSON object");
  return j;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ValidationError(join_path(path, it.key()), "unknown key");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require_key(const json& obj, const std::string& path, const char* key) {
  const json* j = find(obj, key);
  if (!j) throw ValidationError(join_path(path, key), "missing required key");
  return *j;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

int as_integer(const json& j, const std::string& path) {
  const double v = as_number(j, path);
  if (v != std::floor(v)) throw ValidationError(path, "expected an integer");
  return static_cast<int>(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

double number_field(const json& obj, const std::string& path, const char* key) {
  return as_number(require_key(obj, path, key), join_path(path, key));
}

// Alpha weights accept either a plain number (applied to both university
// types) or an object {"low": x, "high": y}.
std::array<double, 2> alpha_field(const json& obj, const std::string& path, const char* key) {
  const json& j = require_key(obj, path, key);
  const std::string field = join_path(path, key);
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v};
  }
  expect_object(j, field);
  check_keys(j, field, {"low", "high"});
  return {number_field(j, field, "low"), number_field(j, field, "high")};
}

std::array<double, 2> probability_pair(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"low", "high"});
  return {number_field(j, path, "low"), number_field(j, path, "high")};
}

OutcomeCoefficients parse_coefficients(const json& j) {
  const std::string path = "coefficients";
  expect_object(j, path);
  check_keys(j, path, {"q0", "q1", "q2", "q3", "q4", "q5", "d0", "d1", "d2", "d3", "d4",
                       "t0", "t1", "t2", "t3", "a0", "a1", "a2", "a3",
                       "p0", "p1", "p2", "p3", "p4"});
  OutcomeCoefficients c;
  c.q0 = number_field(j, path, "q0");
  c.q1 = number_field(j, path, "q1");
  c.q2 = number_field(j, path, "q2");
  c.q3 = number_field(j, path, "q3");
  c.q4 = number_field(j, path, "q4");
  c.q5 = number_field(j, path, "q5");
  c.d0 = number_field(j, path, "d0");
  c.d1 = number_field(j, path, "d1");
  c.d2 = number_field(j, path, "d2");
  c.d3 = number_field(j, path, "d3");
  c.d4 = number_field(j, path, "d4");
  c.t0 = number_field(j, path, "t0");
  c.t1 = number_field(j, path, "t1");
  c.t2 = number_field(j, path, "t2");
  c.t3 = number_field(j, path, "t3");
  c.a0 = number_field(j, path, "a0");
  c.a1 = number_field(j, path, "a1");
  c.a2 = number_field(j, path, "a2");
  c.a3 = number_field(j, path, "a3");
  c.p0 = number_field(j, path, "p0");
  c.p1 = number_field(j, path, "p1");
  c.p2 = number_field(j, path, "p2");
  c.p3 = number_field(j, path, "p3");
  c.p4 = number_field(j, path, "p4");
  return c;
}

PayoffWeights parse_weights(const json& j) {
  const std::string path = "weights";
  expect_object(j, path);
  check_keys(j, path, {"alpha_q", "alpha_d", "alpha_p", "c_r", "c_m", "beta_a", "beta_t",
                       "c_o", "c_d", "gamma_q", "gamma_d", "gamma_t"});
  PayoffWeights w;
  w.alpha_q = alpha_field(j, path, "alpha_q");
  w.alpha_d = alpha_field(j, path, "alpha_d");
  w.alpha_p = alpha_field(j, path, "alpha_p");
  w.c_r = number_field(j, path, "c_r");
  w.c_m = number_field(j, path, "c_m");
  w.beta_a = number_field(j, path, "beta_a");
  w.beta_t = number_field(j, path, "beta_t");
  w.c_o = number_field(j, path, "c_o");
  w.c_d = number_field(j, path, "c_d");
  w.gamma_q = number_field(j, path, "gamma_q");
  w.gamma_d = number_field(j, path, "gamma_d");
  w.gamma_t = number_field(j, path, "gamma_t");
  return w;
}

TypePriors parse_priors(const json& j) {
  const std::string path = "priors";
  expect_object(j, path);
  check_keys(j, path, {"p_u", "f_c", "p_s"});
  TypePriors priors = TypePriors::uniform();
  if (const json* p = find(j, "p_u")) priors.university = probability_pair(*p, path + ".p_u");
  if (const json* p = find(j, "p_s")) priors.student = probability_pair(*p, path + ".p_s");
  if (const json* f = find(j, "f_c")) {
    const std::string fpath = path + ".f_c";
    expect_object(*f, fpath);
    check_keys(*f, fpath, {"n_points", "grid", "weights"});
    if (const json* n = find(*f, "n_points")) {
      if (find(*f, "grid") || find(*f, "weights"))
        throw ValidationError(fpath, "n_points cannot be combined with grid/weights");
      const TypePriors uniform = TypePriors::uniform(as_integer(*n, fpath + ".n_points"));
      priors.sponsor_grid = uniform.sponsor_grid;
      priors.sponsor_weights = uniform.sponsor_weights;
    } else {
      const json& grid = require_key(*f, fpath, "grid");
      const json& weights = require_key(*f, fpath, "weights");
      if (!grid.is_array()) throw ValidationError(fpath + ".grid", "expected an array");
      if (!weights.is_array()) throw ValidationError(fpath + ".weights", "expected an array");
      priors.sponsor_grid.clear();
      priors.sponsor_weights.clear();
      for (std::size_t i = 0; i < grid.size(); ++i)
        priors.sponsor_grid.push_back(
            as_number(grid[i], fpath + ".grid[" + std::to_string(i) + "]"));
      for (std::size_t i = 0; i < weights.size(); ++i)
        priors.sponsor_weights.push_back(
            as_number(weights[i], fpath + ".weights[" + std::to_string(i) + "]"));
    }
  }
  return priors;
}

ActionGrids parse_grids(const json& j, double d_max) {
  const std::string path = "grids";
  expect_object(j, path);
  check_keys(j, path, {"e_step", "d_step", "r_step", "e_points", "d_points", "r_points"});
  double e_step = 0.05, d_step = 0.05, r_step = 0.05;
  if (const json* v = find(j, "e_step")) e_step = as_number(*v, path + ".e_step");
  if (const json* v = find(j, "d_step")) d_step = as_number(*v, path + ".d_step");
  if (const json* v = find(j, "r_step")) r_step = as_number(*v, path + ".r_step");

  ActionGrids grids;
  grids.effort_step = e_step;
  grids.scope_step = d_step;
  grids.rubric_step = r_step;
  auto custom_axis = [&](const char* key, std::vector<double>& axis, double& step) {
    const json* v = find(j, key);
    if (!v) return false;
    if (!v->is_array() || v->empty())
      throw ValidationError(path + "." + key, "expected a nonempty array");
    axis.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      axis.push_back(as_number((*v)[i], path + "." + key + "[" + std::to_string(i) + "]"));
    step = 0.0;
    return true;
  };
  if (!custom_axis("e_points", grids.effort, grids.effort_step))
    grids.effort = regular_axis(e_step, 1.0, path + ".e_step");
  if (!custom_axis("d_points", grids.scope, grids.scope_step))
    grids.scope = regular_axis(d_step, d_max, path + ".d_step");
  if (!custom_axis("r_points", grids.rubric, grids.rubric_step))
    grids.rubric = regular_axis(r_step, 1.0, path + ".r_step");
  return grids;
}

UniversityAction parse_university_action(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"r", "i", "m"});
  UniversityAction a;
  a.rubric_strictness = number_field(j, path, "r");
  a.ip_policy = parse_ip_policy(as_string(require_key(j, path, "i"), path + ".i"), path + ".i");
  a.mentoring_requirement = as_integer(require_key(j, path, "m"), path + ".m");
  return a;
}

SponsorAction parse_sponsor_action(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"s", "o", "d"});
  SponsorAction a;
  a.posture = parse_posture(as_string(require_key(j, path, "s"), path + ".s"), path + ".s");
  a.mentoring_intensity = as_integer(require_key(j, path, "o"), path + ".o");
  a.scope_strictness = number_field(j, path, "d");
  return a;
}

StudentAction parse_student_action(const json& j, const std::string& path) {
  expect_object(j, path);
  check_keys(j, path, {"e", "x"});
  StudentAction a;
  a.effort = number_field(j, path, "e");
  a.orientation = parse_orientation(as_string(require_key(j, path, "x"), path + ".x"), path + ".x");
  return a;
}

ActionProfile parse_actions(const json& j, double d_max) {
  const std::string path = "actions";
  expect_object(j, path);
  check_keys(j, path, {"university", "sponsor", "student"});
  ActionProfile profile;
  profile.university = parse_university_action(require_key(j, path, "university"), path + ".university");
  profile.sponsor = parse_sponsor_action(require_key(j, path, "sponsor"), path + ".sponsor");
  profile.student = parse_student_action(require_key(j, path, "student"), path + ".student");
  validate(profile.university, path + ".university");
  validate(profile.sponsor, d_max, path + ".sponsor");
  validate(profile.student, path + ".student");
  return profile;
}

TypeProfile parse_types(const json& j, const GameConfig& config) {
  const std::string path = "types";
  expect_object(j, path);
  check_keys(j, path, {"university", "sponsor", "student"});
  TypeProfile types;
  types.university = parse_university_type(
      as_string(require_key(j, path, "university"), path + ".university"), path + ".university");
  types.sponsor.value = as_number(require_key(j, path, "sponsor"), path + ".sponsor");
  const StudentCostTier tier = parse_cost_tier(
      as_string(require_key(j, path, "student"), path + ".student"), path + ".student");
  types.student = config.student_type(tier);
  validate(types.sponsor, path + ".sponsor");
  return types;
}

std::vector<double> parse_row(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  std::vector<double> row;
  row.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    row.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return row;
}

ScenarioLikelihoods parse_likelihoods(const json& j, const GameConfig& config) {
  const std::string path = "likelihoods";
  expect_object(j, path);
  check_keys(j, path, {"university", "sponsor"});
  ScenarioLikelihoods result;
  if (const json* u = find(j, "university")) {
    const std::string upath = path + ".university";
    expect_object(*u, upath);
    check_keys(*u, upath, {"actions", "rows"});
    LikelihoodTable table;
    const json& actions = require_key(*u, upath, "actions");
    if (!actions.is_array()) throw ValidationError(upath + ".actions", "expected an array");
    for (std::size_t i = 0; i < actions.size(); ++i) {
      const std::string apath = upath + ".actions[" + std::to_string(i) + "]";
      UniversityAction a = parse_university_action(actions[i], apath);
      validate(a, apath);
      table.action_keys.push_back(action_key(a));
    }
    const json& rows = require_key(*u, upath, "rows");
    expect_object(rows, upath + ".rows");
    check_keys(rows, upath + ".rows", {"low", "high"});
    table.rows.push_back(parse_row(require_key(rows, upath + ".rows", "low"), upath + ".rows.low"));
    table.rows.push_back(parse_row(require_key(rows, upath + ".rows", "high"), upath + ".rows.high"));
    validate(table, 2, upath);
    result.university = std::move(table);
  }
  if (const json* s = find(j, "sponsor")) {
    const std::string spath = path + ".sponsor";
    if (!s->is_array()) throw ValidationError(spath, "expected an array");
    SponsorLikelihood lik;
    for (std::size_t p = 0; p < s->size(); ++p) {
      const std::string ppath = spath + "[" + std::to_string(p) + "]";
      expect_object((*s)[p], ppath);
      check_keys((*s)[p], ppath, {"policy", "actions", "rows"});
      UniversityAction policy =
          parse_university_action(require_key((*s)[p], ppath, "policy"), ppath + ".policy");
      validate(policy, ppath + ".policy");
      LikelihoodTable table;
      const json& actions = require_key((*s)[p], ppath, "actions");
      if (!actions.is_array()) throw ValidationError(ppath + ".actions", "expected an array");
      for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::string apath = ppath + ".actions[" + std::to_string(i) + "]";
        SponsorAction a = parse_sponsor_action(actions[i], apath);
        validate(a, config.d_max, apath);
        table.action_keys.push_back(action_key(a));
      }
      const json& rows = require_key((*s)[p], ppath, "rows");
      if (!rows.is_array()) throw ValidationError(ppath + ".rows", "expected an array");
      for (std::size_t t = 0; t < rows.size(); ++t)
        table.rows.push_back(parse_row(rows[t], ppath + ".rows[" + std::to_string(t) + "]"));
      validate(table, config.priors.sponsor_grid.size(), ppath);
      lik.policy_keys.push_back(action_key(policy));
      lik.tables.push_back(std::move(table));
    }
    result.sponsor = std::move(lik);
  }
  return result;
}

json dump_university_action(const UniversityAction& a) {
  json j;
  j["r"] = a.rubric_strictness;
  j["i"] = to_string(a.ip_policy);
  j["m"] = a.mentoring_requirement;
  return j;
}

json dump_sponsor_action(const SponsorAction& a) {
  json j;
  j["s"] = to_string(a.posture);
  j["o"] = a.mentoring_intensity;
  j["d"] = a.scope_strictness;
  return j;
}

json dump_student_action(const StudentAction& a) {
  json j;
  j["e"] = a.effort;
  j["x"] = to_string(a.orientation);
  return j;
}

}  // namespace

void validate(const GameConfig& config) {
  validate(config.coefficients, "coefficients");
  validate(config.weights, "weights");
  if (!(config.student_costs[0] > 0.0))
    throw ValidationError("costs.low", "cost of effort must be greater than zero");
  if (!(config.student_costs[1] > 0.0))
    throw ValidationError("costs.high", "cost of effort must be greater than zero");
  if (!(config.student_costs[0] < config.student_costs[1]))
    throw ValidationError("costs", "low-cost tier must cost strictly less than high-cost tier");
  if (!(config.d_max > 0.0) || !std::isfinite(config.d_max))
    throw ValidationError("d_max", "scope bound must be a positive finite number");
  validate(config.priors, "priors");
  validate(config.grids, config.d_max, "grids");
  if (!(config.regime.cooperative_min_effort >= 0.0 && config.regime.cooperative_min_effort <= 1.0))
    throw ValidationError("regime.cooperative_min_effort", "threshold must lie in [0,1]");
}

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON document: ") + e.what());
  }
  expect_object(doc, "");
  check_keys(doc, "", {"schema_version", "metadata", "coefficients", "weights", "costs",
                       "priors", "grids", "d_max", "regime", "actions", "types", "likelihoods"});
  const int version = as_integer(require_key(doc, "", "schema_version"), "schema_version");
  if (version != 1)
    throw ValidationError("schema_version", "unsupported schema version " + std::to_string(version));

  Scenario scenario;
  GameConfig& config = scenario.config;

  if (const json* meta = find(doc, "metadata")) {
    expect_object(*meta, "metadata");
    check_keys(*meta, "metadata", {"name", "description"});
    if (const json* name = find(*meta, "name")) config.name = as_string(*name, "metadata.name");
    if (const json* d = find(*meta, "description"))
      config.description = as_string(*d, "metadata.description");
  }

  config.coefficients = parse_coefficients(require_key(doc, "", "coefficients"));
  config.weights = parse_weights(require_key(doc, "", "weights"));

  const json& costs = require_key(doc, "", "costs");
  expect_object(costs, "costs");
  check_keys(costs, "costs", {"low", "high"});
  config.student_costs[0] = number_field(costs, "costs", "low");
  config.student_costs[1] = number_field(costs, "costs", "high");

  if (const json* d = find(doc, "d_max")) config.d_max = as_number(*d, "d_max");
  if (const json* p = find(doc, "priors")) config.priors = parse_priors(*p);
  if (const json* g = find(doc, "grids")) {
    config.grids = parse_grids(*g, config.d_max);
  } else {
    config.grids = ActionGrids::regular(0.05, 0.05, 0.05, config.d_max);
  }
  if (const json* r = find(doc, "regime")) {
    expect_object(*r, "regime");
    check_keys(*r, "regime", {"cooperative_min_effort"});
    if (const json* v = find(*r, "cooperative_min_effort"))
      config.regime.cooperative_min_effort = as_number(*v, "regime.cooperative_min_effort");
  }

  validate(config);

  if (const json* a = find(doc, "actions")) scenario.actions = parse_actions(*a, config.d_max);
  if (const json* t = find(doc, "types")) scenario.types = parse_types(*t, config);
  if (const json* l = find(doc, "likelihoods"))
    scenario.likelihoods = parse_likelihoods(*l, config);
  return scenario;
}

std::string save_scenario(const Scenario& scenario) {
  const GameConfig& config = scenario.config;
  json doc;
  doc["schema_version"] = 1;
  if (!config.name.empty() || !config.description.empty()) {
    json meta;
    if (!config.name.empty()) meta["name"] = config.name;
    if (!config.description.empty()) meta["description"] = config.description;
    doc["metadata"] = std::move(meta);
  }

  const OutcomeCoefficients& c = config.coefficients;
  json coeffs;
  coeffs["q0"] = c.q0; coeffs["q1"] = c.q1; coeffs["q2"] = c.q2;
  coeffs["q3"] = c.q3; coeffs["q4"] = c.q4; coeffs["q5"] = c.q5;
  coeffs["d0"] = c.d0; coeffs["d1"] = c.d1; coeffs["d2"] = c.d2;
  coeffs["d3"] = c.d3; coeffs["d4"] = c.d4;
  coeffs["t0"] = c.t0; coeffs["t1"] = c.t1; coeffs["t2"] = c.t2; coeffs["t3"] = c.t3;
  coeffs["a0"] = c.a0; coeffs["a1"] = c.a1; coeffs["a2"] = c.a2; coeffs["a3"] = c.a3;
  coeffs["p0"] = c.p0; coeffs["p1"] = c.p1; coeffs["p2"] = c.p2;
  coeffs["p3"] = c.p3; coeffs["p4"] = c.p4;
  doc["coefficients"] = std::move(coeffs);

  const PayoffWeights& w = config.weights;
  auto alpha = [](const std::array<double, 2>& a) {
    json j;
    j["low"] = a[0];
    j["high"] = a[1];
    return j;
  };
  json weights;
  weights["alpha_q"] = alpha(w.alpha_q);
  weights["alpha_d"] = alpha(w.alpha_d);
  weights["alpha_p"] = alpha(w.alpha_p);
  weights["c_r"] = w.c_r;
  weights["c_m"] = w.c_m;
  weights["beta_a"] = w.beta_a;
  weights["beta_t"] = w.beta_t;
  weights["c_o"] = w.c_o;
  weights["c_d"] = w.c_d;
  weights["gamma_q"] = w.gamma_q;
  weights["gamma_d"] = w.gamma_d;
  weights["gamma_t"] = w.gamma_t;
  doc["weights"] = std::move(weights);

  json costs;
  costs["low"] = config.student_costs[0];
  costs["high"] = config.student_costs[1];
  doc["costs"] = std::move(costs);

  json priors;
  json p_u;
  p_u["low"] = config.priors.university[0];
  p_u["high"] = config.priors.university[1];
  priors["p_u"] = std::move(p_u);
  json f_c;
  f_c["grid"] = config.priors.sponsor_grid;
  f_c["weights"] = config.priors.sponsor_weights;
  priors["f_c"] = std::move(f_c);
  json p_s;
  p_s["low"] = config.priors.student[0];
  p_s["high"] = config.priors.student[1];
  priors["p_s"] = std::move(p_s);
  doc["priors"] = std::move(priors);

  json grids;
  if (config.grids.effort_step > 0.0) grids["e_step"] = config.grids.effort_step;
  else grids["e_points"] = config.grids.effort;
  if (config.grids.scope_step > 0.0) grids["d_step"] = config.grids.scope_step;
  else grids["d_points"] = config.grids.scope;
  if (config.grids.rubric_step > 0.0) grids["r_step"] = config.grids.rubric_step;
  else grids["r_points"] = config.grids.rubric;
  doc["grids"] = std::move(grids);

  doc["d_max"] = config.d_max;
  json regime;
  regime["cooperative_min_effort"] = config.regime.cooperative_min_effort;
  doc["regime"] = std::move(regime);

  if (scenario.actions) {
    json actions;
    actions["university"] = dump_university_action(scenario.actions->university);
    actions["sponsor"] = dump_sponsor_action(scenario.actions->sponsor);
    actions["student"] = dump_student_action(scenario.actions->student);
    doc["actions"] = std::move(actions);
  }
  if (scenario.types) {
    json types;
    types["university"] = to_string(scenario.types->university);
    types["sponsor"] = scenario.types->sponsor.value;
    types["student"] = to_string(scenario.types->student.tier);
    doc["types"] = std::move(types);
  }
  return doc.dump(2) + "\n";
}

PresetName parse_preset_name(const std::string& s, const std::string& field) {
  if (s == "case1") return PresetName::Case1;
  if (s == "case2") return PresetName::Case2;
  if (s == "case3") return PresetName::Case3;
  throw ValidationError(field, "expected \"case1\", \"case2\" or \"case3\", got \"" + s + "\"");
}

std::string to_string(PresetName name) {
  switch (name) {
    case PresetName::Case1: return "case1";
    case PresetName::Case2: return "case2";
    default: return "case3";
  }
}

Scenario preset(PresetName name) {
  Scenario scenario;
  GameConfig& config = scenario.config;

  OutcomeCoefficients& c = config.coefficients;
  c.q0 = 0.50; c.q1 = 0.30; c.q2 = 0.10; c.q3 = 0.08; c.q4 = 0.04; c.q5 = 0.02;
  c.d0 = 0.40; c.d1 = 0.25; c.d2 = 0.20; c.d3 = 0.05; c.d4 = 0.03;
  c.t0 = 0.50; c.t1 = 0.20; c.t2 = 0.15; c.t3 = 0.05;
  c.a0 = 0.50; c.a1 = 0.30; c.a2 = 0.10; c.a3 = 0.10;
  c.p0 = 0.10; c.p1 = 0.25; c.p2 = 0.25; c.p3 = 0.15; c.p4 = 0.10;

  PayoffWeights& w = config.weights;
  w.alpha_q = {0.40, 0.40};
  w.alpha_d = {0.30, 0.30};
  w.alpha_p = {0.30, 0.30};
  w.c_r = 0.10;
  w.c_m = 0.10;
  w.beta_a = 0.50;
  w.beta_t = 0.40;
  w.c_o = 0.10;
  w.c_d = 0.05;
  w.gamma_q = 0.40;
  w.gamma_d = 0.30;
  w.gamma_t = 0.30;

  config.student_costs = {0.15, 0.25};
  config.priors = TypePriors::uniform();
  config.grids = ActionGrids::regular();
  config.d_max = 1.0;

  ActionProfile actions;
  TypeProfile types;
  types.university = UniversityType::High;
  types.student = config.student_type(StudentCostTier::LowCost);

  switch (name) {
    case PresetName::Case1:
      config.name = "case1";
      config.description = "Collaborative partnership: supportive sponsor, balanced policy";
      actions.university = {0.60, IpPolicy::Permissive, 1};
      actions.sponsor = {Posture::Supportive, 1, 0.30};
      actions.student = {0.85, Orientation::Learning};
      types.sponsor.value = 0.80;
      break;
    case PresetName::Case2:
      config.name = "case2";
      config.description = "Sponsor-dominated project: exploitative posture, no mentoring";
      actions.university = {0.60, IpPolicy::Permissive, 1};
      actions.sponsor = {Posture::Exploitative, 0, 0.80};
      actions.student = {0.40, Orientation::Deliverable};
      types.sponsor.value = 0.20;
      break;
    case PresetName::Case3:
      config.name = "case3";
      config.description = "Assessment-dominated project: strict rubric, minimalist students";
      actions.university = {0.90, IpPolicy::Permissive, 1};
      actions.sponsor = {Posture::Supportive, 1, 0.60};
      actions.student = {0.60, Orientation::Minimalist};
      types.sponsor.value = 0.60;
      break;
  }

  scenario.actions = actions;
  scenario.types = types;
  return scenario;
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Cooperative: return "Cooperative";
    case Regime::ExploitativeSponsor: return "ExploitativeSponsor";
    case Regime::GradeGaming: return "GradeGaming";
    default: return "Other";
  }
}

RegimeLabel classify_regime(const ActionProfile& profile, const RegimeThresholds& thresholds) {
  if (profile.student.orientation == Orientation::Minimalist) {
    return {Regime::GradeGaming, {"minimalist-orientation"}};
  }
  if (profile.sponsor.posture == Posture::Exploitative &&
      profile.sponsor.mentoring_intensity == 0) {
    return {Regime::ExploitativeSponsor, {"exploitative-posture-without-mentoring"}};
  }
  if (profile.sponsor.posture == Posture::Supportive &&
      profile.sponsor.mentoring_intensity >= 1 &&
      profile.student.orientation == Orientation::Learning &&
      profile.student.effort >= thresholds.cooperative_min_effort) {
    return {Regime::Cooperative, {"supportive-mentored-learning-high-effort"}};
  }
  return {Regime::Other, {}};
}

}  // namespace capstone
