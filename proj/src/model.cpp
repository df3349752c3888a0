#include "capstone/model.hpp"

#include <cmath>

namespace capstone {

namespace {

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ValidationError(field, message);
}

void require_finite(double v, const std::string& field) {
  require(std::isfinite(v), field, "must be a finite number");
}

void require_nonnegative(double v, const std::string& field) {
  require_finite(v, field);
  require(v >= 0.0, field, "must be nonnegative");
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::string to_string(UniversityType t) {
  return t == UniversityType::Low ? "low" : "high";
}
std::string to_string(IpPolicy i) {
  return i == IpPolicy::Permissive ? "permissive" : "restrictive";
}
std::string to_string(Posture s) {
  return s == Posture::Supportive ? "supportive" : "exploitative";
}
std::string to_string(Orientation x) {
  switch (x) {
    case Orientation::Learning: return "learning";
    case Orientation::Deliverable: return "deliverable";
    default: return "minimalist";
  }
}
std::string to_string(StudentCostTier t) {
  return t == StudentCostTier::LowCost ? "low" : "high";
}

UniversityType parse_university_type(const std::string& s, const std::string& field) {
  if (s == "low") return UniversityType::Low;
  if (s == "high") return UniversityType::High;
  throw ValidationError(field, "expected \"low\" or \"high\", got \"" + s + "\"");
}
IpPolicy parse_ip_policy(const std::string& s, const std::string& field) {
  if (s == "permissive") return IpPolicy::Permissive;
  if (s == "restrictive") return IpPolicy::Restrictive;
  throw ValidationError(field, "expected \"permissive\" or \"restrictive\", got \"" + s + "\"");
}
Posture parse_posture(const std::string& s, const std::string& field) {
  if (s == "supportive") return Posture::Supportive;
  if (s == "exploitative") return Posture::Exploitative;
  throw ValidationError(field, "expected \"supportive\" or \"exploitative\", got \"" + s + "\"");
}
Orientation parse_orientation(const std::string& s, const std::string& field) {
  if (s == "learning") return Orientation::Learning;
  if (s == "deliverable") return Orientation::Deliverable;
  if (s == "minimalist") return Orientation::Minimalist;
  throw ValidationError(field, "expected \"learning\", \"deliverable\" or \"minimalist\", got \"" + s + "\"");
}
StudentCostTier parse_cost_tier(const std::string& s, const std::string& field) {
  if (s == "low") return StudentCostTier::LowCost;
  if (s == "high") return StudentCostTier::HighCost;
  throw ValidationError(field, "expected \"low\" or \"high\", got \"" + s + "\"");
}

bool operator==(const UniversityAction& a, const UniversityAction& b) {
  return a.rubric_strictness == b.rubric_strictness && a.ip_policy == b.ip_policy &&
         a.mentoring_requirement == b.mentoring_requirement;
}
bool operator==(const SponsorAction& a, const SponsorAction& b) {
  return a.posture == b.posture && a.mentoring_intensity == b.mentoring_intensity &&
         a.scope_strictness == b.scope_strictness;
}
bool operator==(const StudentAction& a, const StudentAction& b) {
  return a.effort == b.effort && a.orientation == b.orientation;
}
bool operator==(const ActionProfile& a, const ActionProfile& b) {
  return a.university == b.university && a.sponsor == b.sponsor && a.student == b.student;
}

void validate(const SponsorType& t, const std::string& field) {
  require_finite(t.value, field);
  require(in_unit(t.value), field, "sponsor type theta_C must lie in [0,1]");
}

void validate(const StudentType& t, const std::string& field) {
  require_finite(t.effort_cost, field);
  require(t.effort_cost > 0.0, field, "cost of effort must be greater than zero");
}

void validate(const UniversityAction& a, const std::string& field) {
  require_finite(a.rubric_strictness, field + ".r");
  require(in_unit(a.rubric_strictness), field + ".r", "rubric strictness must lie in [0,1]");
  require(a.mentoring_requirement >= 0 && a.mentoring_requirement <= 2, field + ".m",
          "mentoring requirement must be 0, 1 or 2");
}

void validate(const SponsorAction& a, double d_max, const std::string& field) {
  require(a.mentoring_intensity >= 0 && a.mentoring_intensity <= 2, field + ".o",
          "mentoring intensity must be 0, 1 or 2");
  require_finite(a.scope_strictness, field + ".d");
  require(a.scope_strictness >= 0.0 && a.scope_strictness <= d_max, field + ".d",
          "scope strictness must lie in [0, d_max]");
}

void validate(const StudentAction& a, const std::string& field) {
  require_finite(a.effort, field + ".e");
  require(in_unit(a.effort), field + ".e", "effort must lie in [0,1]");
}

void validate(const OutcomeCoefficients& c, const std::string& field) {
  const std::pair<const char*, double> entries[] = {
      {"q0", c.q0}, {"q1", c.q1}, {"q2", c.q2}, {"q3", c.q3}, {"q4", c.q4}, {"q5", c.q5},
      {"d0", c.d0}, {"d1", c.d1}, {"d2", c.d2}, {"d3", c.d3}, {"d4", c.d4},
      {"t0", c.t0}, {"t1", c.t1}, {"t2", c.t2}, {"t3", c.t3},
      {"a0", c.a0}, {"a1", c.a1}, {"a2", c.a2}, {"a3", c.a3},
      {"p0", c.p0}, {"p1", c.p1}, {"p2", c.p2}, {"p3", c.p3}, {"p4", c.p4}};
  for (const auto& [name, value] : entries) {
    require_nonnegative(value, field + "." + name);
  }
  const double p_sum = c.p0 + c.p1 + c.p2 + c.p3 + c.p4;
  require(p_sum <= 1.0 + 1e-12, field + ".p0..p4",
          "publishability normalization violated (p0+p1+p2+p3+p4 must be <= 1)");
}

void validate(const PayoffWeights& w, const std::string& field) {
  for (int t = 0; t < 2; ++t) {
    const std::string suffix = t == 0 ? ".low" : ".high";
    require_nonnegative(w.alpha_q[t], field + ".alpha_q" + suffix);
    require_nonnegative(w.alpha_d[t], field + ".alpha_d" + suffix);
    require_nonnegative(w.alpha_p[t], field + ".alpha_p" + suffix);
  }
  require_nonnegative(w.c_r, field + ".c_r");
  require_nonnegative(w.c_m, field + ".c_m");
  require_nonnegative(w.beta_a, field + ".beta_a");
  require_nonnegative(w.beta_t, field + ".beta_t");
  require_nonnegative(w.c_o, field + ".c_o");
  require_nonnegative(w.c_d, field + ".c_d");
  require_nonnegative(w.gamma_q, field + ".gamma_q");
  require_nonnegative(w.gamma_d, field + ".gamma_d");
  require_nonnegative(w.gamma_t, field + ".gamma_t");
}

double expected_technical_quality(const StudentAction& student,
                                  const SponsorAction& sponsor,
                                  const OutcomeCoefficients& c) {
  const double o = static_cast<double>(sponsor.mentoring_intensity);
  const double exploit = sponsor.posture == Posture::Exploitative ? 1.0 : 0.0;
  const double learn = student.orientation == Orientation::Learning ? 1.0 : 0.0;
  return c.q0 + c.q1 * student.effort + c.q2 * o - c.q3 * exploit -
         c.q4 * sponsor.scope_strictness + c.q5 * learn * o;
}

double expected_documentation_quality(const StudentAction& student,
                                      const UniversityAction& university,
                                      const SponsorAction& sponsor,
                                      const OutcomeCoefficients& c) {
  const double learn = student.orientation == Orientation::Learning ? 1.0 : 0.0;
  return c.d0 + c.d1 * student.effort + c.d2 * learn +
         c.d3 * university.rubric_strictness +
         c.d4 * static_cast<double>(sponsor.mentoring_intensity);
}

double expected_timeliness(const StudentAction& student,
                           const SponsorAction& sponsor,
                           const OutcomeCoefficients& c) {
  return c.t0 + c.t1 * student.effort +
         c.t2 * static_cast<double>(sponsor.mentoring_intensity) -
         c.t3 * sponsor.scope_strictness;
}

double expected_alignment(const StudentAction& student,
                          const SponsorAction& sponsor,
                          const OutcomeCoefficients& c) {
  const double deliverable = student.orientation == Orientation::Deliverable ? 1.0 : 0.0;
  const double supportive = sponsor.posture == Posture::Supportive ? 1.0 : 0.0;
  return c.a0 + c.a1 * deliverable + c.a2 * supportive - c.a3 * sponsor.scope_strictness;
}

double expected_publishability(const UniversityAction& university,
                               const SponsorType& sponsor_type,
                               double technical_quality,
                               double documentation_quality,
                               const OutcomeCoefficients& c) {
  const double permissive = university.ip_policy == IpPolicy::Permissive ? 1.0 : 0.0;
  return c.p0 + c.p1 * permissive + c.p2 * sponsor_type.value +
         c.p3 * technical_quality + c.p4 * documentation_quality;
}

OutcomeVector outcomes(const ActionProfile& profile, const TypeProfile& types,
                       const OutcomeCoefficients& c) {
  OutcomeVector out;
  out.technical_quality = expected_technical_quality(profile.student, profile.sponsor, c);
  out.documentation_quality =
      expected_documentation_quality(profile.student, profile.university, profile.sponsor, c);
  out.timeliness = expected_timeliness(profile.student, profile.sponsor, c);
  out.alignment = expected_alignment(profile.student, profile.sponsor, c);
  out.publishability = expected_publishability(
      profile.university, types.sponsor, out.technical_quality, out.documentation_quality, c);
  out.in_unit_range = in_unit(out.technical_quality) && in_unit(out.documentation_quality) &&
                      in_unit(out.timeliness) && in_unit(out.alignment) &&
                      in_unit(out.publishability);
  return out;
}

double university_utility(const OutcomeVector& out, const UniversityAction& policy,
                          UniversityType type, const PayoffWeights& w) {
  const auto t = static_cast<std::size_t>(type);
  return w.alpha_q[t] * out.technical_quality + w.alpha_d[t] * out.documentation_quality +
         w.alpha_p[t] * out.publishability - w.c_r * policy.rubric_strictness -
         w.c_m * static_cast<double>(policy.mentoring_requirement);
}

double sponsor_utility(const OutcomeVector& out, const SponsorAction& action,
                       const PayoffWeights& w) {
  const double d = action.scope_strictness;
  return w.beta_a * out.alignment + w.beta_t * out.timeliness -
         w.c_o * static_cast<double>(action.mentoring_intensity) - w.c_d * d * d;
}

double student_utility(const OutcomeVector& out, const StudentAction& action,
                       const StudentType& type, const PayoffWeights& w) {
  return w.gamma_q * out.technical_quality + w.gamma_d * out.documentation_quality +
         w.gamma_t * out.timeliness - type.effort_cost * action.effort;
}

UtilityVector utilities(const ActionProfile& profile, const TypeProfile& types,
                        const OutcomeCoefficients& c, const PayoffWeights& w) {
  const OutcomeVector out = outcomes(profile, types, c);
  UtilityVector u;
  u.university = university_utility(out, profile.university, types.university, w);
  u.sponsor = sponsor_utility(out, profile.sponsor, w);
  u.students = student_utility(out, profile.student, types.student, w);
  return u;
}

}  // namespace capstone
