#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace capstone {

// Raised whenever a domain invariant or a scenario document is rejected.
// `field` is a dotted path ("weights.c_r", "actions.student.e") when known.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class UniversityType : std::uint8_t { Low = 0, High = 1 };
enum class IpPolicy : std::uint8_t { Permissive = 0, Restrictive = 1 };
enum class Posture : std::uint8_t { Supportive = 0, Exploitative = 1 };
enum class Orientation : std::uint8_t { Learning = 0, Deliverable = 1, Minimalist = 2 };
enum class StudentCostTier : std::uint8_t { LowCost = 0, HighCost = 1 };

std::string to_string(UniversityType t);
std::string to_string(IpPolicy i);
std::string to_string(Posture s);
std::string to_string(Orientation x);
std::string to_string(StudentCostTier t);

UniversityType parse_university_type(const std::string& s, const std::string& field);
IpPolicy parse_ip_policy(const std::string& s, const std::string& field);
Posture parse_posture(const std::string& s, const std::string& field);
Orientation parse_orientation(const std::string& s, const std::string& field);
StudentCostTier parse_cost_tier(const std::string& s, const std::string& field);

// Sponsor type theta_C: orientation towards academic goals, in [0,1].
struct SponsorType {
  double value = 0.5;
};

// Student type: cost tier label plus the marginal effort cost k > 0.
struct StudentType {
  StudentCostTier tier = StudentCostTier::LowCost;
  double effort_cost = 0.15;
};

// University policy (r, i, m).
struct UniversityAction {
  double rubric_strictness = 0.0;  // r in [0,1]
  IpPolicy ip_policy = IpPolicy::Permissive;
  int mentoring_requirement = 0;  // m in {0,1,2}
};

// Sponsor action (s, o, d).
struct SponsorAction {
  Posture posture = Posture::Supportive;
  int mentoring_intensity = 0;   // o in {0,1,2}
  double scope_strictness = 0.0; // d in [0, d_max]
};

// Student action (e, x).
struct StudentAction {
  double effort = 0.0;  // e in [0,1]
  Orientation orientation = Orientation::Learning;
};

struct TypeProfile {
  UniversityType university = UniversityType::High;
  SponsorType sponsor;
  StudentType student;
};

struct ActionProfile {
  UniversityAction university;
  SponsorAction sponsor;
  StudentAction student;
};

bool operator==(const UniversityAction& a, const UniversityAction& b);
bool operator==(const SponsorAction& a, const SponsorAction& b);
bool operator==(const StudentAction& a, const StudentAction& b);
bool operator==(const ActionProfile& a, const ActionProfile& b);

// Coefficients of the five affine outcome maps. All nonnegative, and the
// publishability coefficients must satisfy p0+p1+p2+p3+p4 <= 1.
struct OutcomeCoefficients {
  double q0 = 0, q1 = 0, q2 = 0, q3 = 0, q4 = 0, q5 = 0;
  double d0 = 0, d1 = 0, d2 = 0, d3 = 0, d4 = 0;
  double t0 = 0, t1 = 0, t2 = 0, t3 = 0;
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  double p0 = 0, p1 = 0, p2 = 0, p3 = 0, p4 = 0;
};

// Payoff weights and costs. The alpha triple is stored per university type,
// indexed by UniversityType (Low = 0, High = 1).
struct PayoffWeights {
  std::array<double, 2> alpha_q{0, 0};
  std::array<double, 2> alpha_d{0, 0};
  std::array<double, 2> alpha_p{0, 0};
  double c_r = 0, c_m = 0;
  double beta_a = 0, beta_t = 0, c_o = 0, c_d = 0;
  double gamma_q = 0, gamma_d = 0, gamma_t = 0;
};

// The five expected outcomes. `in_unit_range` records whether every value
// lies in [0,1]; values are never clamped.
struct OutcomeVector {
  double technical_quality = 0;     // Q
  double documentation_quality = 0; // D_doc
  double timeliness = 0;            // T
  double alignment = 0;             // A
  double publishability = 0;        // P
  bool in_unit_range = true;
};

struct UtilityVector {
  double university = 0;
  double sponsor = 0;
  double students = 0;
};

void validate(const SponsorType& t, const std::string& field);
void validate(const StudentType& t, const std::string& field);
void validate(const UniversityAction& a, const std::string& field);
void validate(const SponsorAction& a, double d_max, const std::string& field);
void validate(const StudentAction& a, const std::string& field);
void validate(const OutcomeCoefficients& c, const std::string& field);
void validate(const PayoffWeights& w, const std::string& field);

// Q = q0 + q1 e + q2 o - q3 [s exploitative] - q4 d + q5 [x learning] o
double expected_technical_quality(const StudentAction& student,
                                  const SponsorAction& sponsor,
                                  const OutcomeCoefficients& c);

// D_doc = d0 + d1 e + d2 [x learning] + d3 r + d4 o
double expected_documentation_quality(const StudentAction& student,
                                      const UniversityAction& university,
                                      const SponsorAction& sponsor,
                                      const OutcomeCoefficients& c);

// T = t0 + t1 e + t2 o - t3 d
double expected_timeliness(const StudentAction& student,
                           const SponsorAction& sponsor,
                           const OutcomeCoefficients& c);

// A = a0 + a1 [x deliverable] + a2 [s supportive] - a3 d
double expected_alignment(const StudentAction& student,
                          const SponsorAction& sponsor,
                          const OutcomeCoefficients& c);

// P = p0 + p1 [i permissive] + p2 theta_C + p3 Q + p4 D_doc
double expected_publishability(const UniversityAction& university,
                               const SponsorType& sponsor_type,
                               double technical_quality,
                               double documentation_quality,
                               const OutcomeCoefficients& c);

// All five outcomes; P consumes the freshly computed Q and D_doc.
OutcomeVector outcomes(const ActionProfile& profile, const TypeProfile& types,
                       const OutcomeCoefficients& c);

// U_U = alpha_Q(theta_U) Q + alpha_D(theta_U) D_doc + alpha_P(theta_U) P - c_r r - c_m m
double university_utility(const OutcomeVector& out, const UniversityAction& policy,
                          UniversityType type, const PayoffWeights& w);

// U_C = beta_A A + beta_T T - c_o o - c_d d^2
double sponsor_utility(const OutcomeVector& out, const SponsorAction& action,
                       const PayoffWeights& w);

// U_S = gamma_Q Q + gamma_D D_doc + gamma_T T - k(theta_S) e
double student_utility(const OutcomeVector& out, const StudentAction& action,
                       const StudentType& type, const PayoffWeights& w);

UtilityVector utilities(const ActionProfile& profile, const TypeProfile& types,
                        const OutcomeCoefficients& c, const PayoffWeights& w);

}  // namespace capstone
