#pragma once

#include <cmath>
#include <random>

#include <doctest.h>

#include "capstone/scenario.hpp"

#define CHECK_CLOSE(a, b, tol)                      \
  do {                                              \
    const double lhs_ = (a);                        \
    const double rhs_ = (b);                        \
    INFO("lhs=", lhs_, " rhs=", rhs_);              \
    CHECK(std::abs(lhs_ - rhs_) <= (tol));          \
  } while (0)

namespace testing {

// Table-1 values, written out independently of the preset factory.
inline capstone::OutcomeCoefficients table1_coefficients() {
  capstone::OutcomeCoefficients c;
  c.q0 = 0.50; c.q1 = 0.30; c.q2 = 0.10; c.q3 = 0.08; c.q4 = 0.04; c.q5 = 0.02;
  c.d0 = 0.40; c.d1 = 0.25; c.d2 = 0.20; c.d3 = 0.05; c.d4 = 0.03;
  c.t0 = 0.50; c.t1 = 0.20; c.t2 = 0.15; c.t3 = 0.05;
  c.a0 = 0.50; c.a1 = 0.30; c.a2 = 0.10; c.a3 = 0.10;
  c.p0 = 0.10; c.p1 = 0.25; c.p2 = 0.25; c.p3 = 0.15; c.p4 = 0.10;
  return c;
}

inline capstone::PayoffWeights table1_weights() {
  capstone::PayoffWeights w;
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
  return w;
}

inline capstone::GameConfig table1_config() {
  capstone::GameConfig config;
  config.coefficients = table1_coefficients();
  config.weights = table1_weights();
  config.student_costs = {0.15, 0.25};
  return config;
}

struct CaseFixture {
  capstone::ActionProfile actions;
  capstone::TypeProfile types;
};

inline CaseFixture case1_fixture() {
  CaseFixture fx;
  fx.actions.university = {0.60, capstone::IpPolicy::Permissive, 1};
  fx.actions.sponsor = {capstone::Posture::Supportive, 1, 0.30};
  fx.actions.student = {0.85, capstone::Orientation::Learning};
  fx.types.university = capstone::UniversityType::High;
  fx.types.sponsor.value = 0.80;
  fx.types.student = {capstone::StudentCostTier::LowCost, 0.15};
  return fx;
}

inline CaseFixture case2_fixture() {
  CaseFixture fx;
  fx.actions.university = {0.60, capstone::IpPolicy::Permissive, 1};
  fx.actions.sponsor = {capstone::Posture::Exploitative, 0, 0.80};
  fx.actions.student = {0.40, capstone::Orientation::Deliverable};
  fx.types.university = capstone::UniversityType::High;
  fx.types.sponsor.value = 0.20;
  fx.types.student = {capstone::StudentCostTier::LowCost, 0.15};
  return fx;
}

inline CaseFixture case3_fixture() {
  CaseFixture fx;
  fx.actions.university = {0.90, capstone::IpPolicy::Permissive, 1};
  fx.actions.sponsor = {capstone::Posture::Supportive, 1, 0.60};
  fx.actions.student = {0.60, capstone::Orientation::Minimalist};
  fx.types.university = capstone::UniversityType::High;
  fx.types.sponsor.value = 0.60;
  fx.types.student = {capstone::StudentCostTier::LowCost, 0.15};
  return fx;
}

// Random valid model instances for property and equivalence tests.
inline capstone::GameConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> small(0.0, 0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  capstone::GameConfig config;
  capstone::OutcomeCoefficients& c = config.coefficients;
  c.q0 = small(rng); c.q1 = small(rng); c.q2 = small(rng);
  c.q3 = small(rng); c.q4 = small(rng); c.q5 = small(rng);
  c.d0 = small(rng); c.d1 = small(rng); c.d2 = small(rng);
  c.d3 = small(rng); c.d4 = small(rng);
  c.t0 = small(rng); c.t1 = small(rng); c.t2 = small(rng); c.t3 = small(rng);
  c.a0 = small(rng); c.a1 = small(rng); c.a2 = small(rng); c.a3 = small(rng);
  double p[5];
  double p_sum = 0.0;
  for (double& v : p) {
    v = unit(rng);
    p_sum += v;
  }
  const double target = 0.2 + 0.75 * unit(rng);  // keep the sum strictly below 1
  for (double& v : p) v = v / p_sum * target;
  c.p0 = p[0]; c.p1 = p[1]; c.p2 = p[2]; c.p3 = p[3]; c.p4 = p[4];

  capstone::PayoffWeights& w = config.weights;
  w.alpha_q = {unit(rng), unit(rng)};
  w.alpha_d = {unit(rng), unit(rng)};
  w.alpha_p = {unit(rng), unit(rng)};
  w.c_r = small(rng);
  w.c_m = small(rng);
  w.beta_a = unit(rng);
  w.beta_t = unit(rng);
  w.c_o = small(rng);
  w.c_d = small(rng);
  w.gamma_q = unit(rng);
  w.gamma_d = unit(rng);
  w.gamma_t = unit(rng);

  const double low = 0.05 + 0.25 * unit(rng);
  config.student_costs = {low, low + 0.05 + 0.3 * unit(rng)};
  return config;
}

}  // namespace testing
