#pragma once

#include <string>
#include <vector>

#include "capstone/model.hpp"

namespace capstone {

// Discretization of the continuous action coordinates plus the discrete
// coordinate sets. Enumeration order doubles as the tie-break order of every
// solver: university (r asc, permissive first, m asc), sponsor (supportive
// first, o asc, d asc), student (e asc, learning < deliverable < minimalist).
struct ActionGrids {
  // Steps used to materialize the regular grids; 0 marks a custom grid.
  double effort_step = 0.05;
  double scope_step = 0.05;
  double rubric_step = 0.05;

  std::vector<double> effort;
  std::vector<double> scope;
  std::vector<double> rubric;

  std::vector<IpPolicy> ip_policies{IpPolicy::Permissive, IpPolicy::Restrictive};
  std::vector<int> mentoring_requirements{0, 1, 2};
  std::vector<Posture> postures{Posture::Supportive, Posture::Exploitative};
  std::vector<int> mentoring_intensities{0, 1, 2};
  std::vector<Orientation> orientations{Orientation::Learning, Orientation::Deliverable,
                                        Orientation::Minimalist};

  static ActionGrids regular(double effort_step = 0.05, double scope_step = 0.05,
                             double rubric_step = 0.05, double d_max = 1.0);

  std::vector<UniversityAction> university_actions() const;
  std::vector<SponsorAction> sponsor_actions() const;
  std::vector<StudentAction> student_actions() const;
};

// Ascending points {0, step, ..., span}; requires step to divide span evenly.
std::vector<double> regular_axis(double step, double span, const std::string& field);

void validate(const ActionGrids& grids, double d_max, const std::string& field);

}  // namespace capstone
