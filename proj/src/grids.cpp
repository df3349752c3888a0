#include "capstone/grids.hpp"

#include <cmath>

namespace capstone {

std::vector<double> regular_axis(double step, double span, const std::string& field) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ValidationError(field, "grid step must be positive");
  const long long n = std::llround(span / step);
  if (n < 1 || std::abs(static_cast<double>(n) * step - span) > 1e-9)
    throw ValidationError(field, "grid step must divide " + std::to_string(span) + " evenly");
  std::vector<double> axis(static_cast<std::size_t>(n) + 1);
  for (long long i = 0; i <= n; ++i) {
    axis[static_cast<std::size_t>(i)] = static_cast<double>(i) * step;
  }
  axis.back() = span;  // pin the endpoint against accumulated round-off
  return axis;
}

ActionGrids ActionGrids::regular(double effort_step, double scope_step,
                                 double rubric_step, double d_max) {
  ActionGrids grids;
  grids.effort_step = effort_step;
  grids.scope_step = scope_step;
  grids.rubric_step = rubric_step;
  grids.effort = regular_axis(effort_step, 1.0, "grids.e_step");
  grids.scope = regular_axis(scope_step, d_max, "grids.d_step");
  grids.rubric = regular_axis(rubric_step, 1.0, "grids.r_step");
  return grids;
}

std::vector<UniversityAction> ActionGrids::university_actions() const {
  std::vector<UniversityAction> actions;
  actions.reserve(rubric.size() * ip_policies.size() * mentoring_requirements.size());
  for (double r : rubric) {
    for (IpPolicy i : ip_policies) {
      for (int m : mentoring_requirements) {
        actions.push_back(UniversityAction{r, i, m});
      }
    }
  }
  return actions;
}

std::vector<SponsorAction> ActionGrids::sponsor_actions() const {
  std::vector<SponsorAction> actions;
  actions.reserve(postures.size() * mentoring_intensities.size() * scope.size());
  for (Posture s : postures) {
    for (int o : mentoring_intensities) {
      for (double d : scope) {
        actions.push_back(SponsorAction{s, o, d});
      }
    }
  }
  return actions;
}

std::vector<StudentAction> ActionGrids::student_actions() const {
  std::vector<StudentAction> actions;
  actions.reserve(effort.size() * orientations.size());
  for (double e : effort) {
    for (Orientation x : orientations) {
      actions.push_back(StudentAction{e, x});
    }
  }
  return actions;
}

namespace {

void validate_axis(const std::vector<double>& axis, double lo, double hi,
                   const std::string& field) {
  if (axis.empty()) throw ValidationError(field, "grid must be nonempty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] >= lo && axis[i] <= hi))
      throw ValidationError(field, "grid point out of range");
    if (i > 0 && !(axis[i] > axis[i - 1]))
      throw ValidationError(field, "grid points must be strictly ascending");
  }
}

}  // namespace

void validate(const ActionGrids& grids, double d_max, const std::string& field) {
  validate_axis(grids.effort, 0.0, 1.0, field + ".effort");
  validate_axis(grids.scope, 0.0, d_max, field + ".scope");
  validate_axis(grids.rubric, 0.0, 1.0, field + ".rubric");
  if (grids.ip_policies.empty() || grids.mentoring_requirements.empty() ||
      grids.postures.empty() || grids.mentoring_intensities.empty() ||
      grids.orientations.empty())
    throw ValidationError(field, "discrete action sets must be nonempty");
  for (int m : grids.mentoring_requirements) {
    if (m < 0 || m > 2) throw ValidationError(field + ".m", "mentoring requirement must be 0, 1 or 2");
  }
  for (int o : grids.mentoring_intensities) {
    if (o < 0 || o > 2) throw ValidationError(field + ".o", "mentoring intensity must be 0, 1 or 2");
  }
}

}  // namespace capstone
