#include "capstone/strategy.hpp"

#include <cstdio>

#include "capstone/parallel.hpp"

namespace capstone {

namespace {

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Q, D_doc and T are the only outcomes the student payoff reads.
double student_objective(const StudentType& type, const UniversityAction& policy,
                         const SponsorAction& sponsor, const StudentAction& action,
                         const GameConfig& config) {
  OutcomeVector out;
  out.technical_quality = expected_technical_quality(action, sponsor, config.coefficients);
  out.documentation_quality =
      expected_documentation_quality(action, policy, sponsor, config.coefficients);
  out.timeliness = expected_timeliness(action, sponsor, config.coefficients);
  return student_utility(out, action, type, config.weights);
}

// A and T are the only outcomes the sponsor payoff reads.
double sponsor_realized_utility(const UniversityAction& policy, const SponsorAction& action,
                                const StudentAction& student, const GameConfig& config) {
  (void)policy;
  OutcomeVector out;
  out.alignment = expected_alignment(student, action, config.coefficients);
  out.timeliness = expected_timeliness(student, action, config.coefficients);
  return sponsor_utility(out, action, config.weights);
}

int best_student_index(const StudentType& type, const UniversityAction& policy,
                       const SponsorAction& sponsor,
                       const std::vector<StudentAction>& student_grid,
                       const GameConfig& config) {
  int best = 0;
  double best_value = student_objective(type, policy, sponsor, student_grid[0], config);
  for (std::size_t j = 1; j < student_grid.size(); ++j) {
    const double value = student_objective(type, policy, sponsor, student_grid[j], config);
    if (value > best_value) {
      best_value = value;
      best = static_cast<int>(j);
    }
  }
  return best;
}

double expected_sponsor_utility(const UniversityAction& policy, const SponsorAction& action,
                                const std::array<StudentAction, 2>& student_by_tier,
                                const TypePriors& priors, const GameConfig& config) {
  double total = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    const double ps = priors.student[s];
    if (ps == 0.0) continue;
    total += ps * sponsor_realized_utility(policy, action, student_by_tier[s], config);
  }
  return total;
}

double expected_university_utility(
    UniversityType type, const UniversityAction& policy, const TypePriors& priors,
    const GameConfig& config,
    const std::function<SponsorAction(std::size_t theta_index)>& sponsor_at,
    const std::function<StudentAction(std::size_t theta_index, std::size_t tier)>& student_at) {
  double total = 0.0;
  for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
    const double ft = priors.sponsor_weights[t];
    if (ft == 0.0) continue;
    ActionProfile profile;
    profile.university = policy;
    profile.sponsor = sponsor_at(t);
    TypeProfile tp;
    tp.university = type;
    tp.sponsor.value = priors.sponsor_grid[t];
    for (std::size_t s = 0; s < 2; ++s) {
      const double ps = priors.student[s];
      if (ps == 0.0) continue;
      profile.student = student_at(t, s);
      tp.student = config.student_type(static_cast<StudentCostTier>(s));
      const OutcomeVector out = outcomes(profile, tp, config.coefficients);
      total += ft * ps * university_utility(out, policy, type, config.weights);
    }
  }
  return total;
}

}  // namespace

StudentBestResponse student_best_response(const StudentType& type,
                                          const UniversityAction& policy,
                                          const SponsorAction& sponsor,
                                          const GameConfig& config,
                                          const ActionGrids& grids) {
  const std::vector<StudentAction> student_grid = grids.student_actions();
  const int j = best_student_index(type, policy, sponsor, student_grid, config);
  StudentBestResponse result;
  result.action = student_grid[static_cast<std::size_t>(j)];
  result.utility = student_objective(type, policy, sponsor, result.action, config);
  return result;
}

SponsorBestResponse sponsor_best_response(const SponsorType& type,
                                          const UniversityAction& policy,
                                          const StudentRule& student_rule,
                                          const TypePriors& priors,
                                          const GameConfig& config,
                                          const ActionGrids& grids) {
  (void)type;  // U_C does not depend on theta_C; the argument mirrors the information set
  const std::vector<SponsorAction> sponsor_grid = grids.sponsor_actions();
  SponsorBestResponse result;
  bool first = true;
  for (const SponsorAction& action : sponsor_grid) {
    std::array<StudentAction, 2> responses{};
    for (std::size_t s = 0; s < 2; ++s) {
      if (priors.student[s] == 0.0) continue;
      responses[s] = student_rule(config.student_type(static_cast<StudentCostTier>(s)),
                                  policy, action);
    }
    const double value = expected_sponsor_utility(policy, action, responses, priors, config);
    if (first || value > result.expected_utility) {
      result.action = action;
      result.expected_utility = value;
      first = false;
    }
  }
  return result;
}

PolicyBestResponse university_best_policy(UniversityType type,
                                          const SponsorRule& sponsor_rule,
                                          const StudentRule& student_rule,
                                          const TypePriors& priors,
                                          const GameConfig& config,
                                          const ActionGrids& grids, int threads) {
  const std::vector<UniversityAction> policy_grid = grids.university_actions();
  if (policy_grid.empty()) throw ValidationError("grids", "policy grid must be nonempty");

  auto score = [&](int p) {
    const UniversityAction& policy = policy_grid[static_cast<std::size_t>(p)];
    std::vector<SponsorAction> sponsor_actions(priors.sponsor_grid.size());
    for (std::size_t t = 0; t < priors.sponsor_grid.size(); ++t) {
      if (priors.sponsor_weights[t] == 0.0) continue;
      sponsor_actions[t] = sponsor_rule(SponsorType{priors.sponsor_grid[t]}, policy);
    }
    return expected_university_utility(
        type, policy, priors, config,
        [&](std::size_t t) { return sponsor_actions[t]; },
        [&](std::size_t t, std::size_t s) {
          return student_rule(config.student_type(static_cast<StudentCostTier>(s)), policy,
                              sponsor_actions[t]);
        });
  };

  const auto [best, value] =
      parallel_argmax(static_cast<int>(policy_grid.size()), threads, score);
  return PolicyBestResponse{policy_grid[static_cast<std::size_t>(best)], value};
}

ActionProfile backward_induction(const GameConfig& config, const TypeProfile& types,
                                 const ActionGrids& grids) {
  const TypePriors realized = TypePriors::point_mass(types);
  StudentRule student_rule = [&](const StudentType& st, const UniversityAction& u,
                                 const SponsorAction& c) {
    return student_best_response(st, u, c, config, grids).action;
  };
  SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
    return sponsor_best_response(ct, u, student_rule, realized, config, grids).action;
  };

  ActionProfile profile;
  profile.university =
      university_best_policy(types.university, sponsor_rule, student_rule, realized, config, grids)
          .action;
  profile.sponsor =
      sponsor_best_response(types.sponsor, profile.university, student_rule, realized, config, grids)
          .action;
  profile.student =
      student_best_response(types.student, profile.university, profile.sponsor, config, grids)
          .action;
  return profile;
}

DeviationReport verify_local_equilibrium(const ActionProfile& profile,
                                         const TypeProfile& types,
                                         const GameConfig& config, double step,
                                         double tolerance) {
  validate(profile.university, "profile.university");
  validate(profile.sponsor, config.d_max, "profile.sponsor");
  validate(profile.student, "profile.student");
  validate(types.sponsor, "types.sponsor");
  validate(types.student, "types.student");
  if (step < 0.0) throw ValidationError("step", "deviation step must be nonnegative");

  DeviationReport report;
  report.step = step;
  report.tolerance = tolerance;

  const OutcomeVector base_out = outcomes(profile, types, config.coefficients);
  const double base_university =
      university_utility(base_out, profile.university, types.university, config.weights);
  const double base_sponsor = sponsor_utility(base_out, profile.sponsor, config.weights);
  const double base_student = student_utility(base_out, profile.student, types.student, config.weights);

  auto audit = [&](PlayerDeviationReport& player, const std::string& name,
                   const std::string& description, const ActionProfile& deviated,
                   double base_value, auto&& utility_of) {
    const OutcomeVector out = outcomes(deviated, types, config.coefficients);
    DeviationEntry entry{name, description, utility_of(out, deviated) - base_value};
    player.entries.push_back(entry);
    if (!player.best || entry.gain > player.best->gain) player.best = entry;
  };

  if (step > 0.0) {
    // University: +-step in r, every alternative i and m.
    auto university_value = [&](const OutcomeVector& out, const ActionProfile& p) {
      return university_utility(out, p.university, types.university, config.weights);
    };
    for (const double delta : {-step, step}) {
      const double r = profile.university.rubric_strictness + delta;
      if (r < 0.0 || r > 1.0) continue;
      ActionProfile deviated = profile;
      deviated.university.rubric_strictness = r;
      audit(report.university, "university",
            "r: " + compact(profile.university.rubric_strictness) + " -> " + compact(r),
            deviated, base_university, university_value);
    }
    {
      ActionProfile deviated = profile;
      deviated.university.ip_policy = profile.university.ip_policy == IpPolicy::Permissive
                                          ? IpPolicy::Restrictive
                                          : IpPolicy::Permissive;
      audit(report.university, "university",
            "i: " + to_string(profile.university.ip_policy) + " -> " +
                to_string(deviated.university.ip_policy),
            deviated, base_university, university_value);
    }
    for (int m = 0; m <= 2; ++m) {
      if (m == profile.university.mentoring_requirement) continue;
      ActionProfile deviated = profile;
      deviated.university.mentoring_requirement = m;
      audit(report.university, "university",
            "m: " + std::to_string(profile.university.mentoring_requirement) + " -> " +
                std::to_string(m),
            deviated, base_university, university_value);
    }

    // Sponsor: posture flip, every o, +-step in d.
    auto sponsor_value = [&](const OutcomeVector& out, const ActionProfile& p) {
      return sponsor_utility(out, p.sponsor, config.weights);
    };
    {
      ActionProfile deviated = profile;
      deviated.sponsor.posture = profile.sponsor.posture == Posture::Supportive
                                     ? Posture::Exploitative
                                     : Posture::Supportive;
      audit(report.sponsor, "sponsor",
            "s: " + to_string(profile.sponsor.posture) + " -> " +
                to_string(deviated.sponsor.posture),
            deviated, base_sponsor, sponsor_value);
    }
    for (int o = 0; o <= 2; ++o) {
      if (o == profile.sponsor.mentoring_intensity) continue;
      ActionProfile deviated = profile;
      deviated.sponsor.mentoring_intensity = o;
      audit(report.sponsor, "sponsor",
            "o: " + std::to_string(profile.sponsor.mentoring_intensity) + " -> " +
                std::to_string(o),
            deviated, base_sponsor, sponsor_value);
    }
    for (const double delta : {-step, step}) {
      const double d = profile.sponsor.scope_strictness + delta;
      if (d < 0.0 || d > config.d_max) continue;
      ActionProfile deviated = profile;
      deviated.sponsor.scope_strictness = d;
      audit(report.sponsor, "sponsor",
            "d: " + compact(profile.sponsor.scope_strictness) + " -> " + compact(d),
            deviated, base_sponsor, sponsor_value);
    }

    // Student: +-step in e, every alternative orientation.
    auto student_value = [&](const OutcomeVector& out, const ActionProfile& p) {
      return student_utility(out, p.student, types.student, config.weights);
    };
    for (const double delta : {-step, step}) {
      const double e = profile.student.effort + delta;
      if (e < 0.0 || e > 1.0) continue;
      ActionProfile deviated = profile;
      deviated.student.effort = e;
      audit(report.student, "student",
            "e: " + compact(profile.student.effort) + " -> " + compact(e), deviated,
            base_student, student_value);
    }
    for (Orientation x : {Orientation::Learning, Orientation::Deliverable, Orientation::Minimalist}) {
      if (x == profile.student.orientation) continue;
      ActionProfile deviated = profile;
      deviated.student.orientation = x;
      audit(report.student, "student",
            "x: " + to_string(profile.student.orientation) + " -> " + to_string(x), deviated,
            base_student, student_value);
    }
  }

  for (PlayerDeviationReport* player : {&report.university, &report.sponsor, &report.student}) {
    player->max_gain = player->best ? player->best->gain : 0.0;
    player->consistent = player->max_gain <= tolerance;
    if (player->consistent) player->best.reset();
  }
  return report;
}

namespace {

struct SweepTables {
  std::array<int, 2> university_choice{0, 0};
  std::vector<int> sponsor_choice;
  std::vector<int> student_choice;

  bool operator==(const SweepTables& other) const {
    return university_choice == other.university_choice &&
           sponsor_choice == other.sponsor_choice && student_choice == other.student_choice;
  }
};

}  // namespace

PbeResult pbe_search(const GameConfig& config, const TypePriors& priors,
                     const ActionGrids& grids, int max_iter, OffPathRule off_path,
                     int threads) {
  if (max_iter < 1) throw ValidationError("max_iter", "must be at least 1");
  threads = resolve_thread_count(threads);

  PbeResult result;
  StrategyProfile& profile = result.strategy;
  profile.policy_grid = grids.university_actions();
  profile.sponsor_grid = grids.sponsor_actions();
  profile.student_grid = grids.student_actions();
  profile.theta_grid = priors.sponsor_grid;

  const std::size_t n_policy = profile.policy_grid.size();
  const std::size_t n_sponsor = profile.sponsor_grid.size();
  const std::size_t n_theta = profile.theta_grid.size();

  SweepTables current;
  current.sponsor_choice.assign(n_theta * n_policy, 0);
  current.student_choice.assign(2 * n_policy * n_sponsor, 0);

  auto sweep = [&]() {
    SweepTables next;
    next.sponsor_choice.assign(n_theta * n_policy, 0);
    next.student_choice.assign(2 * n_policy * n_sponsor, 0);

    // Stage 1: students at every information set.
    const int student_cells = static_cast<int>(2 * n_policy * n_sponsor);
    parallel_for(student_cells, threads, [&](int cell) {
      const std::size_t s = static_cast<std::size_t>(cell) / (n_policy * n_sponsor);
      const std::size_t rest = static_cast<std::size_t>(cell) % (n_policy * n_sponsor);
      const std::size_t p = rest / n_sponsor;
      const std::size_t c = rest % n_sponsor;
      next.student_choice[static_cast<std::size_t>(cell)] = best_student_index(
          config.student_type(static_cast<StudentCostTier>(s)), profile.policy_grid[p],
          profile.sponsor_grid[c], profile.student_grid, config);
    });

    auto student_lookup = [&](std::size_t s, std::size_t p, std::size_t c) {
      return profile.student_grid[static_cast<std::size_t>(
          next.student_choice[(s * n_policy + p) * n_sponsor + c])];
    };

    // Stage 2: sponsors given the student map and the student-type prior.
    const int sponsor_cells = static_cast<int>(n_theta * n_policy);
    parallel_for(sponsor_cells, threads, [&](int cell) {
      const std::size_t t = static_cast<std::size_t>(cell) / n_policy;
      const std::size_t p = static_cast<std::size_t>(cell) % n_policy;
      (void)t;  // the sponsor objective is invariant in theta_C
      int best = 0;
      double best_value = 0.0;
      for (std::size_t c = 0; c < n_sponsor; ++c) {
        std::array<StudentAction, 2> responses{};
        for (std::size_t s = 0; s < 2; ++s) {
          if (priors.student[s] == 0.0) continue;
          responses[s] = student_lookup(s, p, c);
        }
        const double value = expected_sponsor_utility(
            profile.policy_grid[p], profile.sponsor_grid[c], responses, priors, config);
        if (c == 0 || value > best_value) {
          best = static_cast<int>(c);
          best_value = value;
        }
      }
      next.sponsor_choice[static_cast<std::size_t>(cell)] = best;
    });

    // Stage 3: the university policy per type.
    for (std::size_t u = 0; u < 2; ++u) {
      auto score = [&](int p) {
        return expected_university_utility(
            static_cast<UniversityType>(u), profile.policy_grid[static_cast<std::size_t>(p)],
            priors, config,
            [&](std::size_t t) {
              return profile.sponsor_grid[static_cast<std::size_t>(
                  next.sponsor_choice[t * n_policy + static_cast<std::size_t>(p)])];
            },
            [&](std::size_t t, std::size_t s) {
              return student_lookup(
                  s, static_cast<std::size_t>(p),
                  static_cast<std::size_t>(
                      next.sponsor_choice[t * n_policy + static_cast<std::size_t>(p)]));
            });
      };
      next.university_choice[u] =
          parallel_argmax(static_cast<int>(n_policy), threads, score).first;
    }
    return next;
  };

  for (int iter = 1; iter <= max_iter; ++iter) {
    SweepTables next = sweep();
    result.iterations = iter;
    const bool fixed = next == current;
    current = std::move(next);
    if (fixed) {
      result.converged = true;
      break;
    }
  }

  profile.university_choice = current.university_choice;
  profile.sponsor_choice = std::move(current.sponsor_choice);
  profile.student_choice = std::move(current.student_choice);

  // Beliefs at the modal on-path observations, via the induced likelihoods.
  BeliefState& beliefs = result.beliefs;
  beliefs.off_path_rule = off_path;

  LikelihoodTable university_table;
  university_table.action_keys.reserve(n_policy);
  for (const UniversityAction& a : profile.policy_grid)
    university_table.action_keys.push_back(action_key(a));
  for (std::size_t u = 0; u < 2; ++u) {
    std::vector<double> row(n_policy, 0.0);
    row[static_cast<std::size_t>(profile.university_choice[u])] = 1.0;
    university_table.rows.push_back(std::move(row));
  }

  const std::size_t modal_u = priors.university[1] > priors.university[0] ? 1 : 0;
  const std::size_t observed_policy_index =
      static_cast<std::size_t>(profile.university_choice[modal_u]);
  const UniversityAction observed_policy = profile.policy_grid[observed_policy_index];
  beliefs.mu_university = posterior_university(priors, university_table, observed_policy,
                                               off_path, &beliefs.university_off_path);

  SponsorLikelihood sponsor_likelihood;
  sponsor_likelihood.policy_keys.push_back(action_key(observed_policy));
  LikelihoodTable sponsor_table;
  sponsor_table.action_keys.reserve(n_sponsor);
  for (const SponsorAction& a : profile.sponsor_grid)
    sponsor_table.action_keys.push_back(action_key(a));
  for (std::size_t t = 0; t < n_theta; ++t) {
    std::vector<double> row(n_sponsor, 0.0);
    row[static_cast<std::size_t>(profile.sponsor_at(t, observed_policy_index))] = 1.0;
    sponsor_table.rows.push_back(std::move(row));
  }
  sponsor_likelihood.tables.push_back(std::move(sponsor_table));

  std::vector<double> marginal(n_sponsor, 0.0);
  for (std::size_t t = 0; t < n_theta; ++t) {
    marginal[static_cast<std::size_t>(profile.sponsor_at(t, observed_policy_index))] +=
        priors.sponsor_weights[t];
  }
  std::size_t modal_sponsor = 0;
  for (std::size_t c = 1; c < n_sponsor; ++c) {
    if (marginal[c] > marginal[modal_sponsor]) modal_sponsor = c;
  }
  beliefs.mu_sponsor =
      posterior_sponsor(priors, sponsor_likelihood, observed_policy,
                        profile.sponsor_grid[modal_sponsor], off_path, &beliefs.sponsor_off_path);
  return result;
}

}  // namespace capstone
