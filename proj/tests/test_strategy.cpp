#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include "capstone/strategy.hpp"
#include "oracles.hpp"

using namespace capstone;
using testing::case1_fixture;
using testing::case2_fixture;
using testing::table1_config;

namespace {

ActionGrids degenerate_grids(const ActionProfile& profile) {
  ActionGrids grids;
  grids.effort_step = grids.scope_step = grids.rubric_step = 0.0;
  grids.effort = {profile.student.effort};
  grids.scope = {profile.sponsor.scope_strictness};
  grids.rubric = {profile.university.rubric_strictness};
  grids.ip_policies = {profile.university.ip_policy};
  grids.mentoring_requirements = {profile.university.mentoring_requirement};
  grids.postures = {profile.sponsor.posture};
  grids.mentoring_intensities = {profile.sponsor.mentoring_intensity};
  grids.orientations = {profile.student.orientation};
  return grids;
}

StudentRule direct_student_rule(const GameConfig& config, const ActionGrids& grids) {
  return [&config, &grids](const StudentType& st, const UniversityAction& u,
                           const SponsorAction& c) {
    return student_best_response(st, u, c, config, grids).action;
  };
}

}  // namespace

TEST_CASE("student best response under the collaborative environment") {
  const GameConfig config = table1_config();
  const ActionGrids grids = ActionGrids::regular();
  const UniversityAction policy{0.6, IpPolicy::Permissive, 1};
  const SponsorAction sponsor{Posture::Supportive, 1, 0.3};

  SUBCASE("positive effort gradient pushes effort to the top of the grid") {
    // gamma.(q1,d1,t1) - k = 0.255 - 0.15 = 0.105 > 0.
    const auto best = student_best_response(StudentType{StudentCostTier::LowCost, 0.15}, policy,
                                            sponsor, config, grids);
    CHECK(best.action.effort == 1.0);
    CHECK(best.action.orientation == Orientation::Learning);
  }
  SUBCASE("prohibitive effort cost collapses effort to zero, learning still pays") {
    const auto best = student_best_response(StudentType{StudentCostTier::LowCost, 10.0}, policy,
                                            sponsor, config, grids);
    CHECK(best.action.effort == 0.0);
    CHECK(best.action.orientation == Orientation::Learning);
  }
  SUBCASE("orientation tie breaks to learning when it has no payoff effect") {
    GameConfig flat = config;
    flat.coefficients.d2 = 0.0;
    flat.coefficients.q5 = 0.0;
    const auto best = student_best_response(StudentType{StudentCostTier::LowCost, 0.15}, policy,
                                            sponsor, flat, grids);
    CHECK(best.action.orientation == Orientation::Learning);
  }
}

TEST_CASE("sponsor best response under published coefficient sign structure") {
  const GameConfig config = table1_config();
  const ActionGrids grids = ActionGrids::regular();
  const UniversityAction policy{0.6, IpPolicy::Permissive, 1};

  SUBCASE("scope gradient is strictly negative so the maximizer has d = 0") {
    const auto best = sponsor_best_response(SponsorType{0.2}, policy,
                                            direct_student_rule(config, grids), config.priors,
                                            config, grids);
    CHECK(best.action.scope_strictness == 0.0);
  }
  SUBCASE("mentoring worth 0.06 against cost 0.10 yields o = 0") {
    const auto best = sponsor_best_response(SponsorType{0.8}, policy,
                                            direct_student_rule(config, grids), config.priors,
                                            config, grids);
    CHECK(best.action.mentoring_intensity == 0);
    CHECK(best.action.posture == Posture::Supportive);
  }
  SUBCASE("free mentoring with positive timeliness return yields o = 2") {
    GameConfig free = config;
    free.weights.c_o = 0.0;
    free.weights.c_d = 0.0;
    const auto best = sponsor_best_response(SponsorType{0.8}, policy,
                                            direct_student_rule(free, grids), free.priors, free,
                                            grids);
    CHECK(best.action.mentoring_intensity == 2);
  }
}

TEST_CASE("university best policy") {
  const GameConfig config = table1_config();
  const ActionGrids grids = ActionGrids::regular();
  const StudentRule student_rule = direct_student_rule(config, grids);
  const SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
    return sponsor_best_response(ct, u, student_rule, config.priors, config, grids).action;
  };

  SUBCASE("cost-free monotone rubric lever is pushed to r = 1") {
    GameConfig free = config;
    free.weights.c_r = 0.0;
    free.weights.c_m = 0.0;
    const StudentRule rule = direct_student_rule(free, grids);
    const SponsorRule crule = [&](const SponsorType& ct, const UniversityAction& u) {
      return sponsor_best_response(ct, u, rule, free.priors, free, grids).action;
    };
    const auto best = university_best_policy(UniversityType::High, crule, rule, free.priors,
                                             free, grids);
    CHECK(best.action.rubric_strictness == 1.0);
    CHECK(best.action.ip_policy == IpPolicy::Permissive);
    CHECK(best.action.mentoring_requirement == 0);
  }
  SUBCASE("permissive IP dominates when alpha_P p1 > 0 and responses ignore it") {
    const auto best = university_best_policy(UniversityType::High, sponsor_rule, student_rule,
                                             config.priors, config, grids);
    CHECK(best.action.ip_policy == IpPolicy::Permissive);
  }
  SUBCASE("degenerate policy grid returns its only point") {
    const auto fx = case1_fixture();
    ActionGrids single = grids;
    single.rubric = {0.6};
    single.rubric_step = 0.0;
    single.ip_policies = {IpPolicy::Permissive};
    single.mentoring_requirements = {1};
    const auto best = university_best_policy(UniversityType::High, sponsor_rule, student_rule,
                                             config.priors, config, single);
    CHECK(best.action == fx.actions.university);
  }
}

TEST_CASE("backward induction composes the three best responses") {
  const GameConfig config = table1_config();
  const auto fx = case1_fixture();

  SUBCASE("degenerate grids pinned to the case-study actions return them exactly") {
    const ActionGrids grids = degenerate_grids(fx.actions);
    const ActionProfile profile = backward_induction(config, fx.types, grids);
    CHECK(profile == fx.actions);
  }
  SUBCASE("full default grids give maximal student effort") {
    const ActionGrids grids = ActionGrids::regular();
    const ActionProfile profile = backward_induction(config, fx.types, grids);
    CHECK(profile.student.effort == 1.0);
  }
  SUBCASE("re-solving the student stage at the chosen upstream actions is consistent") {
    const ActionGrids grids = ActionGrids::regular();
    const ActionProfile profile = backward_induction(config, fx.types, grids);
    const auto re_solved = student_best_response(fx.types.student, profile.university,
                                                 profile.sponsor, config, grids);
    CHECK(re_solved.action == profile.student);
  }
}

TEST_CASE("best responses agree with the independent exhaustive oracle") {
  std::mt19937_64 rng(20240811);
  const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
  const TypePriors priors = TypePriors::uniform(21);

  for (int trial = 0; trial < 10; ++trial) {
    const GameConfig config = testing::random_config(rng);
    const UniversityAction policy{0.5, trial % 2 == 0 ? IpPolicy::Permissive : IpPolicy::Restrictive,
                                  trial % 3};
    const SponsorAction sponsor{trial % 2 == 0 ? Posture::Supportive : Posture::Exploitative,
                                trial % 3, 0.25};

    for (std::size_t tier = 0; tier < 2; ++tier) {
      const StudentType st = config.student_type(static_cast<StudentCostTier>(tier));
      const auto engine = student_best_response(st, policy, sponsor, config, grids);
      const auto reference = oracle::student_br(st, policy, sponsor, config, grids);
      CHECK(engine.action == reference.action);
      CHECK(engine.utility == reference.utility);
    }

    const auto engine_sponsor = sponsor_best_response(
        SponsorType{0.5}, policy, direct_student_rule(config, grids), priors, config, grids);
    const auto oracle_sponsor = oracle::sponsor_br(policy, config, priors, grids);
    CHECK(engine_sponsor.action == oracle_sponsor.action);
    CHECK(engine_sponsor.expected_utility == oracle_sponsor.expected_utility);

    const StudentRule student_rule = direct_student_rule(config, grids);
    const SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
      return sponsor_best_response(ct, u, student_rule, priors, config, grids).action;
    };
    const auto engine_policy = university_best_policy(UniversityType::Low, sponsor_rule,
                                                      student_rule, priors, config, grids);
    const auto oracle_policy = oracle::university_policy(UniversityType::Low, config, priors, grids);
    CHECK(engine_policy.action == oracle_policy.action);
    CHECK(engine_policy.expected_utility == oracle_policy.expected_utility);
  }
}

TEST_CASE("solvers are deterministic across reruns") {
  std::mt19937_64 rng(5);
  const GameConfig config = testing::random_config(rng);
  const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
  const UniversityAction policy{0.75, IpPolicy::Restrictive, 2};
  const SponsorAction sponsor{Posture::Exploitative, 1, 0.5};
  const StudentType st = config.student_type(StudentCostTier::LowCost);

  const auto a = student_best_response(st, policy, sponsor, config, grids);
  const auto b = student_best_response(st, policy, sponsor, config, grids);
  CHECK(a.action == b.action);
  CHECK(a.utility == b.utility);
}

TEST_CASE("halving the effort step never decreases the achieved best response") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const GameConfig config = testing::random_config(rng);
    const UniversityAction policy{0.5, IpPolicy::Permissive, 1};
    const SponsorAction sponsor{Posture::Supportive, 1, 0.25};
    const StudentType st = config.student_type(StudentCostTier::LowCost);
    const auto coarse = student_best_response(st, policy, sponsor, config,
                                              ActionGrids::regular(0.1, 0.25, 0.25, 1.0));
    const auto fine = student_best_response(st, policy, sponsor, config,
                                            ActionGrids::regular(0.05, 0.25, 0.25, 1.0));
    CHECK(fine.utility >= coarse.utility);
  }
}

TEST_CASE("deviation audit reproduces the derived case-study gains") {
  const GameConfig config = table1_config();

  SUBCASE("collaborative case: the student effort step up gains 0.05 x 0.105") {
    const auto fx = case1_fixture();
    const DeviationReport report =
        verify_local_equilibrium(fx.actions, fx.types, config, 0.05, 1e-9);
    CHECK_CLOSE(report.student.max_gain, 0.00525, 1e-9);
    CHECK_FALSE(report.student.consistent);
    bool found = false;
    for (const auto& entry : report.student.entries) {
      if (entry.description == "e: 0.85 -> 0.9") {
        found = true;
        CHECK_CLOSE(entry.gain, 0.00525, 1e-9);
      }
    }
    CHECK(found);
  }
  SUBCASE("sponsor-dominated case: raising mentoring from 0 to 1 loses 0.04") {
    const auto fx = case2_fixture();
    const DeviationReport report =
        verify_local_equilibrium(fx.actions, fx.types, config, 0.05, 1e-9);
    bool found = false;
    for (const auto& entry : report.sponsor.entries) {
      if (entry.description == "o: 0 -> 1") {
        found = true;
        CHECK_CLOSE(entry.gain, -0.04, 1e-9);
      }
    }
    CHECK(found);
  }
  SUBCASE("step 0 disables the deviation set and every player is consistent") {
    const auto fx = case1_fixture();
    const DeviationReport report =
        verify_local_equilibrium(fx.actions, fx.types, config, 0.0, 1e-9);
    CHECK(report.all_consistent());
    CHECK(report.student.entries.empty());
    CHECK(report.sponsor.entries.empty());
    CHECK(report.university.entries.empty());
  }
  SUBCASE("audit soundness: replaying every reported deviation matches its gain") {
    const auto fx = case1_fixture();
    const DeviationReport report =
        verify_local_equilibrium(fx.actions, fx.types, config, 0.05, 1e-9);
    const OutcomeVector base = outcomes(fx.actions, fx.types, config.coefficients);
    const double base_student =
        student_utility(base, fx.actions.student, fx.types.student, config.weights);
    for (const auto& entry : report.student.entries) {
      CHECK(entry.gain <= report.student.max_gain + 1e-15);
    }
    // The best student deviation must really achieve the reported gain.
    REQUIRE(report.student.best.has_value());
    ActionProfile deviated = fx.actions;
    deviated.student.effort += 0.05;
    const OutcomeVector out = outcomes(deviated, fx.types, config.coefficients);
    const double replay =
        student_utility(out, deviated.student, fx.types.student, config.weights) - base_student;
    CHECK_CLOSE(replay, report.student.best->gain, 1e-15);
  }
  SUBCASE("profiles violating invariants are rejected") {
    auto fx = case1_fixture();
    fx.actions.student.effort = 1.5;
    CHECK_THROWS_AS(verify_local_equilibrium(fx.actions, fx.types, config, 0.05, 1e-9),
                    ValidationError);
  }
}

TEST_CASE("equilibrium sweep search") {
  const GameConfig config = table1_config();

  SUBCASE("degenerate one-point grids converge immediately to the pinned profile") {
    const auto fx = case1_fixture();
    const ActionGrids grids = degenerate_grids(fx.actions);
    const PbeResult result = pbe_search(config, config.priors, grids, 10);
    CHECK(result.converged);
    CHECK(result.iterations == 1);
    CHECK(result.strategy.policy_grid[static_cast<std::size_t>(
              result.strategy.university_choice[1])] == fx.actions.university);
  }
  SUBCASE("default grids: converged student strategy plays e = 1 on path") {
    const PbeResult result = pbe_search(config, config.priors, config.grids, 10);
    REQUIRE(result.converged);
    const StrategyProfile& s = result.strategy;
    for (std::size_t u = 0; u < 2; ++u) {
      if (config.priors.university[u] == 0.0) continue;
      const auto p = static_cast<std::size_t>(s.university_choice[u]);
      for (std::size_t t = 0; t < s.theta_grid.size(); ++t) {
        if (config.priors.sponsor_weights[t] == 0.0) continue;
        const auto c = static_cast<std::size_t>(s.sponsor_at(t, p));
        for (std::size_t tier = 0; tier < 2; ++tier) {
          if (config.priors.student[tier] == 0.0) continue;
          const StudentAction action =
              s.student_grid[static_cast<std::size_t>(s.student_at(tier, p, c))];
          CHECK(action.effort == 1.0);
        }
      }
    }
  }
  SUBCASE("converged strategies survive an independent best-response re-scan") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(5);
    const PbeResult result = pbe_search(config, priors, grids, 10);
    REQUIRE(result.converged);
    const StrategyProfile& s = result.strategy;

    // Student stage at every information set.
    for (std::size_t tier = 0; tier < 2; ++tier) {
      for (std::size_t p = 0; p < s.policy_grid.size(); ++p) {
        for (std::size_t c = 0; c < s.sponsor_grid.size(); ++c) {
          const auto reference =
              oracle::student_br(config.student_type(static_cast<StudentCostTier>(tier)),
                                 s.policy_grid[p], s.sponsor_grid[c], config, grids);
          CHECK(s.student_grid[static_cast<std::size_t>(s.student_at(tier, p, c))] ==
                reference.action);
        }
      }
    }
    // Sponsor stage at every (theta, policy) information set.
    for (std::size_t p = 0; p < s.policy_grid.size(); ++p) {
      const auto reference = oracle::sponsor_br(s.policy_grid[p], config, priors, grids);
      for (std::size_t t = 0; t < s.theta_grid.size(); ++t) {
        CHECK(s.sponsor_grid[static_cast<std::size_t>(s.sponsor_at(t, p))] == reference.action);
      }
    }
    // University stage per type.
    for (std::size_t u = 0; u < 2; ++u) {
      const auto reference =
          oracle::university_policy(static_cast<UniversityType>(u), config, priors, grids);
      CHECK(s.policy_grid[static_cast<std::size_t>(s.university_choice[u])] == reference.action);
    }
  }
  SUBCASE("non-convergence within max_iter is reported, never silently truncated") {
    const PbeResult result = pbe_search(config, config.priors, config.grids, 1);
    CHECK_FALSE(result.converged);
    CHECK(result.iterations == 1);
  }
  SUBCASE("thread count never changes the result") {
    const ActionGrids grids = ActionGrids::regular(0.2, 0.2, 0.2, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const PbeResult serial = pbe_search(config, priors, grids, 10, OffPathRule::RevertToPrior, 1);
    const PbeResult parallel = pbe_search(config, priors, grids, 10, OffPathRule::RevertToPrior, 4);
    CHECK(serial.strategy.university_choice == parallel.strategy.university_choice);
    CHECK(serial.strategy.sponsor_choice == parallel.strategy.sponsor_choice);
    CHECK(serial.strategy.student_choice == parallel.strategy.student_choice);
  }
  SUBCASE("posteriors in the returned belief state are normalized") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const PbeResult result = pbe_search(config, priors, grids, 10);
    CHECK_CLOSE(result.beliefs.mu_university[0] + result.beliefs.mu_university[1], 1.0, 1e-9);
    double sum = 0.0;
    for (double w : result.beliefs.mu_sponsor) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK_CLOSE(sum, 1.0, 1e-9);
  }
}
