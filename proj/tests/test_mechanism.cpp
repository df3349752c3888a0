#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include "capstone/mechanism.hpp"
#include "oracles.hpp"

using namespace capstone;
using testing::case1_fixture;
using testing::table1_config;

namespace {

ResponseMap pinned_responses(const TypePriors& priors, const SponsorAction& sponsor,
                             const StudentAction& student) {
  ResponseMap map;
  map.theta_grid = priors.sponsor_grid;
  map.entries.assign(priors.sponsor_grid.size(), ResponseEntry{sponsor, {student, student}});
  return map;
}

}  // namespace

TEST_CASE("expected welfare") {
  const GameConfig config = table1_config();
  const auto fx = case1_fixture();

  SUBCASE("degenerate weights reduce welfare to the university expectation") {
    const TypePriors priors = TypePriors::uniform(11);
    const ResponseMap responses = pinned_responses(priors, fx.actions.sponsor, fx.actions.student);
    const WelfareBreakdown value = expected_welfare(
        fx.actions.university, responses, WelfareWeights{0.0, 0.0}, priors, config,
        UniversityType::High);
    CHECK(value.welfare == value.university);
  }
  SUBCASE("point-mass priors at the collaborative case sum the three published utilities") {
    const TypePriors priors = TypePriors::point_mass(fx.types);
    const ResponseMap responses = pinned_responses(priors, fx.actions.sponsor, fx.actions.student);
    const WelfareBreakdown value = expected_welfare(
        fx.actions.university, responses, WelfareWeights{1.0, 1.0}, priors, config,
        UniversityType::High);
    CHECK_CLOSE(value.university, 0.67696, 1e-12);
    CHECK_CLOSE(value.students, 0.72095, 1e-12);
    CHECK_CLOSE(value.sponsor, 0.5025, 1e-12);
    CHECK_CLOSE(value.welfare, 1.90041, 1e-9);
    CHECK_CLOSE(value.welfare, 1.901, 1.5e-3);  // published 3-decimal values summed
  }
  SUBCASE("identically zero utilities give zero welfare") {
    GameConfig zero = config;
    zero.weights = PayoffWeights{};
    zero.coefficients = OutcomeCoefficients{};
    const TypePriors priors = TypePriors::uniform(5);
    const ResponseMap responses =
        pinned_responses(priors, SponsorAction{Posture::Supportive, 0, 0.0},
                         StudentAction{0.0, Orientation::Learning});
    const WelfareBreakdown value = expected_welfare(
        UniversityAction{0.0, IpPolicy::Permissive, 0}, responses, WelfareWeights{1.0, 1.0},
        priors, zero, UniversityType::Low);
    CHECK(value.welfare == 0.0);
  }
  SUBCASE("welfare is affine in the weights at three collinear points") {
    const TypePriors priors = TypePriors::uniform(11);
    const ResponseMap responses = pinned_responses(priors, fx.actions.sponsor, fx.actions.student);
    auto welfare_at = [&](double lambda, double eta) {
      return expected_welfare(fx.actions.university, responses, WelfareWeights{lambda, eta},
                              priors, config, UniversityType::High)
          .welfare;
    };
    const double w0 = welfare_at(0.2, 0.1);
    const double w1 = welfare_at(0.6, 0.5);
    const double w2 = welfare_at(1.0, 0.9);
    CHECK_CLOSE(w1, 0.5 * (w0 + w2), 1e-12);
  }
}

TEST_CASE("induced responses") {
  const GameConfig config = table1_config();
  const auto fx = case1_fixture();

  SUBCASE("degenerate grids return the single feasible pair") {
    ActionGrids grids;
    grids.effort_step = grids.scope_step = grids.rubric_step = 0.0;
    grids.effort = {fx.actions.student.effort};
    grids.scope = {fx.actions.sponsor.scope_strictness};
    grids.rubric = {fx.actions.university.rubric_strictness};
    grids.ip_policies = {fx.actions.university.ip_policy};
    grids.mentoring_requirements = {fx.actions.university.mentoring_requirement};
    grids.postures = {fx.actions.sponsor.posture};
    grids.mentoring_intensities = {fx.actions.sponsor.mentoring_intensity};
    grids.orientations = {fx.actions.student.orientation};
    const TypePriors priors = TypePriors::uniform(5);
    const ResponseMap map = induced_responses(fx.actions.university, config, priors, grids);
    REQUIRE(map.entries.size() == 5);
    for (const ResponseEntry& entry : map.entries) {
      CHECK(entry.sponsor == fx.actions.sponsor);
      CHECK(entry.student[0] == fx.actions.student);
    }
  }
  SUBCASE("collaborative policy induces maximal low-cost effort") {
    const TypePriors priors = TypePriors::uniform(11);
    const ResponseMap map =
        induced_responses(fx.actions.university, config, priors, config.grids);
    for (const ResponseEntry& entry : map.entries) {
      CHECK(entry.student[0].effort == 1.0);
    }
  }
  SUBCASE("responses replayed through the deviation audit are follower-consistent") {
    const TypePriors priors = TypePriors::uniform(5);
    const ResponseMap map =
        induced_responses(fx.actions.university, config, priors, config.grids);
    for (std::size_t t = 0; t < map.theta_grid.size(); t += 2) {
      for (std::size_t tier = 0; tier < 2; ++tier) {
        ActionProfile profile{fx.actions.university, map.entries[t].sponsor,
                              map.entries[t].student[tier]};
        TypeProfile types;
        types.university = UniversityType::High;
        types.sponsor.value = map.theta_grid[t];
        types.student = config.student_type(static_cast<StudentCostTier>(tier));
        const DeviationReport report =
            verify_local_equilibrium(profile, types, config, 0.05, 1e-9);
        CHECK(report.sponsor.consistent);
        CHECK(report.student.consistent);
      }
    }
  }
}

TEST_CASE("optimal policy") {
  const GameConfig config = table1_config();

  SUBCASE("single-point policy grid yields that policy and one surface row") {
    ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    grids.rubric = {0.5};
    grids.rubric_step = 0.0;
    grids.ip_policies = {IpPolicy::Restrictive};
    grids.mentoring_requirements = {2};
    const TypePriors priors = TypePriors::uniform(5);
    const OptimalPolicyResult result = optimal_policy(config, priors, WelfareWeights{},
                                                      grids, UniversityType::High);
    CHECK(result.surface.rows.size() == 1);
    CHECK(result.policy == UniversityAction{0.5, IpPolicy::Restrictive, 2});
  }
  SUBCASE("surface has exactly |r_grid| x 2 x 3 rows in grid order") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(5);
    const OptimalPolicyResult result = optimal_policy(config, priors, WelfareWeights{0.5, 0.5},
                                                      grids, UniversityType::High);
    CHECK(result.surface.rows.size() == grids.rubric.size() * 2 * 3);
    const auto expected = grids.university_actions();
    for (std::size_t p = 0; p < expected.size(); ++p) {
      CHECK(result.surface.rows[p].policy == expected[p]);
    }
  }
  SUBCASE("surface rows satisfy the welfare identity and the argmax dominates") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const WelfareWeights weights{0.7, 0.3};
    const OptimalPolicyResult result =
        optimal_policy(config, priors, weights, grids, UniversityType::High);
    for (const SurfaceRow& row : result.surface.rows) {
      CHECK_CLOSE(row.value.welfare,
                  row.value.university + weights.lambda * row.value.students +
                      weights.eta * row.value.sponsor,
                  1e-12);
      CHECK(result.value.welfare >= row.value.welfare);
    }
  }
  SUBCASE("cost-free levers with frozen responses push the rubric to 1") {
    GameConfig free = config;
    free.weights.c_r = 0.0;
    free.weights.c_m = 0.0;
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const OptimalPolicyResult result = optimal_policy(free, priors, WelfareWeights{},
                                                      grids, UniversityType::High);
    CHECK(result.policy.rubric_strictness == 1.0);
    CHECK(result.policy.ip_policy == IpPolicy::Permissive);
    CHECK(result.policy.mentoring_requirement == 0);
  }
  SUBCASE("lambda = eta = 0 coincides with the university best-policy solver") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const OptimalPolicyResult mech = optimal_policy(config, priors, WelfareWeights{},
                                                    grids, UniversityType::High);
    const StudentRule student_rule = [&](const StudentType& st, const UniversityAction& u,
                                         const SponsorAction& c) {
      return student_best_response(st, u, c, config, grids).action;
    };
    const SponsorRule sponsor_rule = [&](const SponsorType& ct, const UniversityAction& u) {
      return sponsor_best_response(ct, u, student_rule, priors, config, grids).action;
    };
    const PolicyBestResponse direct = university_best_policy(
        UniversityType::High, sponsor_rule, student_rule, priors, config, grids);
    CHECK(mech.policy == direct.action);
    CHECK(mech.value.welfare == direct.expected_utility);
  }
  SUBCASE("matches the independent oracle on random configurations") {
    std::mt19937_64 rng(20240811);
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    for (int trial = 0; trial < 10; ++trial) {
      const GameConfig random = testing::random_config(rng);
      const WelfareWeights weights{trial * 0.1, 1.0 - trial * 0.05};
      const OptimalPolicyResult engine =
          optimal_policy(random, priors, weights, grids, UniversityType::Low);
      const oracle::WelfarePoint reference =
          oracle::optimal(random, priors, weights, grids, UniversityType::Low);
      CHECK(engine.policy == reference.policy);
      CHECK(engine.value.welfare == reference.welfare);
      CHECK(engine.value.university == reference.university);
      CHECK(engine.value.students == reference.students);
      CHECK(engine.value.sponsor == reference.sponsor);
    }
  }
  SUBCASE("thread count never changes the surface") {
    const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
    const TypePriors priors = TypePriors::uniform(11);
    const OptimalPolicyResult serial =
        optimal_policy(config, priors, WelfareWeights{0.5, 0.5}, grids, UniversityType::High, 1);
    const OptimalPolicyResult parallel =
        optimal_policy(config, priors, WelfareWeights{0.5, 0.5}, grids, UniversityType::High, 4);
    CHECK(serial.policy == parallel.policy);
    REQUIRE(serial.surface.rows.size() == parallel.surface.rows.size());
    for (std::size_t p = 0; p < serial.surface.rows.size(); ++p) {
      CHECK(serial.surface.rows[p].value.welfare == parallel.surface.rows[p].value.welfare);
    }
  }
}

TEST_CASE("weight sweep") {
  const GameConfig config = table1_config();
  const ActionGrids grids = ActionGrids::regular(0.25, 0.25, 0.25, 1.0);
  const TypePriors priors = TypePriors::uniform(11);

  SUBCASE("singleton lists reduce to a single optimal-policy row") {
    const auto rows = weight_sweep(config, priors, {0.4}, {0.6}, grids, UniversityType::High);
    REQUIRE(rows.size() == 1);
    const OptimalPolicyResult direct =
        optimal_policy(config, priors, WelfareWeights{0.4, 0.6}, grids, UniversityType::High);
    CHECK(rows[0].policy == direct.policy);
    CHECK(rows[0].value.welfare == direct.value.welfare);
  }
  SUBCASE("duplicated weight pairs give identical rows") {
    const auto rows = weight_sweep(config, priors, {0.5, 0.5}, {0.5}, grids, UniversityType::High);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].policy == rows[1].policy);
    CHECK(rows[0].value.welfare == rows[1].value.welfare);
  }
  SUBCASE("3x3 sweep is ordered lambda-major and matches the oracle") {
    const std::vector<double> levels{0.0, 0.5, 1.0};
    const auto rows = weight_sweep(config, priors, levels, levels, grids, UniversityType::High);
    REQUIRE(rows.size() == 9);
    std::size_t index = 0;
    for (double lambda : levels) {
      for (double eta : levels) {
        CHECK(rows[index].lambda == lambda);
        CHECK(rows[index].eta == eta);
        const oracle::WelfarePoint reference = oracle::optimal(
            config, priors, WelfareWeights{lambda, eta}, grids, UniversityType::High);
        CHECK(rows[index].policy == reference.policy);
        CHECK(rows[index].value.welfare == reference.welfare);
        ++index;
      }
    }
  }
  SUBCASE("empty weight lists are rejected") {
    CHECK_THROWS_AS(weight_sweep(config, priors, {}, {0.5}, grids, UniversityType::High),
                    ValidationError);
  }
}
