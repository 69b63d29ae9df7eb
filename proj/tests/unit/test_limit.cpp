#include <gtest/gtest.h>

#include "generators.hpp"
#include "imc/imc.hpp"
#include "models.hpp"

namespace imc {
namespace {

using testing::Rng;

const Matrix kWalk{{0.5, 0.5}, {0.5, 0.5}};
const Matrix kCycle{{0.0, 1.0}, {1.0, 0.0}};

TEST(Invariant, VacuousConvergesInOneStep) {
  Gamble h(testing::three_states(), {0.2, 1.5, -0.4});
  auto r = invariant_upper_expectation(UpperTransitionOperator::vacuous(testing::three_states()), h);
  EXPECT_EQ(r.status, ConvergenceStatus::converged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.limit_value, 1.5);
  ASSERT_EQ(r.envelope_trace.size(), 2u);
  EXPECT_EQ(r.envelope_trace[0].min, -0.4);
}

TEST(Invariant, ContaminatedCycleIsVacuousInTheLimit) {
  for (double eps : {0.05, 0.3, 0.9}) {
    auto op = UpperTransitionOperator::contaminated(testing::two_states(), kCycle, eps);
    auto r = invariant_upper_expectation(op, Gamble(testing::two_states(), {1.0, 0.0}));
    EXPECT_EQ(r.status, ConvergenceStatus::converged);
    EXPECT_NEAR(r.limit_value, 1.0, 1e-9);
  }
}

TEST(Invariant, ContaminatedWalk) {
  auto op = UpperTransitionOperator::contaminated(testing::two_states(), kWalk, 0.1);
  auto r = invariant_upper_expectation(op, Gamble(testing::two_states(), {1.0, 0.0}));
  EXPECT_EQ(r.status, ConvergenceStatus::converged);
  EXPECT_NEAR(r.limit_value, 0.55, 1e-9);
}

TEST(Invariant, PreciseCycleOscillates) {
  auto r = invariant_upper_expectation(testing::two_cycle(), Gamble(testing::two_states(), {1.0, 0.0}));
  EXPECT_EQ(r.status, ConvergenceStatus::oscillation_detected);
  EXPECT_EQ(r.iterations, 8u);
  auto capped = invariant_upper_expectation(testing::two_cycle(), Gamble(testing::two_states(), {1.0, 0.0}),
                                            1e-9, 3);
  EXPECT_EQ(capped.status, ConvergenceStatus::max_iter_exceeded);
  EXPECT_EQ(to_string(ConvergenceStatus::oscillation_detected), "oscillation_detected");
}

TEST(Invariant, RejectsNonStationaryAndBadTolerance) {
  TimeIndexedOperators ops(std::vector<UpperTransitionOperator>{testing::two_cycle(),
                                                                UpperTransitionOperator::vacuous(testing::two_states())});
  EXPECT_THROW(invariant_upper_expectation(ops, Gamble::zero(testing::two_states())), ArgumentError);
  EXPECT_THROW(invariant_upper_expectation(testing::two_cycle(), Gamble::zero(testing::two_states()), 0.0),
               ArgumentError);
}

TEST(Invariant, EnvelopeMonotoneAndConvergedWhenRegularlyAbsorbing) {
  Rng rng(89);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto space = StateSpace::numbered(testing::pick(rng, 1, 4));
    auto op = testing::random_mixed_operator(space, rng);
    auto h = testing::random_gamble(space, rng);
    auto r = invariant_upper_expectation(op, h);
    for (std::size_t i = 1; i < r.envelope_trace.size(); ++i) {
      EXPECT_GE(r.envelope_trace[i].min, r.envelope_trace[i - 1].min - 1e-12);
      EXPECT_LE(r.envelope_trace[i].max, r.envelope_trace[i - 1].max + 1e-12);
    }
    if (!regularly_absorbing(op).regularly_absorbing) continue;
    ++checked;
    ASSERT_EQ(r.status, ConvergenceStatus::converged) << "trial " << trial;
    const auto& last = r.envelope_trace.back();
    EXPECT_LT(last.max - last.min, 1e-9);
    auto shifted = invariant_upper_expectation(op, apply(op, h));
    EXPECT_LT(std::abs(shifted.limit_value - r.limit_value), 2e-9);
  }
  EXPECT_GT(checked, 50);
}

TEST(Invariant, RegularPreciseChainGivesStationaryExpectation) {
  Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = testing::pick(rng, 2, 5);
    auto space = StateSpace::numbered(n);
    Matrix t = testing::random_stochastic(n, rng);
    Matrix p = t;
    for (int k = 0; k < 12; ++k) p = p * p;  // T^4096
    auto h = testing::random_gamble(space, rng);
    double stationary = 0.0;
    for (std::size_t y = 0; y < n; ++y) stationary += p(0, y) * h[y];
    auto r = invariant_upper_expectation(UpperTransitionOperator::from_matrix(space, t), h);
    ASSERT_EQ(r.status, ConvergenceStatus::converged);
    EXPECT_NEAR(r.limit_value, stationary, 1e-9);
  }
}

TEST(Marginals, TwoStateWalkBoundsAndInitialIndependence) {
  ImpreciseMarkovChainModel model(testing::walk_initial(), TimeIndexedOperators(testing::contaminated_walk()), 2);
  auto a = Gamble::indicator(testing::two_states(), 0);
  auto seq = marginal_sequence(model, a, 200);
  EXPECT_DOUBLE_EQ(seq[0].lower, 0.6);
  EXPECT_DOUBLE_EQ(seq[0].upper, 0.9);
  auto other = marginal_sequence(model.with_initial(testing::walk_other_initial()), a, 200);
  EXPECT_NEAR(seq.back().upper, other.back().upper, 1e-8);
  EXPECT_NEAR(seq.back().lower, other.back().lower, 1e-8);
  auto up = invariant_upper_expectation(testing::contaminated_walk(), a);
  auto low = invariant_upper_expectation(testing::contaminated_walk(), -a);
  EXPECT_NEAR(seq.back().upper, up.limit_value, 1e-8);
  EXPECT_NEAR(seq.back().lower, -low.limit_value, 1e-8);
  EXPECT_THROW(marginal_sequence(model, a, 0), ArgumentError);
}

TEST(Marginals, PreciseComparisonChainTendsToHalf) {
  const auto& s = testing::two_states();
  ImpreciseMarkovChainModel model(
      UncertaintyModel::precise(MassFunction(s, {0.9, 0.1})),
      TimeIndexedOperators(UpperTransitionOperator::from_matrix(s, Matrix{{0.135, 0.865}, {0.865, 0.135}})), 2);
  auto seq = marginal_sequence(model, Gamble::indicator(s, 0), 500);
  EXPECT_NEAR(seq.back().upper, 0.5, 1e-9);
  EXPECT_NEAR(seq.back().lower, 0.5, 1e-9);
}

TEST(Marginals, NonStationaryMatchesJoint) {
  Rng rng(101);
  auto space = StateSpace::numbered(3);
  std::vector<UpperTransitionOperator> steps;
  for (int k = 0; k < 3; ++k) steps.push_back(testing::random_mixed_operator(space, rng));
  ImpreciseMarkovChainModel model(UncertaintyModel::vacuous(space), TimeIndexedOperators(steps), 4);
  auto h = testing::random_gamble(space, rng);
  auto seq = marginal_sequence(model, h, 4);
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_NEAR(seq[n - 1].upper, joint_upper(model, PathMap::at_time(h, 4, n)), 1e-12);
    EXPECT_NEAR(seq[n - 1].lower, joint_lower(model, PathMap::at_time(h, 4, n)), 1e-12);
  }
  EXPECT_THROW(marginal_sequence(model, h, 5), ArgumentError);
}

TEST(Contamination, MarginalClosedFormMatchesIteration) {
  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = testing::pick(rng, 2, 4);
    auto space = StateSpace::numbered(n);
    Matrix t = testing::random_stochastic(n, rng, 0.3);
    const double eps = testing::uniform(rng, 0.01, 0.99);
    auto precise = UpperTransitionOperator::from_matrix(space, t);
    auto initial = testing::random_model(space, testing::random_kind(rng), rng);
    ImpreciseMarkovChainModel chain(initial, TimeIndexedOperators(UpperTransitionOperator::contaminated(space, t, eps)), 2);
    auto h = testing::random_gamble(space, rng);
    auto seq = marginal_sequence(chain, h, 12);
    for (std::size_t k = 1; k < 12; ++k)
      EXPECT_NEAR(contamination_marginal(precise, eps, initial, h, k), seq[k].upper, 1e-10);
  }
}

TEST(Contamination, MarginalOneStepAndNearVacuous) {
  const auto& s = testing::two_states();
  Matrix t{{0.15, 0.85}, {0.85, 0.15}};
  auto precise = UpperTransitionOperator::from_matrix(s, t);
  auto initial = testing::walk_initial();
  Gamble h(s, {0.3, -1.2});
  const double eps = 0.1;
  EXPECT_NEAR(contamination_marginal(precise, eps, initial, h, 1),
              (1 - eps) * upper(initial, apply(precise, h)) + eps * h.max(), 1e-15);
  EXPECT_NEAR(contamination_marginal(precise, 1.0 - 1e-12, initial, h, 7), h.max(), 1e-9);
  EXPECT_THROW(contamination_marginal(precise, 0.0, initial, h, 1), ArgumentError);
  EXPECT_THROW(contamination_marginal(precise, 1.0, initial, h, 1), ArgumentError);
  EXPECT_THROW(contamination_marginal(precise, 0.5, initial, h, 0), ArgumentError);
  EXPECT_THROW(contamination_marginal(testing::contaminated_walk(), 0.5, initial, h, 1), NotPreciseError);
}

TEST(Contamination, LimitWorkedCases) {
  const auto& s = testing::two_states();
  Rng rng(107);
  for (double eps : {0.05, 0.1, 0.3}) {
    auto h = testing::random_gamble(s, rng);
    EXPECT_NEAR(contamination_limit(UpperTransitionOperator::from_matrix(s, kCycle), eps, h), h.max(), 1e-12);
    EXPECT_NEAR(contamination_limit(UpperTransitionOperator::from_matrix(s, kWalk), eps, h),
                eps * h.max() + (1 - eps) * 0.5 * (h[0] + h[1]), 1e-12);
  }
  EXPECT_NEAR(contamination_limit(UpperTransitionOperator::from_matrix(s, Matrix::identity(2)), 0.5,
                                  Gamble(s, {1.0, 0.0})),
              1.0, 1e-12);
  EXPECT_THROW(contamination_limit(UpperTransitionOperator::from_matrix(s, kWalk), 1.0, Gamble(s, {1.0, 0.0})),
               ArgumentError);
}

TEST(Contamination, LimitMatchesIteration) {
  Rng rng(109);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = testing::pick(rng, 2, 4);
    auto space = StateSpace::numbered(n);
    Matrix t = testing::random_stochastic(n, rng, 0.3);
    const double eps = testing::uniform(rng, 0.05, 0.95);
    auto h = testing::random_gamble(space, rng);
    auto r = invariant_upper_expectation(UpperTransitionOperator::contaminated(space, t, eps), h);
    ASSERT_EQ(r.status, ConvergenceStatus::converged);
    EXPECT_NEAR(contamination_limit(UpperTransitionOperator::from_matrix(space, t), eps, h), r.limit_value, 1e-8);
  }
}

}  // namespace
}  // namespace imc
