#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle_forge/evaluator.hpp"
#include "oracle_forge/targets.hpp"
#include "test_util.hpp"

using namespace oracle_forge;

namespace {

const GateSet kStd = GateSet::standard();

// Dense oracle for the entangle2 goal: CNOT x (H (x) I).
Matrix bell_unitary() {
  return mat_mul_naive(gate_matrix(GateKind::CnotDown), kron(gate_matrix(GateKind::H), Matrix::identity(2)));
}

}  // namespace

TEST(CircuitUnitary, Examples) {
  EXPECT_EQ(circuit_unitary({3, {Placement::wire(), Placement::wire()}}, kStd), Matrix::identity(8));
  EXPECT_LE(max_abs_diff(circuit_unitary({1, {Placement::single(2, 0)}}, kStd), gate_matrix(GateKind::H)), 1e-15);
  const Circuit bell{2, {Placement::single(2, 0), Placement::down(0, 0)}};
  EXPECT_LE(max_abs_diff(circuit_unitary(bell, kStd), bell_unitary()), 1e-15);
}

TEST(CircuitUnitary, LowerQubitPlacementEmbedsAsTrailingFactor) {
  // H on qubit 1 of 2 is I (x) H.
  const Circuit c{2, {Placement::single(2, 1)}};
  EXPECT_LE(max_abs_diff(circuit_unitary(c, kStd), kron(Matrix::identity(2), gate_matrix(GateKind::H))), 1e-15);
}

TEST(CircuitUnitary, StructuredMatchesDenseOnRandomCircuits) {
  auto rng = oracle_forge::testing::test_rng(30);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + rng() % 4;
    const Circuit c = oracle_forge::testing::random_circuit(m, 1 + rng() % 8, kStd, rng);
    MulCounter fast, slow;
    const Matrix a = circuit_unitary(c, kStd, &fast);
    const Matrix b = circuit_unitary_dense(c, kStd, &slow);
    ASSERT_LE(max_abs_diff(a, b), 1e-12);
    EXPECT_LE(fast.count, slow.count);
  }
}

TEST(CircuitUnitary, RandomChromosomesGiveUnitaries) {
  auto rng = oracle_forge::testing::test_rng(31);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 1 + rng() % 3, g = 1 + rng() % 8;
    const auto layout = CodecLayout::make(m, g, kStd);
    const Circuit c = decode(oracle_forge::testing::random_chromosome(layout.chromosome_bits(), rng), layout, kStd);
    ASSERT_TRUE(is_unitary(circuit_unitary(c, kStd), 1e-10));
  }
}

TEST(Correctness, Examples) {
  const GoalSpec goal = builtin_goal("entangle2");
  EXPECT_NEAR(correctness(goal.goal, goal), 1.0, 1e-12);
  // |tr(G^dagger I)| / 4 = |tr G| / 4, and tr G = sqrt2 from the dense oracle.
  const double expected = std::abs(trace(bell_unitary())) / 4.0;
  EXPECT_NEAR(expected, std::numbers::sqrt2 / 4, 1e-15);
  EXPECT_NEAR(correctness(Matrix::identity(4), goal), expected, 1e-12);
  EXPECT_NEAR(correctness(scale(goal.goal, std::polar(1.0, std::numbers::pi / 4)), goal), 1.0, 1e-12);
  EXPECT_THROW(correctness(Matrix::identity(8), goal), DimensionError);
}

TEST(Correctness, BoundedOnRandomUnitaries) {
  auto rng = oracle_forge::testing::test_rng(32);
  const GoalSpec goal = builtin_goal("entangle3");
  for (int t = 0; t < 200; ++t) {
    const double c = correctness(circuit_unitary(oracle_forge::testing::random_circuit(3, 8, kStd, rng), kStd), goal);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-12);
  }
}

TEST(Allcost, Examples) {
  EXPECT_EQ(allcost({2, {Placement::wire(), Placement::wire()}}, kStd), 0u);
  EXPECT_EQ(allcost({2, {Placement::single(2, 0), Placement::down(0, 0)}}, kStd), 3u);
  EXPECT_EQ(allcost(reference_circuit("swap"), kStd), 6u);
}

TEST(Fitness, Examples) {
  EXPECT_DOUBLE_EQ(fitness(3, 1.0, {.satcost = 6, .award = 1, .punish = 20}), -3.0);
  EXPECT_NEAR(fitness(0, std::numbers::sqrt2 / 4, {.satcost = 6, .award = 1, .punish = 1}),
              -6.0 + (1.0 - std::numbers::sqrt2 / 4), 1e-15);
  EXPECT_NEAR(fitness(0, std::numbers::sqrt2 / 4, {.satcost = 6, .award = 1, .punish = 1}), -5.35355, 1e-5);
  EXPECT_DOUBLE_EQ(fitness(8, 0.5, {.satcost = 8, .award = 1, .punish = 100}), 50.0);
}

TEST(Fitness, MonotoneInPunish) {
  for (double corr : {0.0, 0.3, 0.99}) {
    double prev = fitness(4, corr, {.satcost = 6, .punish = 0.5});
    for (double p : {1.0, 5.0, 20.0, 100.0}) {
      const double f = fitness(4, corr, {.satcost = 6, .punish = p});
      EXPECT_GT(f, prev);
      prev = f;
    }
  }
  for (double p : {0.5, 1.0, 100.0}) EXPECT_DOUBLE_EQ(fitness(4, 1.0, {.satcost = 6, .punish = p}), -2.0);
}

// Closed form: the empty circuit (-6 + punish (1 - sqrt2/4)) beats the
// optimal Bell circuit (-3) iff punish < 3 / (1 - sqrt2/4).
TEST(Fitness, ArgminShiftForEntangle2) {
  const GoalSpec goal = builtin_goal("entangle2");
  const Circuit empty{2, {}};
  const Circuit optimal = reference_circuit("entangle2");
  const double threshold = 3.0 / (1.0 - std::numbers::sqrt2 / 4);
  EXPECT_NEAR(threshold, 4.6408, 1e-4);
  for (double punish : {0.5, 1.0, 2.0, 4.0, 4.6, 4.7, 5.0, 20.0, 100.0}) {
    const FitnessParams p{.satcost = 6, .award = 1, .punish = punish};
    const double fe = evaluate(empty, goal, kStd, {}, p).fitness;
    const double fo = evaluate(optimal, goal, kStd, {}, p).fitness;
    EXPECT_EQ(fe < fo, punish < threshold) << "punish=" << punish;
  }
}

TEST(IsSuccess, Examples) {
  const FitnessParams p4{.satcost = 4};
  EXPECT_TRUE(is_success(1.0, 3, p4));
  EXPECT_FALSE(is_success(0.9999, 3, p4));
  EXPECT_FALSE(is_success(1.0, 7, FitnessParams{.satcost = 6}));
  EXPECT_TRUE(is_success(1.0 - 5e-7, 4, p4));
}

TEST(FitnessParams, Validation) {
  EXPECT_THROW((FitnessParams{.satcost = -1}.validate()), std::invalid_argument);
  EXPECT_THROW((FitnessParams{.award = 0, .punish = 0}.validate()), std::invalid_argument);
  EXPECT_THROW((FitnessParams{.punish = -1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(FitnessParams{}.validate());
}

TEST(GoalSpec, Validation) {
  EXPECT_THROW(GoalSpec(2, Matrix::identity(2)), DimensionError);
  EXPECT_THROW(GoalSpec(1, Matrix::diagonal({1.0, 2.0})), std::invalid_argument);
}
