#include <gtest/gtest.h>

#include "oracle_forge/gates.hpp"
#include "oracle_forge/kron_apply.hpp"
#include "test_util.hpp"

using namespace oracle_forge;
using oracle_forge::testing::random_matrix;
using oracle_forge::testing::test_rng;

TEST(ApplyStructured, DegenerateIdentities) {
  const Matrix h = gate_matrix(GateKind::H);
  EXPECT_LE(max_abs_diff(apply_structured({1, h, 1}, Matrix::identity(2)), h), 1e-15);
}

TEST(ApplyStructured, BlockDiagonalWithUnitTrailing) {
  const Matrix x{{0, 1}, {1, 0}};
  const Matrix expected{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_EQ(apply_structured({2, x, 1}, Matrix::identity(4)), expected);
}

TEST(ApplyStructured, MatchesDensePathOnRandomOperand) {
  auto rng = test_rng(10);
  const StructuredOperator op{2, random_matrix(2, rng), 2};
  const Matrix b = random_matrix(8, rng);
  EXPECT_LE(max_abs_diff(apply_structured(op, b), mat_mul_naive(embed_dense(op), b)), 1e-12);
}

TEST(ApplyStructured, DimensionMismatchThrows) {
  EXPECT_THROW(apply_structured({2, Matrix::identity(2), 2}, Matrix::identity(4)), DimensionError);
  EXPECT_THROW(apply_structured({3, Matrix::identity(2), 1}, Matrix::identity(6)), DimensionError);
}

TEST(ApplyStructured, RandomEquivalenceAndExactCounts) {
  auto rng = test_rng(11);
  const std::size_t dims[] = {1, 2, 4, 8};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dims[rng() % 4], n = dims[rng() % 4], k = dims[rng() % 4];
    const StructuredOperator op{m, random_matrix(n, rng), k};
    const Matrix b = random_matrix(m * n * k, rng);
    MulCounter fast, slow;
    const Matrix got = apply_structured(op, b, &fast);
    const Matrix want = mat_mul_naive(embed_dense(op), b, &slow);
    ASSERT_LE(max_abs_diff(got, want), 1e-12) << "m=" << m << " n=" << n << " k=" << k;
    EXPECT_EQ(fast.count, m * m * n * n * n * k * k);
    EXPECT_EQ(slow.count, (m * n * k) * (m * n * k) * (m * n * k));
  }
}

TEST(ApplyStructured, ZeroSkippingChangesCountNotResult) {
  const StructuredOperator op{2, gate_matrix(GateKind::CnotDown), 2};
  auto rng = test_rng(12);
  const Matrix b = random_matrix(16, rng);
  MulCounter exact, skipped;
  const Matrix a1 = apply_structured(op, b, &exact);
  const Matrix a2 = apply_structured(op, b, &skipped, {.skip_zeros = true});
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(exact.count, structured_mul_count(2, 4, 2));
  // CNOT has 4 nonzeros out of 16.
  EXPECT_EQ(skipped.count, exact.count / 4);
}

TEST(ApplyStructured, CountRatioAtEightTwoEight) {
  auto rng = test_rng(13);
  const StructuredOperator op{8, random_matrix(2, rng), 8};
  const Matrix b = random_matrix(128, rng);
  MulCounter fast, slow;
  apply_structured(op, b, &fast);
  mat_mul_naive(embed_dense(op), b, &slow);
  EXPECT_EQ(fast.count, 32'768u);
  EXPECT_EQ(slow.count, 2'097'152u);
  EXPECT_EQ(slow.count / fast.count, 64u);
}

TEST(EmbedDense, Examples) {
  const Matrix h = gate_matrix(GateKind::H);
  const Matrix cnot = gate_matrix(GateKind::CnotDown);
  EXPECT_EQ(embed_dense({1, h, 1}), h);
  EXPECT_EQ(embed_dense({1, cnot, 2}), kron(cnot, Matrix::identity(2)));
  EXPECT_EQ(embed_dense({2, h, 2}), kron(Matrix::identity(2), kron(h, Matrix::identity(2))));
  EXPECT_THROW(embed_dense({64, cnot, 8}), DimensionError);
}

TEST(SpeedupPredicted, Examples) {
  EXPECT_TRUE(speedup_predicted(8, 2, 8));
  EXPECT_FALSE(speedup_predicted(1, 4, 1));
  EXPECT_FALSE(speedup_predicted(2, 2, 1));
  EXPECT_TRUE(speedup_predicted(2, 1, 1));
  EXPECT_THROW(speedup_predicted(3, 2, 1), DimensionError);
}
