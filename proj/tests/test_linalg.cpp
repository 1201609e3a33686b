#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle_forge/gates.hpp"
#include "oracle_forge/linalg.hpp"
#include "test_util.hpp"

using namespace oracle_forge;
using oracle_forge::testing::random_matrix;
using oracle_forge::testing::test_rng;

namespace {

const Complex I{0.0, 1.0};

Matrix hadamard() { return gate_matrix(GateKind::H); }

}  // namespace

TEST(Matrix, RejectsBadShapes) {
  EXPECT_THROW(Matrix(0, {}), DimensionError);
  EXPECT_THROW(Matrix(2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW((Matrix{{1, 2}, {3}}), DimensionError);
  EXPECT_THROW(Matrix(1, {Complex{NAN, 0}}), std::invalid_argument);
  EXPECT_THROW(Matrix(1, {Complex{0, INFINITY}}), std::invalid_argument);
}

TEST(MatMulNaive, IdentityAndHadamard) {
  EXPECT_EQ(mat_mul_naive(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(2));
  EXPECT_LE(max_abs_diff(mat_mul_naive(hadamard(), hadamard()), Matrix::identity(2)), 1e-14);
}

TEST(MatMulNaive, DimensionMismatchThrows) {
  EXPECT_THROW(mat_mul_naive(Matrix::identity(2), Matrix::identity(4)), DimensionError);
}

TEST(MatMulNaive, MatchesLongDoubleSchoolbook) {
  auto rng = test_rng(1);
  const Matrix a = random_matrix(8, rng), b = random_matrix(8, rng);
  const Matrix c = mat_mul_naive(a, b);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      long double re = 0, im = 0;
      for (std::size_t l = 0; l < 8; ++l) {
        const long double ar = a(i, l).real(), ai = a(i, l).imag();
        const long double br = b(l, j).real(), bi = b(l, j).imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
      }
      EXPECT_NEAR(c(i, j).real(), static_cast<double>(re), 1e-14);
      EXPECT_NEAR(c(i, j).imag(), static_cast<double>(im), 1e-14);
    }
}

TEST(MatMulNaive, CountsCubeOfDim) {
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
    MulCounter counter;
    auto rng = test_rng(n);
    mat_mul_naive(random_matrix(n, rng), random_matrix(n, rng), &counter);
    EXPECT_EQ(counter.count, n * n * n);
  }
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(4));
  EXPECT_EQ(kron(Matrix::diagonal({1.0, I}), Matrix::identity(2)), Matrix::diagonal({1.0, 1.0, I, I}));

  // (H (x) H) e0 is the first column: all entries 1/2.
  const Matrix hh = kron(hadamard(), hadamard());
  for (std::size_t r = 0; r < 4; ++r) EXPECT_NEAR(std::abs(hh(r, 0) - Complex{0.5, 0}), 0.0, 1e-15);
}

TEST(Kron, BlockStructure) {
  auto rng = test_rng(2);
  const Matrix a = random_matrix(2, rng), b = random_matrix(4, rng);
  const Matrix ab = kron(a, b);
  ASSERT_EQ(ab.dim(), 8u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(ab(i * 4 + p, j * 4 + q), a(i, j) * b(p, q));
}

TEST(Kron, DimensionCap) {
  EXPECT_THROW(kron(Matrix::identity(64), Matrix::identity(32)), DimensionError);
  EXPECT_NO_THROW(kron(Matrix::identity(32), Matrix::identity(32)));
  EXPECT_THROW(kron(Matrix::identity(4), Matrix::identity(4), 8), DimensionError);
}

TEST(Kron, AssociativeOnRandomInputs) {
  auto rng = test_rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(2, rng), b = random_matrix(2, rng), c = random_matrix(4, rng);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(Adjoint, Examples) {
  EXPECT_EQ(adjoint(Matrix::identity(2)), Matrix::identity(2));
  EXPECT_EQ(adjoint(Matrix::diagonal({1.0, I})), Matrix::diagonal({1.0, -I}));
  auto rng = test_rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = random_matrix(4, rng);
    EXPECT_EQ(adjoint(adjoint(m)), m);
  }
}

TEST(Trace, Examples) {
  EXPECT_EQ(trace(Matrix::identity(4)), Complex(4, 0));
  EXPECT_EQ(trace(gate_matrix(GateKind::CnotDown)), Complex(2, 0));

  // CNOT x (H (x) I) has diagonal (1/sqrt2, 1/sqrt2, 0, 0).
  const Matrix g = gate_matrix(GateKind::CnotDown) * kron(hadamard(), Matrix::identity(2));
  EXPECT_NEAR(trace(g).real(), std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(trace(g).imag(), 0.0, 1e-15);
}

TEST(Trace, CyclicOnRandomPairs) {
  auto rng = test_rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = std::size_t{1} << (trial % 4);
    const Matrix a = random_matrix(n, rng), b = random_matrix(n, rng);
    EXPECT_LE(std::abs(trace(a * b) - trace(b * a)), 1e-10);
  }
}

TEST(IsUnitary, Examples) {
  EXPECT_TRUE(is_unitary(Matrix::identity(8), 1e-10));
  EXPECT_FALSE(is_unitary(Matrix::diagonal({1.0, 2.0}), 1e-10));
  EXPECT_TRUE(is_unitary(hadamard(), 1e-14));
  EXPECT_THROW(is_unitary(Matrix::identity(2), 0.0), std::invalid_argument);
}
