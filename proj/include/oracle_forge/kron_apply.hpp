#pragma once

// Block multiplication by operators of the form 1_m (x) A_n (x) 1_k.
//
// With B of dimension m*n*k viewed as m x m blocks of size n*k, the operator
// is block diagonal with blocks A (x) 1_k, so block (i,j) of the result is
// (A (x) 1_k) * B(i,j). Viewing B(i,j) as n x n sub-blocks of size k,
//
//   D(p,q) = sum_l a_pl * B(i,j)(l,q)
//
// Each scalar-times-block costs k^2 multiplications, giving m^2 n^3 k^2 in
// total against (mnk)^3 for the dense product.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oracle_forge/linalg.hpp"

namespace oracle_forge {

struct StructuredOperator {
  std::size_t m = 1;  // leading identity dimension
  Matrix gate = Matrix::identity(1);
  std::size_t k = 1;  // trailing identity dimension

  std::size_t dim() const noexcept { return m * gate.dim() * k; }
};

struct ApplyOptions {
  /// Skip a_pl == 0 terms. Off by default so multiplication counts are exact.
  bool skip_zeros = false;
};

inline void validate(const StructuredOperator& op) {
  if (!is_power_of_two(op.m) || !is_power_of_two(op.gate.dim()) || !is_power_of_two(op.k))
    throw DimensionError("structured operator dimensions must be powers of two");
}

/// Dense realization kron(1_m, kron(A, 1_k)); the reference path.
inline Matrix embed_dense(const StructuredOperator& op, std::size_t max_dim = kDefaultMaxDim) {
  validate(op);
  return kron(Matrix::identity(op.m), kron(op.gate, Matrix::identity(op.k), max_dim), max_dim);
}

inline Matrix apply_structured(const StructuredOperator& op, const Matrix& b,
                               MulCounter* counter = nullptr, ApplyOptions opts = {}) {
  validate(op);
  const std::size_t m = op.m, n = op.gate.dim(), k = op.k;
  const std::size_t dim = m * n * k;
  if (b.dim() != dim)
    throw DimensionError("apply_structured: operand dim " + std::to_string(b.dim()) +
                         " != m*n*k = " + std::to_string(dim));

  const std::size_t nk = n * k;
  const std::uint64_t block_cost = static_cast<std::uint64_t>(k) * k;
  std::uint64_t mults = 0;
  std::vector<Complex> out(dim * dim);

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t row0 = i * nk, col0 = j * nk;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          for (std::size_t l = 0; l < n; ++l) {
            const Complex a = op.gate(p, l);
            if (opts.skip_zeros && a == Complex{}) continue;
            mults += block_cost;
            // D(p,q) += a * B(i,j)(l,q), a k x k block update.
            for (std::size_t r = 0; r < k; ++r) {
              Complex* dst = &out[(row0 + p * k + r) * dim + col0 + q * k];
              for (std::size_t c = 0; c < k; ++c) dst[c] += a * b(row0 + l * k + r, col0 + q * k + c);
            }
          }
        }
      }
    }
  }
  if (counter) counter->add(mults);
  return Matrix(dim, std::move(out));
}

/// Closed-form counts for the two paths.
inline std::uint64_t structured_mul_count(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  return m * m * n * n * n * k * k;
}
inline std::uint64_t naive_mul_count(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  const std::uint64_t d = m * n * k;
  return d * d * d;
}

/// Whether the block kernel beats an O(d^2.376) general multiply:
/// log2 m + log2 k > 1.66 log2 n.
inline bool speedup_predicted(std::size_t m, std::size_t n, std::size_t k) {
  const double lm = log2_exact(m), ln = log2_exact(n), lk = log2_exact(k);
  return lm + lk > 1.66 * ln;
}

}  // namespace oracle_forge
