#pragma once

// Dense complex square matrices: the carrier for gates, goal unitaries and
// circuit products.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle_forge {

using Complex = std::complex<double>;

/// Default cap on matrix dimension (2^10). Anything above that is a
/// configuration error for this library, not a workload.
inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 10;

/// Number of scalar complex multiplications performed by a kernel.
/// Owned per call; parallel callers supply distinct counters.
struct MulCounter {
  std::uint64_t count = 0;
  void add(std::uint64_t n) noexcept { count += n; }
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable n x n complex matrix, row-major.
class Matrix {
 public:
  Matrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), data_(std::move(entries)) {
    if (dim_ == 0) throw DimensionError("matrix dimension must be >= 1");
    if (data_.size() != dim_ * dim_)
      throw DimensionError("matrix of dim " + std::to_string(dim_) + " needs " +
                           std::to_string(dim_ * dim_) + " entries, got " +
                           std::to_string(data_.size()));
    for (const Complex& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("matrix entries must be finite");
  }

  /// Row-major nested initializer, for literals in tests and gate tables.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : Matrix(rows.size(), flatten(rows)) {}

  static Matrix identity(std::size_t dim) {
    std::vector<Complex> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
    return Matrix(dim, std::move(e));
  }

  static Matrix zero(std::size_t dim) { return Matrix(dim, std::vector<Complex>(dim * dim)); }

  static Matrix diagonal(std::span<const Complex> diag) {
    const std::size_t dim = diag.size();
    std::vector<Complex> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = diag[i];
    return Matrix(dim, std::move(e));
  }
  static Matrix diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
  }

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static std::vector<Complex> flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<Complex> out;
    out.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw DimensionError("matrix literal must be square");
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  std::size_t dim_;
  std::vector<Complex> data_;
};

inline bool is_power_of_two(std::size_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned log2_exact(std::size_t x) {
  if (!is_power_of_two(x)) throw DimensionError(std::to_string(x) + " is not a power of two");
  unsigned r = 0;
  while (x > 1) {
    x >>= 1;
    ++r;
  }
  return r;
}

/// Schoolbook product. Counts exactly dim^3 scalar multiplications.
inline Matrix mat_mul_naive(const Matrix& a, const Matrix& b, MulCounter* counter = nullptr) {
  if (a.dim() != b.dim())
    throw DimensionError("mat_mul_naive: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const Complex ail = a(i, l);
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += ail * b(l, j);
    }
  if (counter) counter->add(static_cast<std::uint64_t>(n) * n * n);
  return Matrix(n, std::move(out));
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul_naive(a, b); }

inline Matrix scale(const Matrix& a, Complex s) {
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  for (Complex& z : out) z *= s;
  return Matrix(a.dim(), std::move(out));
}

inline Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_dim = kDefaultMaxDim) {
  const std::size_t na = a.dim(), nb = b.dim();
  if (na > max_dim / nb)
    throw DimensionError("kron: result dimension " + std::to_string(na) + "*" +
                         std::to_string(nb) + " exceeds maximum " + std::to_string(max_dim));
  const std::size_t n = na * nb;
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t p = 0; p < nb; ++p)
        for (std::size_t q = 0; q < nb; ++q) out[(i * nb + p) * n + (j * nb + q)] = aij * b(p, q);
    }
  return Matrix(n, std::move(out));
}

inline Matrix adjoint(const Matrix& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a(i, j));
  return Matrix(n, std::move(out));
}

inline Complex trace(const Matrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

/// max_{ij} |a_ij - b_ij|; dimensions must agree.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  auto ea = a.entries(), eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

/// max entrywise |a^dagger a - I|.
inline double unitarity_deviation(const Matrix& a) {
  return max_abs_diff(mat_mul_naive(adjoint(a), a), Matrix::identity(a.dim()));
}

inline bool is_unitary(const Matrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_unitary: tol must be positive");
  return unitarity_deviation(a) <= tol;
}

}  // namespace oracle_forge
