#pragma once

// Circuit evaluation: the realized unitary, trace correctness, cost, and the
// reward/punish fitness (lower is better).

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "oracle_forge/codec.hpp"
#include "oracle_forge/gates.hpp"
#include "oracle_forge/kron_apply.hpp"
#include "oracle_forge/linalg.hpp"

namespace oracle_forge {

inline constexpr double kGoalUnitarityTolerance = 1e-10;

struct GoalSpec {
  std::size_t qubits = 1;
  Matrix goal = Matrix::identity(2);
  std::optional<unsigned> optimal_cost;

  GoalSpec(std::size_t m, Matrix g, std::optional<unsigned> optimal = std::nullopt,
           double tol = kGoalUnitarityTolerance)
      : qubits(m), goal(std::move(g)), optimal_cost(optimal) {
    if (m == 0 || m >= 11 || goal.dim() != (std::size_t{1} << m))
      throw DimensionError("goal matrix of dim " + std::to_string(goal.dim()) +
                           " does not match 2^" + std::to_string(m));
    const double dev = unitarity_deviation(goal);
    if (dev > tol)
      throw std::invalid_argument("goal matrix is not unitary (max deviation " +
                                  std::to_string(dev) + ")");
  }
};

struct FitnessParams {
  double satcost = 0.0;
  double award = 1.0;
  double punish = 20.0;
  double eps = 1e-6;

  void validate() const {
    if (satcost < 0) throw std::invalid_argument("satcost must be >= 0");
    if (award < 0 || punish < 0) throw std::invalid_argument("award and punish must be >= 0");
    if (award == 0 && punish == 0) throw std::invalid_argument("award and punish cannot both be 0");
    if (!(eps > 0)) throw std::invalid_argument("eps must be > 0");
  }
};

struct EvalResult {
  Matrix lambda = Matrix::identity(1);
  double correctness = 0.0;
  unsigned allcost = 0;
  double fitness = 0.0;
};

/// Embedding of a non-wire placement on m qubits.
inline StructuredOperator embed(const Placement& p, std::size_t m, const GateSet& gs) {
  const std::size_t below = m - p.top - p.span();
  return {std::size_t{1} << p.top, gs.matrix_of(p), std::size_t{1} << below};
}

/// lambda(C) = E_g * ... * E_1, each factor applied to the running product
/// with the block kernel. Wire steps contribute nothing.
inline Matrix circuit_unitary(const Circuit& c, const GateSet& gs, MulCounter* counter = nullptr) {
  Matrix acc = Matrix::identity(std::size_t{1} << c.qubits);
  for (const auto& p : c.placements) {
    if (p.is_wire()) continue;
    acc = apply_structured(embed(p, c.qubits, gs), acc, counter, {.skip_zeros = counter == nullptr});
  }
  return acc;
}

/// Same product through dense embedding and schoolbook multiplication.
inline Matrix circuit_unitary_dense(const Circuit& c, const GateSet& gs, MulCounter* counter = nullptr) {
  Matrix acc = Matrix::identity(std::size_t{1} << c.qubits);
  for (const auto& p : c.placements) {
    if (p.is_wire()) continue;
    acc = mat_mul_naive(embed_dense(embed(p, c.qubits, gs)), acc, counter);
  }
  return acc;
}

/// |tr(G^dagger lambda)| / 2^m. Invariant under a global phase on lambda.
inline double correctness(const Matrix& lambda, const GoalSpec& goal) {
  if (lambda.dim() != goal.goal.dim())
    throw DimensionError("correctness: lambda dim " + std::to_string(lambda.dim()) +
                         " != goal dim " + std::to_string(goal.goal.dim()));
  // tr(G^dagger L) = sum_ij conj(G_ij) L_ij, without forming the product.
  Complex t{};
  auto g = goal.goal.entries(), l = lambda.entries();
  for (std::size_t i = 0; i < g.size(); ++i) t += std::conj(g[i]) * l[i];
  return std::abs(t) / static_cast<double>(lambda.dim());
}

inline unsigned allcost(const Circuit& c, const GateSet& gs, const CostModel& cm = {}) {
  unsigned total = 0;
  for (const auto& p : c.placements) total += placement_cost(p, cm, gs);
  return total;
}

/// award * (allcost - satcost) + punish * (1 - correctness). No clamping.
inline double fitness(unsigned cost, double corr, const FitnessParams& p) {
  return p.award * (static_cast<double>(cost) - p.satcost) + p.punish * (1.0 - corr);
}

inline bool is_success(double corr, unsigned cost, const FitnessParams& p) {
  return corr >= 1.0 - p.eps && static_cast<double>(cost) <= p.satcost;
}
inline bool is_success(const EvalResult& e, const FitnessParams& p) {
  return is_success(e.correctness, e.allcost, p);
}

inline EvalResult evaluate(const Circuit& c, const GoalSpec& goal, const GateSet& gs,
                           const CostModel& cm, const FitnessParams& fp) {
  if (c.qubits != goal.qubits)
    throw DimensionError("circuit has " + std::to_string(c.qubits) + " qubits, goal has " +
                         std::to_string(goal.qubits));
  EvalResult r;
  r.lambda = circuit_unitary(c, gs);
  r.correctness = correctness(r.lambda, goal);
  r.allcost = allcost(c, gs, cm);
  r.fitness = fitness(r.allcost, r.correctness, fp);
  return r;
}

}  // namespace oracle_forge
