#pragma once

// Exhaustive minimal-cost search over circuits of up to `max_gates` non-wire
// gates. Independent of the evolutionary engine; used to check optimal costs.
//
// Sequences are visited depth-first in lexicographic case-index order, so the
// reported witness is the lexicographically smallest among minimal-cost ones.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle_forge/codec.hpp"
#include "oracle_forge/evaluator.hpp"

namespace oracle_forge {

struct SearchOptions {
  double eps = 1e-6;
  std::uint64_t budget = 100'000'000;  // max circuits the unpruned tree may hold
  bool prune_on_cost = true;
  CostModel cost_model{};
};

struct SearchReport {
  std::optional<unsigned> min_cost;
  std::optional<Circuit> witness;
  std::uint64_t circuits_examined = 0;
};

/// sum_{d=0..max_gates} (N-1)^d, saturating at UINT64_MAX.
inline std::uint64_t search_space_size(std::size_t non_wire_cases, std::size_t max_gates) {
  std::uint64_t total = 0, layer = 1;
  for (std::size_t d = 0; d <= max_gates; ++d) {
    if (total > UINT64_MAX - layer) return UINT64_MAX;
    total += layer;
    if (d < max_gates) {
      if (non_wire_cases != 0 && layer > UINT64_MAX / non_wire_cases) return UINT64_MAX;
      layer *= non_wire_cases;
    }
  }
  return total;
}

namespace detail {

struct SearchState {
  const GoalSpec& goal;
  const GateSet& gs;
  const SearchOptions& opts;
  std::size_t max_gates;
  std::vector<Placement> cases;      // non-wire cases, index order
  std::vector<unsigned> case_costs;
  std::vector<StructuredOperator> ops;
  std::vector<Placement> prefix;
  SearchReport report;

  void visit(const Matrix& lambda, unsigned cost) {
    ++report.circuits_examined;
    if ((!report.min_cost || cost < *report.min_cost) && correctness(lambda, goal) >= 1.0 - opts.eps) {
      report.min_cost = cost;
      report.witness = Circuit{goal.qubits, prefix};
    }
    if (prefix.size() == max_gates) return;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const unsigned next_cost = cost + case_costs[c];
      if (opts.prune_on_cost && report.min_cost && next_cost > *report.min_cost) continue;
      prefix.push_back(cases[c]);
      visit(apply_structured(ops[c], lambda, nullptr, {.skip_zeros = true}), next_cost);
      prefix.pop_back();
    }
  }
};

}  // namespace detail

inline SearchReport min_cost_search(const GoalSpec& goal, std::size_t max_gates, const GateSet& gs,
                                    const SearchOptions& opts = {}) {
  const std::size_t m = goal.qubits;
  const std::size_t n = case_count(m, gs);
  const std::uint64_t space = search_space_size(n - 1, max_gates);
  if (space > opts.budget)
    throw std::length_error("search space of " + std::to_string(space) +
                            " circuits exceeds budget " + std::to_string(opts.budget));

  detail::SearchState st{goal, gs, opts, max_gates, {}, {}, {}, {}, {}};
  for (std::size_t idx = 1; idx < n; ++idx) {
    const Placement p = case_from_index(idx, m, gs);
    st.cases.push_back(p);
    st.case_costs.push_back(placement_cost(p, opts.cost_model, gs));
    st.ops.push_back(embed(p, m, gs));
  }
  st.visit(Matrix::identity(std::size_t{1} << m), 0);
  return std::move(st.report);
}

inline nlohmann::json report_to_json(const SearchReport& r, const GateSet& gs, const CostModel& cm) {
  nlohmann::json j{{"circuits_examined", r.circuits_examined}};
  j["min_cost"] = r.min_cost ? nlohmann::json(*r.min_cost) : nlohmann::json(nullptr);
  j["witness"] = r.witness ? circuit_to_json(*r.witness, gs, cm) : nlohmann::json(nullptr);
  return j;
}

}  // namespace oracle_forge
