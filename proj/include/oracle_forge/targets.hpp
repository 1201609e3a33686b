#pragma once

// Built-in benchmark goals and goal-file I/O.
//
// Goal file: {"qubits": m, "matrix": [[[re, im], ...], ...], "optimal_cost": c}
// with optimal_cost optional.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle_forge/evaluator.hpp"
#include "oracle_forge/gates.hpp"

namespace oracle_forge {

inline constexpr double kGoalFileTolerance = 1e-8;

inline const std::vector<std::string>& builtin_goal_names() {
  static const std::vector<std::string> names{"swap", "entangle2", "entangle3", "controlled_s",
                                              "identity"};
  return names;
}

/// Reference circuits for the built-in goals, as used to define them.
inline Circuit reference_circuit(const std::string& name) {
  if (name == "swap")
    return {2, {Placement::down(0, 0), Placement::up(0, 0), Placement::down(0, 0)}};
  if (name == "entangle2") return {2, {Placement::single(2, 0), Placement::down(0, 0)}};
  if (name == "entangle3")
    return {3, {Placement::single(2, 0), Placement::down(0, 0), Placement::down(0, 1)}};
  throw std::invalid_argument("no reference circuit for '" + name + "'");
}

inline GoalSpec identity_goal(std::size_t qubits) {
  return GoalSpec(qubits, Matrix::identity(std::size_t{1} << qubits), 0u);
}

inline GoalSpec builtin_goal(const std::string& name, std::size_t identity_qubits = 2) {
  const GateSet gs = GateSet::standard();
  if (name == "swap") return GoalSpec(2, swap_matrix(), 6u);
  if (name == "entangle2")
    return GoalSpec(2, circuit_unitary_dense(reference_circuit("entangle2"), gs), 3u);
  if (name == "entangle3")
    return GoalSpec(3, circuit_unitary_dense(reference_circuit("entangle3"), gs), 5u);
  if (name == "controlled_s") return GoalSpec(2, Matrix::diagonal({1, 1, 1, Complex{0, 1}}), 7u);
  if (name == "identity") return identity_goal(identity_qubits);
  std::string known;
  for (const auto& n : builtin_goal_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown goal '" + name + "' (available: " + known + ")");
}

inline nlohmann::json goal_to_json(const GoalSpec& spec) {
  nlohmann::json j{{"qubits", spec.qubits}, {"matrix", detail::matrix_to_json(spec.goal)}};
  if (spec.optimal_cost) j["optimal_cost"] = *spec.optimal_cost;
  return j;
}

inline GoalSpec goal_from_json(const nlohmann::json& j) {
  const auto m = j.at("qubits").get<std::size_t>();
  Matrix g = detail::parse_matrix(j.at("matrix"));
  if (!is_power_of_two(g.dim()))
    throw DimensionError("goal matrix dim " + std::to_string(g.dim()) + " is not a power of two");
  std::optional<unsigned> optimal;
  if (j.contains("optimal_cost") && !j.at("optimal_cost").is_null())
    optimal = j.at("optimal_cost").get<unsigned>();
  return GoalSpec(m, std::move(g), optimal, kGoalFileTolerance);
}

inline void save_goal(const GoalSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << goal_to_json(spec).dump(2) << "\n";
}

inline GoalSpec load_goal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open goal file " + path.string());
  return goal_from_json(nlohmann::json::parse(in));
}

}  // namespace oracle_forge
