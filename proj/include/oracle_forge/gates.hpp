#pragma once

// Primitive gate catalog, the adjacent-only case enumeration, and gate costs.
//
// Qubit 0 is the topmost wire and the most significant tensor factor. A
// placement at `top` on m qubits embeds as 1_{2^top} (x) A (x) 1_{2^(m-top-span)}.
//
// Case ordering for index -> placement:
//   0                         Wire
//   then one-qubit gates, gate-major / qubit-minor: G0@0 .. G0@m-1, G1@0 ..
//   then per two-qubit family, per adjacent pair p = 0..m-2: down@p, up@p

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle_forge/linalg.hpp"

namespace oracle_forge {

enum class GateKind { Wire, S, T, H, CnotDown, CnotUp };

inline const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Wire: return "Wire";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::H: return "H";
    case GateKind::CnotDown: return "CnotDown";
    case GateKind::CnotUp: return "CnotUp";
  }
  return "?";
}

inline Matrix gate_matrix(GateKind kind) {
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  switch (kind) {
    case GateKind::S: return Matrix::diagonal({1.0, i});
    case GateKind::T: return Matrix::diagonal({1.0, std::polar(1.0, std::numbers::pi / 4)});
    case GateKind::H: return Matrix{{r, r}, {r, -r}};
    case GateKind::CnotDown:
      return Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    case GateKind::CnotUp:
      return Matrix{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
    case GateKind::Wire: break;
  }
  throw std::invalid_argument("Wire has no gate matrix");
}

inline Matrix swap_matrix() {
  return Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

struct CostModel {
  unsigned one_qubit_cost = 1;
  unsigned two_qubit_cost = 2;
  static constexpr unsigned wire_cost = 0;
};

struct OneQubitGate {
  std::string name;
  Matrix matrix;
  std::optional<unsigned> cost;  // overrides CostModel when set
};

/// A two-qubit gate family. `down` acts with the upper wire as first operand;
/// `up` is the same gate with the operands exchanged (SWAP * down * SWAP).
struct TwoQubitFamily {
  std::string name;
  std::string up_name;
  Matrix down;
  Matrix up;
  std::optional<unsigned> cost;

  static TwoQubitFamily from_down(std::string name, std::string up_name, Matrix down,
                                  std::optional<unsigned> cost = std::nullopt) {
    const Matrix sw = swap_matrix();
    Matrix up = sw * down * sw;
    return {std::move(name), std::move(up_name), std::move(down), std::move(up), cost};
  }
};

enum class CaseKind : std::uint8_t { Wire, Single, Down, Up };

/// One decoded case: a gate at a position. `gate` indexes the gate set's
/// one-qubit list (Single) or family list (Down/Up).
struct Placement {
  CaseKind kind = CaseKind::Wire;
  std::size_t gate = 0;
  std::size_t top = 0;

  static Placement wire() { return {}; }
  static Placement single(std::size_t gate, std::size_t qubit) { return {CaseKind::Single, gate, qubit}; }
  static Placement down(std::size_t family, std::size_t pair) { return {CaseKind::Down, family, pair}; }
  static Placement up(std::size_t family, std::size_t pair) { return {CaseKind::Up, family, pair}; }

  bool is_wire() const noexcept { return kind == CaseKind::Wire; }
  /// Qubits touched; 0 for Wire (which spans the register but acts trivially).
  std::size_t span() const noexcept {
    return kind == CaseKind::Wire ? 0 : (kind == CaseKind::Single ? 1 : 2);
  }

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

class GateSet {
 public:
  GateSet(std::vector<OneQubitGate> one_qubit, std::vector<TwoQubitFamily> two_qubit)
      : one_(std::move(one_qubit)), two_(std::move(two_qubit)) {
    if (one_.empty() && two_.empty()) throw std::invalid_argument("gate set is empty");
    std::set<std::string> names;
    auto claim = [&](const std::string& n) {
      if (n.empty() || !names.insert(n).second)
        throw std::invalid_argument("duplicate or empty gate name '" + n + "'");
    };
    for (const auto& g : one_) {
      claim(g.name);
      if (g.matrix.dim() != 2) throw DimensionError("one-qubit gate '" + g.name + "' must be 2x2");
    }
    for (const auto& f : two_) {
      claim(f.name);
      claim(f.up_name);
      if (f.down.dim() != 4 || f.up.dim() != 4)
        throw DimensionError("two-qubit gate '" + f.name + "' must be 4x4");
    }
  }

  /// {S, T, H | CNOT}, with CNOT2 the orientation controlled by the lower wire.
  static GateSet standard() {
    return GateSet({{"S", gate_matrix(GateKind::S), {}},
                    {"T", gate_matrix(GateKind::T), {}},
                    {"H", gate_matrix(GateKind::H), {}}},
                   {TwoQubitFamily{"CNOT", "CNOT2", gate_matrix(GateKind::CnotDown),
                                   gate_matrix(GateKind::CnotUp), {}}});
  }

  std::size_t n1() const noexcept { return one_.size(); }
  std::size_t n2() const noexcept { return two_.size(); }
  const std::vector<OneQubitGate>& one_qubit() const noexcept { return one_; }
  const std::vector<TwoQubitFamily>& two_qubit() const noexcept { return two_; }

  const Matrix& matrix_of(const Placement& p) const {
    switch (p.kind) {
      case CaseKind::Single: return one_.at(p.gate).matrix;
      case CaseKind::Down: return two_.at(p.gate).down;
      case CaseKind::Up: return two_.at(p.gate).up;
      case CaseKind::Wire: break;
    }
    throw std::invalid_argument("Wire has no gate matrix");
  }

  std::string name_of(const Placement& p) const {
    switch (p.kind) {
      case CaseKind::Wire: return "Wire";
      case CaseKind::Single: return one_.at(p.gate).name;
      case CaseKind::Down: return two_.at(p.gate).name;
      case CaseKind::Up: return two_.at(p.gate).up_name;
    }
    return "?";
  }

  /// Placement for a gate name at `top`; nullopt if the name is unknown.
  std::optional<Placement> find(const std::string& name, std::size_t top) const {
    if (name == "Wire") return Placement::wire();
    for (std::size_t i = 0; i < one_.size(); ++i)
      if (one_[i].name == name) return Placement::single(i, top);
    for (std::size_t i = 0; i < two_.size(); ++i) {
      if (two_[i].name == name) return Placement::down(i, top);
      if (two_[i].up_name == name) return Placement::up(i, top);
    }
    return std::nullopt;
  }

  /// Keeps only the listed gates (one-qubit names or family names), in the
  /// order they appear in this set.
  GateSet select(const std::vector<std::string>& names) const {
    std::set<std::string> wanted(names.begin(), names.end());
    std::vector<OneQubitGate> one;
    std::vector<TwoQubitFamily> two;
    for (const auto& g : one_)
      if (wanted.erase(g.name)) one.push_back(g);
    for (const auto& f : two_)
      if (wanted.erase(f.name)) two.push_back(f);
    if (!wanted.empty()) throw std::invalid_argument("unknown gate '" + *wanted.begin() + "'");
    return GateSet(std::move(one), std::move(two));
  }

  GateSet extended(const GateSet& extra) const {
    auto one = one_;
    auto two = two_;
    one.insert(one.end(), extra.one_.begin(), extra.one_.end());
    two.insert(two.end(), extra.two_.begin(), extra.two_.end());
    return GateSet(std::move(one), std::move(two));
  }

 private:
  std::vector<OneQubitGate> one_;
  std::vector<TwoQubitFamily> two_;
};

/// N = n1*m + 2*n2*(m-1) + 1, including the wire.
inline std::size_t case_count(std::size_t m, const GateSet& gs) {
  if (m == 0) throw std::invalid_argument("case_count: need at least one qubit");
  return gs.n1() * m + 2 * gs.n2() * (m - 1) + 1;
}

inline Placement case_from_index(std::size_t idx, std::size_t m, const GateSet& gs) {
  const std::size_t n = case_count(m, gs);
  if (idx >= n)
    throw std::out_of_range("case index " + std::to_string(idx) + " outside [0, " +
                            std::to_string(n) + ")");
  if (idx == 0) return Placement::wire();
  std::size_t r = idx - 1;
  if (r < gs.n1() * m) return Placement::single(r / m, r % m);
  r -= gs.n1() * m;
  const std::size_t per_family = 2 * (m - 1);
  const std::size_t family = r / per_family;
  r %= per_family;
  return (r % 2 == 0) ? Placement::down(family, r / 2) : Placement::up(family, r / 2);
}

inline std::size_t index_of(const Placement& p, std::size_t m, const GateSet& gs) {
  switch (p.kind) {
    case CaseKind::Wire: return 0;
    case CaseKind::Single: return 1 + p.gate * m + p.top;
    case CaseKind::Down: return 1 + gs.n1() * m + p.gate * 2 * (m - 1) + 2 * p.top;
    case CaseKind::Up: return 1 + gs.n1() * m + p.gate * 2 * (m - 1) + 2 * p.top + 1;
  }
  return 0;
}

inline bool is_valid(const Placement& p, std::size_t m, const GateSet& gs) {
  switch (p.kind) {
    case CaseKind::Wire: return true;
    case CaseKind::Single: return p.gate < gs.n1() && p.top < m;
    case CaseKind::Down:
    case CaseKind::Up: return p.gate < gs.n2() && p.top + 2 <= m;
  }
  return false;
}

inline unsigned placement_cost(const Placement& p, const CostModel& cm, const GateSet& gs) {
  switch (p.kind) {
    case CaseKind::Wire: return CostModel::wire_cost;
    case CaseKind::Single: return gs.one_qubit().at(p.gate).cost.value_or(cm.one_qubit_cost);
    case CaseKind::Down:
    case CaseKind::Up: return gs.two_qubit().at(p.gate).cost.value_or(cm.two_qubit_cost);
  }
  return 0;
}

// --- gate-set extension files ---------------------------------------------
//
// JSON array (or {"gates": [...]}) of {name, arity, cost, matrix}. `matrix` is
// either a flat row-major list of [re, im] pairs or a list of rows of pairs.
// A two-qubit entry named X also provides X2, its operand-swapped orientation.

namespace detail {

inline Complex parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline bool is_complex_pair(const nlohmann::json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

/// Accepts rows of [re,im] pairs or a flat list of dim^2 pairs.
inline Matrix parse_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array");
  std::vector<Complex> entries;
  std::size_t dim = 0;
  if (is_complex_pair(j[0]) || j[0].is_number()) {
    for (const auto& z : j) entries.push_back(parse_complex(z));
    dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
    if (dim * dim != entries.size())
      throw DimensionError("flat matrix has " + std::to_string(entries.size()) +
                           " entries, not a square count");
  } else {
    dim = j.size();
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != dim) throw DimensionError("matrix must be square");
      for (const auto& z : row) entries.push_back(parse_complex(z));
    }
  }
  return Matrix(dim, std::move(entries));
}

inline nlohmann::json matrix_to_json(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline constexpr double kGateLoadTolerance = 1e-8;

inline GateSet parse_gate_extensions(const nlohmann::json& doc) {
  const nlohmann::json& list = doc.is_object() ? doc.at("gates") : doc;
  if (!list.is_array()) throw std::invalid_argument("gate file must hold an array of gates");
  std::vector<OneQubitGate> one;
  std::vector<TwoQubitFamily> two;
  for (const auto& e : list) {
    const auto name = e.at("name").get<std::string>();
    const auto arity = e.at("arity").get<int>();
    std::optional<unsigned> cost;
    if (e.contains("cost")) cost = e.at("cost").get<unsigned>();
    Matrix mat = detail::parse_matrix(e.at("matrix"));
    const std::size_t want = arity == 1 ? 2 : arity == 2 ? 4 : 0;
    if (want == 0) throw std::invalid_argument("gate '" + name + "': arity must be 1 or 2");
    if (mat.dim() != want)
      throw DimensionError("gate '" + name + "': arity " + std::to_string(arity) + " needs a " +
                           std::to_string(want) + "x" + std::to_string(want) + " matrix");
    const double dev = unitarity_deviation(mat);
    if (dev > kGateLoadTolerance)
      throw std::invalid_argument("gate '" + name + "' is not unitary (max deviation " +
                                  std::to_string(dev) + ")");
    if (arity == 1)
      one.push_back({name, std::move(mat), cost});
    else
      two.push_back(TwoQubitFamily::from_down(name, name + "2", std::move(mat), cost));
  }
  return GateSet(std::move(one), std::move(two));
}

inline GateSet load_gate_extensions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gate file " + path.string());
  return parse_gate_extensions(nlohmann::json::parse(in));
}

}  // namespace oracle_forge
