#pragma once

// Binary chromosome <-> circuit translation.
//
// A chromosome is g codons of k = ceil(log2 N) bits each. Codon bits are read
// most significant first; codon value s selects case floor(s * N / 2^k).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracle_forge/gates.hpp"

namespace oracle_forge {

struct Chromosome {
  std::vector<std::uint8_t> bits;

  static Chromosome from_string(std::string_view s) {
    Chromosome c;
    for (char ch : s) {
      if (ch == '0' || ch == '1')
        c.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
      else if (ch != ' ' && ch != '_')
        throw std::invalid_argument("chromosome literal may only hold 0, 1, ' ' or '_'");
    }
    return c;
  }
  std::string to_string() const {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
  }
  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

struct Circuit {
  std::size_t qubits = 1;
  std::vector<Placement> placements;  // time order; Wire entries allowed

  std::size_t gate_count() const {
    std::size_t n = 0;
    for (const auto& p : placements) n += !p.is_wire();
    return n;
  }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Smallest k >= 1 with 2^k >= N.
inline unsigned codon_bits(std::size_t n_cases) {
  if (n_cases == 0) throw std::invalid_argument("codon_bits: N must be >= 1");
  unsigned k = 1;
  while ((std::size_t{1} << k) < n_cases) ++k;
  return k;
}

inline std::size_t decode_codon(std::uint64_t s, std::size_t n_cases, unsigned k) {
  if (s >= (std::uint64_t{1} << k))
    throw std::out_of_range("codon value " + std::to_string(s) + " does not fit in " +
                            std::to_string(k) + " bits");
  return static_cast<std::size_t>((s * n_cases) >> k);
}

/// Fixed encoding parameters for one synthesis run.
struct CodecLayout {
  std::size_t qubits = 1;
  std::size_t max_gates = 1;  // g
  std::size_t n_cases = 1;    // N
  unsigned codon_width = 1;   // k

  static CodecLayout make(std::size_t qubits, std::size_t max_gates, const GateSet& gs) {
    if (max_gates == 0) throw std::invalid_argument("max gates must be >= 1");
    const std::size_t n = case_count(qubits, gs);
    return {qubits, max_gates, n, codon_bits(n)};
  }
  std::size_t chromosome_bits() const { return max_gates * codon_width; }
};

inline Circuit decode(const Chromosome& c, const CodecLayout& layout, const GateSet& gs) {
  if (c.bits.size() != layout.chromosome_bits())
    throw std::invalid_argument("chromosome has " + std::to_string(c.bits.size()) +
                                " bits, layout needs " + std::to_string(layout.chromosome_bits()));
  Circuit circ{layout.qubits, {}};
  circ.placements.reserve(layout.max_gates);
  for (std::size_t i = 0; i < layout.max_gates; ++i) {
    std::uint64_t s = 0;
    for (unsigned b = 0; b < layout.codon_width; ++b) s = (s << 1) | c.bits[i * layout.codon_width + b];
    circ.placements.push_back(
        case_from_index(decode_codon(s, layout.n_cases, layout.codon_width), layout.qubits, gs));
  }
  return circ;
}

/// One text row per qubit, gates left to right; Wire steps are omitted.
/// CNOT-style families draw control '*' and target '+'; other two-qubit
/// gates label both rows with the gate name and operand number.
inline std::string render_ascii(const Circuit& circ, const GateSet& gs) {
  std::vector<std::string> rows(circ.qubits);
  for (std::size_t q = 0; q < circ.qubits; ++q) rows[q] = "q" + std::to_string(q) + ": -";

  for (const auto& p : circ.placements) {
    if (p.is_wire()) continue;
    std::vector<std::string> cells(circ.qubits);
    if (p.kind == CaseKind::Single) {
      cells[p.top] = gs.name_of(p);
    } else {
      const auto& fam = gs.two_qubit().at(p.gate);
      const bool cnot_like = fam.down == gate_matrix(GateKind::CnotDown);
      const std::size_t first = p.kind == CaseKind::Down ? p.top : p.top + 1;
      const std::size_t second = p.kind == CaseKind::Down ? p.top + 1 : p.top;
      cells[first] = cnot_like ? "*" : fam.name + ":0";
      cells[second] = cnot_like ? "+" : fam.name + ":1";
    }
    std::size_t width = 1;
    for (const auto& c : cells) width = std::max(width, c.size());
    for (std::size_t q = 0; q < circ.qubits; ++q) {
      std::string cell = cells[q];
      const std::size_t pad = width - cell.size();
      cell = std::string(pad / 2, '-') + cell + std::string(pad - pad / 2, '-');
      if (cells[q].empty()) cell = std::string(width, '-');
      rows[q] += cell + "-";
    }
  }
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

// --- circuit JSON ----------------------------------------------------------
// {"qubits": m, "gates": [{"gate": "H", "top": 0}, ...], "cost": c}
// Wire steps are not written.

inline nlohmann::json circuit_to_json(const Circuit& circ, const GateSet& gs, const CostModel& cm) {
  nlohmann::json gates = nlohmann::json::array();
  unsigned cost = 0;
  for (const auto& p : circ.placements) {
    if (p.is_wire()) continue;
    gates.push_back({{"gate", gs.name_of(p)}, {"top", p.top}});
    cost += placement_cost(p, cm, gs);
  }
  return {{"qubits", circ.qubits}, {"gates", std::move(gates)}, {"cost", cost}};
}

inline Circuit circuit_from_json(const nlohmann::json& j, const GateSet& gs) {
  if (!j.is_object() || !j.contains("qubits") || !j.contains("gates") || !j.at("gates").is_array())
    throw std::invalid_argument("circuit JSON needs \"qubits\" and a \"gates\" array");
  Circuit circ{j.at("qubits").get<std::size_t>(), {}};
  if (circ.qubits == 0) throw std::invalid_argument("circuit JSON: qubits must be >= 1");
  for (const auto& e : j.at("gates")) {
    const auto name = e.at("gate").get<std::string>();
    const auto top = e.at("top").get<std::size_t>();
    auto p = gs.find(name, top);
    if (!p) throw std::invalid_argument("circuit JSON: unknown gate '" + name + "'");
    if (!is_valid(*p, circ.qubits, gs))
      throw std::invalid_argument("circuit JSON: gate '" + name + "' at " + std::to_string(top) +
                                  " does not fit on " + std::to_string(circ.qubits) + " qubits");
    circ.placements.push_back(*p);
  }
  return circ;
}

inline void save_circuit(const Circuit& circ, const GateSet& gs, const CostModel& cm,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << circuit_to_json(circ, gs, cm).dump(2) << "\n";
}

inline Circuit load_circuit(const std::filesystem::path& path, const GateSet& gs) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file " + path.string());
  return circuit_from_json(nlohmann::json::parse(in), gs);
}

}  // namespace oracle_forge
