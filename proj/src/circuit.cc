#include "zstates/circuit.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace zstates {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::Measure: return "measure";
    case GateKind::Barrier: return "barrier";
  }
  return "?";
}

bool is_unitary(GateKind kind) {
  return kind != GateKind::Measure && kind != GateKind::Barrier;
}

bool is_two_qubit(GateKind kind) { return kind == GateKind::CNOT || kind == GateKind::CZ; }

std::string to_string(const GateInstance& gate) {
  std::ostringstream out;
  out << gate_name(gate.kind);
  for (std::size_t i = 0; i < gate.targets.size(); ++i) {
    out << (i == 0 ? " " : ",") << gate.targets[i];
  }
  if (gate.classical_target) out << " -> " << *gate.classical_target;
  return out.str();
}

void validate_gate(const GateInstance& gate, int n_qubits, int n_clbits) {
  const auto& t = gate.targets;
  if (is_two_qubit(gate.kind)) {
    if (t.size() != 2) throw std::invalid_argument(to_string(gate) + ": needs two targets");
    if (t[0] == t[1]) throw std::invalid_argument(to_string(gate) + ": targets must differ");
  } else if (gate.kind == GateKind::Barrier) {
    if (t.empty()) throw std::invalid_argument("barrier: needs at least one qubit");
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("barrier: repeated qubit");
    }
  } else if (t.size() != 1) {
    throw std::invalid_argument(to_string(gate) + ": needs exactly one target");
  }
  for (int q : t) {
    if (q < 1 || q > n_qubits) {
      throw std::out_of_range(to_string(gate) + ": qubit " + std::to_string(q) +
                              " outside [1, " + std::to_string(n_qubits) + "]");
    }
  }
  if (gate.kind == GateKind::Measure) {
    if (!gate.classical_target) throw std::invalid_argument("measure: missing classical bit");
    int c = *gate.classical_target;
    if (c < 1 || c > n_clbits) {
      throw std::out_of_range(to_string(gate) + ": classical bit outside [1, " +
                              std::to_string(n_clbits) + "]");
    }
  } else if (gate.classical_target) {
    throw std::invalid_argument(to_string(gate) + ": only measure takes a classical bit");
  }
}

QuantumCircuit::QuantumCircuit(int n_qubits, int n_clbits)
    : n_qubits_(n_qubits), n_clbits_(n_clbits) {
  if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  if (n_clbits < 0) throw std::invalid_argument("negative classical register size");
}

QuantumCircuit& QuantumCircuit::add(GateInstance gate) {
  validate_gate(gate, n_qubits_, n_clbits_);
  gates_.push_back(std::move(gate));
  return *this;
}

QuantumCircuit& QuantumCircuit::append(const QuantumCircuit& other,
                                       const std::vector<int>& qubit_map, int clbit_offset) {
  if (static_cast<int>(qubit_map.size()) != other.n_qubits()) {
    throw std::invalid_argument("append: qubit map size does not match circuit width");
  }
  for (GateInstance g : other.gates()) {
    for (int& q : g.targets) q = qubit_map[q - 1];
    if (g.classical_target) *g.classical_target += clbit_offset;
    add(std::move(g));
  }
  return *this;
}

QuantumCircuit& QuantumCircuit::append(const QuantumCircuit& other) {
  std::vector<int> identity(other.n_qubits());
  for (int i = 0; i < other.n_qubits(); ++i) identity[i] = i + 1;
  return append(other, identity);
}

QuantumCircuit QuantumCircuit::unitary_part() const {
  QuantumCircuit out(n_qubits_, n_clbits_);
  for (const auto& g : gates_) {
    if (is_unitary(g.kind)) out.gates_.push_back(g);
  }
  return out;
}

std::vector<int> QuantumCircuit::measured_qubits_by_clbit() const {
  std::map<int, int> by_clbit;
  for (const auto& g : gates_) {
    if (g.kind == GateKind::Measure) by_clbit[*g.classical_target] = g.targets[0];
  }
  std::vector<int> out;
  for (const auto& [c, q] : by_clbit) out.push_back(q);
  return out;
}

std::size_t QuantumCircuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const auto& g) { return g.kind == kind; }));
}

}  // namespace zstates
