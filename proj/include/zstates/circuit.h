#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zstates {

// Qubits and classical bits are 1-based throughout the library; qubit 1 is
// the topmost wire and the most significant bit of a basis index.
enum class GateKind { H, X, Z, S, Sdg, CNOT, CZ, Measure, Barrier };

std::string_view gate_name(GateKind kind);
bool is_unitary(GateKind kind);
bool is_two_qubit(GateKind kind);

struct GateInstance {
  GateKind kind;
  // For CNOT: {control, target}.
  std::vector<int> targets;
  std::optional<int> classical_target;

  static GateInstance h(int q) { return {GateKind::H, {q}, std::nullopt}; }
  static GateInstance x(int q) { return {GateKind::X, {q}, std::nullopt}; }
  static GateInstance z(int q) { return {GateKind::Z, {q}, std::nullopt}; }
  static GateInstance s(int q) { return {GateKind::S, {q}, std::nullopt}; }
  static GateInstance sdg(int q) { return {GateKind::Sdg, {q}, std::nullopt}; }
  static GateInstance cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}, std::nullopt};
  }
  static GateInstance cz(int a, int b) { return {GateKind::CZ, {a, b}, std::nullopt}; }
  static GateInstance measure(int q, int c) { return {GateKind::Measure, {q}, c}; }
  static GateInstance barrier(std::vector<int> qs) {
    return {GateKind::Barrier, std::move(qs), std::nullopt};
  }

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

std::string to_string(const GateInstance& gate);

class QuantumCircuit {
 public:
  QuantumCircuit() = default;
  QuantumCircuit(int n_qubits, int n_clbits = 0);

  int n_qubits() const { return n_qubits_; }
  int n_clbits() const { return n_clbits_; }
  const std::vector<GateInstance>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  // Validates arity and ranges; throws std::invalid_argument / std::out_of_range.
  QuantumCircuit& add(GateInstance gate);
  QuantumCircuit& h(int q) { return add(GateInstance::h(q)); }
  QuantumCircuit& x(int q) { return add(GateInstance::x(q)); }
  QuantumCircuit& z(int q) { return add(GateInstance::z(q)); }
  QuantumCircuit& s(int q) { return add(GateInstance::s(q)); }
  QuantumCircuit& sdg(int q) { return add(GateInstance::sdg(q)); }
  QuantumCircuit& cnot(int c, int t) { return add(GateInstance::cnot(c, t)); }
  QuantumCircuit& cz(int a, int b) { return add(GateInstance::cz(a, b)); }
  QuantumCircuit& measure(int q, int c) { return add(GateInstance::measure(q, c)); }
  QuantumCircuit& barrier(std::vector<int> qs) { return add(GateInstance::barrier(std::move(qs))); }

  // Appends `other`, relabelling its qubit i as qubit_map[i-1] and its
  // classical bit j as clbit_offset + j.
  QuantumCircuit& append(const QuantumCircuit& other, const std::vector<int>& qubit_map,
                         int clbit_offset = 0);
  // Appends `other` on the same wires.
  QuantumCircuit& append(const QuantumCircuit& other);

  // Gates with Measure and Barrier removed.
  QuantumCircuit unitary_part() const;
  // Qubits measured, ordered by classical bit (classical bit 1 first).
  std::vector<int> measured_qubits_by_clbit() const;
  std::size_t count(GateKind kind) const;

  friend bool operator==(const QuantumCircuit&, const QuantumCircuit&) = default;

 private:
  int n_qubits_ = 0;
  int n_clbits_ = 0;
  std::vector<GateInstance> gates_;
};

void validate_gate(const GateInstance& gate, int n_qubits, int n_clbits);

}  // namespace zstates
