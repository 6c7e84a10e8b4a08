#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "zstates/circuit.h"
#include "zstates/counts.h"
#include "zstates/pauli.h"

namespace zstates {

using Complex = std::complex<double>;

// Dense pure state over 2^n basis states. Basis index bits are b_1 b_2 ... b_n
// with qubit 1 as the most significant bit.
class Statevector {
 public:
  // |0...0>
  explicit Statevector(int n_qubits);

  static Statevector basis(int n_qubits, std::uint64_t index);
  // Throws unless the length is a power of two (>= 2) and the norm is 1 within
  // 1e-12. With normalize = true, any nonzero vector is rescaled instead.
  static Statevector from_amplitudes(std::vector<Complex> amplitudes, bool normalize = false);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm_squared() const;
  // <this|other>
  Complex inner(const Statevector& other) const;
  // this (top wires) tensor other (bottom wires).
  Statevector tensor(const Statevector& other) const;
  std::vector<double> probabilities() const;
  // Same state with the qubit order reversed (qubit 1 <-> qubit n).
  Statevector reversed_qubits() const;

 private:
  Statevector() = default;
  int n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

// |<a|b>|^2
double state_overlap(const Statevector& a, const Statevector& b);

// Bit of `qubit` (1-based) inside a basis index over n qubits.
constexpr std::uint64_t qubit_mask(int n_qubits, int qubit) {
  return std::uint64_t{1} << (n_qubits - qubit);
}

// In-place gate kernel over a raw amplitude buffer of 2^n_qubits entries.
// With conjugate = true the complex conjugate of the gate matrix is applied.
void apply_gate_inplace(std::span<Complex> amplitudes, int n_qubits, const GateInstance& gate,
                        bool conjugate = false);
// Pauli letter on one qubit; Y is conjugated when requested.
void apply_pauli_inplace(std::span<Complex> amplitudes, int n_qubits, char letter, int qubit,
                         bool conjugate = false);

Statevector apply_gate(Statevector state, const GateInstance& gate);
// Barriers are skipped; Measure gates are rejected.
Statevector run_circuit(Statevector state, const QuantumCircuit& circuit);

struct MeasurementResult {
  // One character per requested qubit, in request order.
  std::string bits;
  Statevector post_state;
};

MeasurementResult measure_and_collapse(const Statevector& state, std::span<const int> qubits,
                                       std::mt19937_64& rng);
MeasurementResult measure_and_collapse(const Statevector& state, std::span<const int> qubits,
                                       Seed seed);

// Probabilities over outcomes of `qubits`; qubits[0] is the most significant
// bit of the outcome index.
std::vector<double> marginal_probabilities(std::span<const double> full_probabilities,
                                           int n_qubits, std::span<const int> qubits);

CountsTable sample_counts(const Statevector& state, std::span<const int> qubits,
                          std::uint64_t shots, Seed seed);

double pauli_expectation(const Statevector& state, const PauliString& pauli);

}  // namespace zstates
