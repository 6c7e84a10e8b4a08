#pragma once

#include <random>
#include <string>
#include <vector>

#include "zstates/circuit.h"
#include "zstates/counts.h"
#include "zstates/pauli.h"
#include "zstates/statevector.h"
#include "zstates/zbasis.h"

namespace zstates {

// K_1 = X1 Z2, K_a = Z_{a-1} X_a Z_{a+1}, K_N = Z_{N-1} X_N.
std::vector<PauliString> stabilizer_generators(int n_data);

// Non-destructive readout circuit over N data qubits (1..N) and N ancillas
// (a_i = qubit N+i). Ancilla a_i reads K_i: bit 1 means eigenvalue -1.
//
// Ancilla a_i is measured into classical bit N+1-i, so a counts key lists
// the syndrome as K_N ... K_1 from left to right. For N = 2 this is exactly
// the published ancilla column ("01" for a phase flip on qubit 1).
struct DiscriminationCircuit {
  int n_data = 0;
  QuantumCircuit circuit;
  // ancilla_stabilizers[i-1] is the generator read by ancilla a_i.
  std::vector<PauliString> ancilla_stabilizers;

  int ancilla_qubit(int i) const { return n_data + i; }
  std::vector<int> data_qubits() const;
  // Ancilla qubits ordered by classical bit: a_N, ..., a_1.
  std::vector<int> readout_qubits() const;
};

DiscriminationCircuit build_discrimination_circuit(int n_data);

// Preparation of |Z_N^k> on the data wires followed by the discrimination
// circuit, over 2N qubits with N classical bits.
QuantumCircuit prepare_and_discriminate(int n_data, std::uint64_t k);

// Readout string (counts order) -> Z-state index.
ZStateIndex decode_ancilla(const std::string& bits, int n_data);

// Exact distribution over readout strings (index = string read MSB-first).
std::vector<double> ancilla_distribution(const Statevector& data);

struct DiscriminationResult {
  ZStateIndex index;
  std::string ancilla_bits;
  // Data-qubit state after projecting the ancillas on their outcome.
  Statevector post_state;
};

DiscriminationResult discriminate(const Statevector& data, std::mt19937_64& rng);
DiscriminationResult discriminate(const Statevector& data, Seed seed);

}  // namespace zstates
