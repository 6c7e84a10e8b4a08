#pragma once

#include <cstdint>
#include <vector>

#include "zstates/circuit.h"
#include "zstates/statevector.h"

namespace zstates {

// |Z_N^k>: the k-th member of the N-qubit Z-state basis.
struct ZStateIndex {
  int n_qubits = 0;
  std::uint64_t k = 0;

  // Throws std::invalid_argument for N < 2 and std::out_of_range for k >= 2^N.
  static ZStateIndex checked(int n_qubits, std::uint64_t k);
  friend bool operator==(const ZStateIndex&, const ZStateIndex&) = default;
};

// Sorted qubits (1-based) that receive a Z gate on top of the cluster state.
using ZPattern = std::vector<int>;

inline constexpr int kMaxClusterQubits = 20;

// 1-D cluster state: amplitude of b_1..b_N is (-1)^(sum b_i b_{i+1}) / 2^(N/2).
Statevector cluster_state(int n_qubits);
// H on every qubit, then CZ on (i, i+1) for i = 1..N-1.
QuantumCircuit cluster_circuit(int n_qubits);

// N = 2 and N = 3 follow the published enumeration order; N >= 4 uses the
// MSB-first binary rule (bit of qubit j has weight 2^(N-j)).
ZPattern z_pattern(int n_qubits, std::uint64_t k);
// Inverse of z_pattern.
std::uint64_t z_index(int n_qubits, const ZPattern& pattern);

Statevector zstate_vector(int n_qubits, std::uint64_t k);
QuantumCircuit zstate_circuit(int n_qubits, std::uint64_t k);

struct BasisReport {
  int n_qubits = 0;
  double max_off_diagonal = 0.0;
  double max_norm_deviation = 0.0;

  bool passed(double tol = 1e-12) const {
    return max_off_diagonal < tol && max_norm_deviation < tol;
  }
};

// All 4^N inner products of the Z-basis; N <= 8.
BasisReport verify_basis(int n_qubits);

// Schmidt coefficients across the cut between qubit `cut` and `cut + 1`,
// descending.
std::vector<double> schmidt_coefficients(const Statevector& state, int cut);

}  // namespace zstates
