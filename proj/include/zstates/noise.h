#pragma once

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zstates/circuit.h"
#include "zstates/counts.h"
#include "zstates/density_matrix.h"

namespace zstates {

struct NoiseModel {
  double p1 = 0.0;         // depolarizing after each one-qubit gate
  double p2 = 0.0;         // depolarizing after each two-qubit gate
  double p_readout = 0.0;  // independent flip of every reported bit

  // Throws std::invalid_argument if any probability lies outside [0, 1].
  void validate() const;
  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && p_readout == 0.0; }

  // "depol:<p1>,<p2>;readout:<p>"; either clause may be omitted, "none" or an
  // empty string means noiseless.
  static NoiseModel parse(std::string_view spec);
  std::string to_spec() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

inline constexpr int kMaxDensityQubits = 12;

// rho -> (1-p) rho + p/(4^m - 1) sum_{P != I} P rho P^dagger over the m
// listed qubits.
DensityMatrix apply_depolarizing(DensityMatrix rho, std::span<const int> qubits, double p);

// Gate-by-gate evolution with depolarizing on each gate's targets. Measure and
// barrier entries are skipped.
DensityMatrix evolve_noisy(DensityMatrix rho, const QuantumCircuit& circuit, const NoiseModel& noise);

// Flips each of the n_bits of every outcome independently with probability p.
void apply_readout_flips(std::span<std::uint64_t> outcomes, int n_bits, double p,
                         std::mt19937_64& rng);

// Samples `qubits` from the diagonal of rho, then applies readout flips.
CountsTable sample_density_counts(const DensityMatrix& rho, std::span<const int> qubits,
                                  std::uint64_t shots, double p_readout, Seed seed);

// Runs `circuit` from |0...0>. With `qubits` empty, the circuit's measured
// qubits (by classical bit) are used. A zero model takes the statevector path
// and reproduces sample_counts exactly.
CountsTable noisy_counts(const QuantumCircuit& circuit, const NoiseModel& noise,
                         std::span<const int> qubits, std::uint64_t shots, Seed seed);

}  // namespace zstates
