#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zstates/counts.h"
#include "zstates/density_matrix.h"
#include "zstates/noise.h"
#include "zstates/pauli.h"
#include "zstates/statevector.h"

namespace zstates {

// Measurement settings: one letter from {X, Y, Z} per measured qubit.
// X is measured after H, Y after Sdg then H, Z directly.
struct TomographyPlan {
  int n_qubits = 0;
  std::vector<std::string> settings;
  std::uint64_t shots_per_setting = 8192;

  // All 3^n settings in lexicographic order.
  static TomographyPlan complete(int n_qubits, std::uint64_t shots_per_setting = 8192);
  void validate() const;
};

// Basis-change gates for `setting` applied to `qubits` of an n_total circuit.
QuantumCircuit basis_rotation(const std::string& setting, std::span<const int> qubits, int n_total);

// Outcome statistics of one setting. Probabilities are indexed by outcome
// (first measured qubit = MSB); weight is the shot count used for pooling.
struct SettingData {
  std::string setting;
  std::vector<double> probabilities;
  double weight = 1.0;

  static SettingData from_counts(const std::string& setting, const CountsTable& counts);
};

using ExpectationMap = std::map<PauliString, double>;

// Parity averages per Pauli string, pooled over every setting that covers it
// (shot-weighted). <I...I> = 1. Throws if a setting is missing or has no shots.
ExpectationMap estimate_expectations(std::span<const SettingData> data, int n_qubits);
ExpectationMap estimate_expectations(const std::map<std::string, CountsTable>& counts);

// rho = 2^-n sum_P <P> P; Hermitian and trace one, flagged raw.
DensityMatrix linear_inversion(const ExpectationMap& expectations, int n_qubits);

// Nearest trace-one PSD matrix in Frobenius norm (eigenvalue projection onto
// the probability simplex). Throws on non-Hermitian input.
DensityMatrix project_to_physical(const DensityMatrix& rho);

enum class FidelityConvention { Sqrt, Squared };

struct FidelityResult {
  double value = 0.0;
  // True when computed from a raw matrix: the value is not clamped to [0, 1]
  // and is NaN for a negative overlap under the sqrt convention.
  bool unclamped = false;
};

// <psi|rho|psi>, square-rooted under the sqrt convention.
FidelityResult fidelity_pure(const Statevector& target, const DensityMatrix& rho,
                             FidelityConvention convention);

struct TomographyReport {
  DensityMatrix raw;
  DensityMatrix physical;
  Statevector target;
  std::map<std::string, CountsTable> counts;
  FidelityResult raw_sqrt, raw_squared;
  FidelityResult physical_sqrt, physical_squared;
};

// Base-3 code of a setting (X=0, Y=1, Z=2, first letter most significant).
std::uint64_t setting_stream(const std::string& setting);

// Prepares `preparation` from |0...0>, measures `measured` under every
// setting of the plan and reconstructs. Each setting draws from the stream
// derive_seed(seed, setting_stream(setting)), so the result does not depend
// on the order of the settings.
TomographyReport tomography_end_to_end(const QuantumCircuit& preparation,
                                       std::span<const int> measured, const Statevector& target,
                                       const TomographyPlan& plan, const NoiseModel& noise,
                                       Seed seed);

enum class TomographyTarget { State, Ancilla };

// Readout string that decode_ancilla maps to k.
std::string expected_readout(int n_data, std::uint64_t k);

// |Z_N^k> prepared, discriminated, then either the data qubits (target
// |Z_N^k>) or the ancillas in readout order (target |expected_readout>)
// reconstructed.
TomographyReport discrimination_tomography(int n_data, std::uint64_t k, TomographyTarget target,
                                           std::uint64_t shots_per_setting,
                                           const NoiseModel& noise, Seed seed);

}  // namespace zstates
