#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zstates/counts.h"
#include "zstates/io.h"
#include "zstates/noise.h"
#include "zstates/tomography.h"
#include "zstates/zbasis.h"

namespace zstates {

// Everything that determines a run. Serialized into every output document.
struct ExperimentConfig {
  std::string command;  // "discriminate" or "tomo"
  int n = 2;
  std::uint64_t k = 0;
  std::uint64_t shots = 8192;
  Seed seed = 1;
  NoiseModel noise;
  bool tomography = false;
  std::string target = "state";  // tomo only: "state" or "ancilla"
  std::string out;
  std::string csv;

  // Throws std::invalid_argument for out-of-range fields.
  void validate() const;
  Json to_json() const;
  static ExperimentConfig from_json(const Json& j);
};

inline constexpr const char* kSeedEnvVar = "ZSTATES_SEED";

// Prepares |Z_N^k>, discriminates with `shots` repetitions and reports the
// counts, the index decoded from the modal string and the fidelity of the
// data qubits with the input afterwards.
Json run_discriminate(const ExperimentConfig& config);

struct TomographyRun {
  TomographyReport report;
  Json document;
};
TomographyRun run_tomography(const ExperimentConfig& config);

// "zstate:N:K"
ZStateIndex parse_zstate_target(const std::string& text);
Json fidelity_document(const DensityMatrix& rho, const ZStateIndex& target, bool reversed,
                       FidelityConvention convention, const FidelityResult& result);

struct VerifyEntry {
  std::uint64_t k = 0;
  std::string ancilla_bits;
  double outcome_probability = 0.0;
  std::uint64_t decoded = 0;
  double post_fidelity = 0.0;
  bool repeat_consistent = false;
};

struct VerifyReport {
  int n_qubits = 0;
  BasisReport basis;
  std::vector<VerifyEntry> entries;
  std::size_t distinct_syndromes = 0;
  bool basis_ok = false;
  bool deterministic = false;
  bool non_destructive = false;
  bool decoding_ok = false;

  bool passed() const { return basis_ok && deterministic && non_destructive && decoding_ok; }
  Json to_json() const;
};

// Orthonormality, syndrome determinism and distinctness, decoding and
// non-destructiveness for every |Z_N^k>; N in [2, 8].
VerifyReport run_verify(int n_qubits, Seed seed = 1);

}  // namespace zstates
