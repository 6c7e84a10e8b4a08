#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace zstates {

using Seed = std::uint64_t;

// Independent stream seed for (base, stream) via splitmix64, so per-setting
// and per-shot-batch streams do not depend on execution order.
Seed derive_seed(Seed base, std::uint64_t stream);

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
// Unlike std::uniform_real_distribution this is identical on every toolchain.
double uniform01(std::mt19937_64& rng);

// Outcomes whose probability is at least 1 - kPointMassTolerance absorb every
// shot, independent of the seed.
inline constexpr double kPointMassTolerance = 1e-10;

// Draws `shots` i.i.d. outcome indices from `probabilities` (need not be
// exactly normalized; negative entries are treated as zero).
std::vector<std::uint64_t> sample_outcomes(std::span<const double> probabilities,
                                           std::uint64_t shots, std::mt19937_64& rng);

std::string outcome_to_bits(std::uint64_t outcome, int n_bits);
std::uint64_t bits_to_outcome(const std::string& bits);

// Measured bitstrings -> occurrences. Leftmost character is the lowest
// classical bit (first measured qubit).
class CountsTable {
 public:
  static constexpr const char* kBitOrder = "leftmost=lowest-clbit";

  CountsTable() = default;
  // Throws std::invalid_argument if shots == 0 or any key is malformed or the
  // counts do not add up to shots.
  CountsTable(int n_measured, std::uint64_t shots, std::map<std::string, std::uint64_t> counts);
  static CountsTable from_outcomes(int n_measured, std::span<const std::uint64_t> outcomes);

  int n_measured() const { return n_measured_; }
  std::uint64_t shots() const { return shots_; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(const std::string& bits) const;
  // Most frequent bitstring; ties go to the lexicographically smallest key.
  std::string mode() const;
  // Normalized frequencies indexed by outcome integer (leftmost bit = MSB).
  std::vector<double> frequencies() const;

  friend bool operator==(const CountsTable&, const CountsTable&) = default;

 private:
  int n_measured_ = 0;
  std::uint64_t shots_ = 0;
  std::map<std::string, std::uint64_t> counts_;
};

}  // namespace zstates
