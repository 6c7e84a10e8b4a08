#include "zstates/counts.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zstates {

Seed derive_seed(Seed base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_outcomes(std::span<const double> probabilities,
                                           std::uint64_t shots, std::mt19937_64& rng) {
  if (probabilities.empty()) throw std::invalid_argument("empty distribution");
  std::vector<double> cdf(probabilities.size());
  double running = 0.0;
  std::size_t last_nonzero = 0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    double p = std::max(probabilities[i], 0.0);
    if (p > 0.0) last_nonzero = i;
    if (p > probabilities[argmax]) argmax = i;
    running += p;
    cdf[i] = running;
  }
  if (running <= 0.0) throw std::runtime_error("distribution has no mass");

  std::vector<std::uint64_t> out(shots);
  if (probabilities[argmax] / running >= 1.0 - kPointMassTolerance) {
    std::fill(out.begin(), out.end(), argmax);
    return out;
  }
  for (auto& outcome : out) {
    double u = uniform01(rng) * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    outcome = std::min(idx, last_nonzero);
  }
  return out;
}

std::string outcome_to_bits(std::uint64_t outcome, int n_bits) {
  std::string s(static_cast<std::size_t>(n_bits), '0');
  for (int i = 0; i < n_bits; ++i) {
    if ((outcome >> (n_bits - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

std::uint64_t bits_to_outcome(const std::string& bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring '" + bits + "' is not binary");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

CountsTable::CountsTable(int n_measured, std::uint64_t shots,
                         std::map<std::string, std::uint64_t> counts)
    : n_measured_(n_measured), shots_(shots), counts_(std::move(counts)) {
  if (n_measured < 1) throw std::invalid_argument("counts need at least one measured bit");
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  std::uint64_t total = 0;
  for (const auto& [key, n] : counts_) {
    if (static_cast<int>(key.size()) != n_measured) {
      throw std::invalid_argument("counts key '" + key + "' has wrong length");
    }
    bits_to_outcome(key);
    total += n;
  }
  if (total != shots) throw std::invalid_argument("counts do not sum to shots");
}

CountsTable CountsTable::from_outcomes(int n_measured, std::span<const std::uint64_t> outcomes) {
  std::map<std::string, std::uint64_t> counts;
  for (auto o : outcomes) ++counts[outcome_to_bits(o, n_measured)];
  return CountsTable(n_measured, outcomes.size(), std::move(counts));
}

std::uint64_t CountsTable::count(const std::string& bits) const {
  auto it = counts_.find(bits);
  return it == counts_.end() ? 0 : it->second;
}

std::string CountsTable::mode() const {
  std::string best;
  std::uint64_t best_n = 0;
  for (const auto& [key, n] : counts_) {
    if (n > best_n) {
      best = key;
      best_n = n;
    }
  }
  return best;
}

std::vector<double> CountsTable::frequencies() const {
  std::vector<double> f(std::size_t{1} << n_measured_, 0.0);
  for (const auto& [key, n] : counts_) {
    f[bits_to_outcome(key)] = static_cast<double>(n) / static_cast<double>(shots_);
  }
  return f;
}

}  // namespace zstates
