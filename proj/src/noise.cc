#include "zstates/noise.h"

#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "zstates/statevector.h"

namespace zstates {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " probability must be in [0, 1]");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_probability(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad probability '" + std::string(text) + "' in noise spec");
  }
  return v;
}

}  // namespace

void NoiseModel::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p_readout, "readout");
}

NoiseModel NoiseModel::parse(std::string_view spec) {
  NoiseModel m;
  spec = trim(spec);
  if (spec.empty() || spec == "none") return m;
  bool seen_depol = false, seen_readout = false;
  while (!spec.empty()) {
    auto semi = spec.find(';');
    std::string_view clause = trim(spec.substr(0, semi));
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (clause.empty()) continue;
    auto colon = clause.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("noise clause '" + std::string(clause) + "' lacks ':'");
    }
    auto key = trim(clause.substr(0, colon));
    auto value = clause.substr(colon + 1);
    if (key == "depol" && !seen_depol) {
      auto comma = value.find(',');
      if (comma == std::string_view::npos) {
        throw std::invalid_argument("depol needs two probabilities: depol:<p1>,<p2>");
      }
      m.p1 = parse_probability(value.substr(0, comma));
      m.p2 = parse_probability(value.substr(comma + 1));
      seen_depol = true;
    } else if (key == "readout" && !seen_readout) {
      m.p_readout = parse_probability(value);
      seen_readout = true;
    } else {
      throw std::invalid_argument("unknown or repeated noise clause '" + std::string(key) + "'");
    }
  }
  m.validate();
  return m;
}

std::string NoiseModel::to_spec() const {
  std::ostringstream out;
  out.precision(17);
  out << "depol:" << p1 << "," << p2 << ";readout:" << p_readout;
  return out.str();
}

DensityMatrix apply_depolarizing(DensityMatrix rho, std::span<const int> qubits, double p) {
  check_probability(p, "depolarizing");
  if (qubits.empty()) throw std::invalid_argument("depolarizing needs at least one qubit");
  const int n = rho.n_qubits();
  std::uint64_t target = 0;
  for (int q : qubits) {
    if (q < 1 || q > n) throw std::out_of_range("depolarizing qubit out of range");
    if (target & qubit_mask(n, q)) throw std::invalid_argument("depolarizing: repeated qubit");
    target |= qubit_mask(n, q);
  }
  if (p == 0.0) return rho;

  // sum_{all P} P rho P^dagger = 2^m (Tr_S rho) (x) I_S, so the non-identity
  // part is 2^m (Tr_S rho) (x) I_S - rho.
  const int m = static_cast<int>(qubits.size());
  std::vector<std::uint64_t> sub;  // all assignments of the target bits
  for (std::uint64_t s = target;; s = (s - 1) & target) {
    sub.push_back(s);
    if (s == 0) break;
  }
  const auto& in = rho.entries();
  Eigen::MatrixXcd twirl(in.rows(), in.cols());
  const auto d = static_cast<std::uint64_t>(in.rows());
  for (std::uint64_t c = 0; c < d; ++c) {
    if (c & target) continue;
    for (std::uint64_t r = 0; r < d; ++r) {
      if (r & target) continue;
      Complex sum{};
      for (auto s : sub) sum += in(static_cast<Eigen::Index>(r | s), static_cast<Eigen::Index>(c | s));
      for (auto s1 : sub) {
        for (auto s2 : sub) {
          twirl(static_cast<Eigen::Index>(r | s1), static_cast<Eigen::Index>(c | s2)) =
              s1 == s2 ? sum : Complex{};
        }
      }
    }
  }
  const double weight = p / static_cast<double>((std::uint64_t{1} << (2 * m)) - 1);
  rho.mutable_entries() = (1.0 - p - weight) * in + weight * static_cast<double>(1U << m) * twirl;
  return rho;
}

DensityMatrix evolve_noisy(DensityMatrix rho, const QuantumCircuit& circuit, const NoiseModel& noise) {
  noise.validate();
  if (circuit.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("circuit and density matrix sizes differ");
  }
  for (const auto& g : circuit.gates()) {
    if (!is_unitary(g.kind)) continue;
    evolve_density_inplace(rho, g);
    const double p = is_two_qubit(g.kind) ? noise.p2 : noise.p1;
    if (p > 0.0) rho = apply_depolarizing(std::move(rho), g.targets, p);
  }
  return rho;
}

void apply_readout_flips(std::span<std::uint64_t> outcomes, int n_bits, double p,
                         std::mt19937_64& rng) {
  check_probability(p, "readout");
  if (p == 0.0) return;
  for (auto& o : outcomes) {
    for (int b = 0; b < n_bits; ++b) {
      if (uniform01(rng) < p) o ^= std::uint64_t{1} << b;
    }
  }
}

CountsTable sample_density_counts(const DensityMatrix& rho, std::span<const int> qubits,
                                  std::uint64_t shots, double p_readout, Seed seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (qubits.empty()) throw std::invalid_argument("no qubits to measure");
  auto probs = marginal_probabilities(rho.diagonal_probabilities(), rho.n_qubits(), qubits);
  std::mt19937_64 rng(seed);
  auto outcomes = sample_outcomes(probs, shots, rng);
  const int k = static_cast<int>(qubits.size());
  apply_readout_flips(outcomes, k, p_readout, rng);
  return CountsTable::from_outcomes(k, outcomes);
}

CountsTable noisy_counts(const QuantumCircuit& circuit, const NoiseModel& noise,
                         std::span<const int> qubits, std::uint64_t shots, Seed seed) {
  noise.validate();
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  std::vector<int> measured(qubits.begin(), qubits.end());
  if (measured.empty()) measured = circuit.measured_qubits_by_clbit();
  if (measured.empty()) throw std::invalid_argument("no qubits to measure");
  const QuantumCircuit unitary = circuit.unitary_part();

  if (noise.is_zero()) {
    Statevector psi = run_circuit(Statevector(circuit.n_qubits()), unitary);
    return sample_counts(psi, measured, shots, seed);
  }
  if (circuit.n_qubits() > kMaxDensityQubits) {
    throw std::invalid_argument("noisy simulation supports at most " +
                                std::to_string(kMaxDensityQubits) + " qubits");
  }
  DensityMatrix rho = evolve_noisy(DensityMatrix(circuit.n_qubits()), unitary, noise);
  return sample_density_counts(rho, measured, shots, noise.p_readout, seed);
}

}  // namespace zstates
