#include "zstates/tomography.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "zstates/discrimination.h"
#include "zstates/zbasis.h"

namespace zstates {

namespace {

std::uint64_t support_mask(const PauliString& p) {
  const int n = p.n_qubits();
  std::uint64_t m = 0;
  for (int q : p.support()) m |= std::uint64_t{1} << (n - q);
  return m;
}

bool covers(const std::string& setting, const PauliString& p) {
  for (int q : p.support()) {
    if (setting[q - 1] != p[q]) return false;
  }
  return true;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  const int n = p.n_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    std::span<Complex> col(m.col(c).data(), static_cast<std::size_t>(d));
    for (int q = 1; q <= n; ++q) apply_pauli_inplace(col, n, p[q], q);
  }
  return m;
}

}  // namespace

std::uint64_t setting_stream(const std::string& setting) {
  std::uint64_t code = 0;
  for (char c : setting) {
    auto pos = std::string_view("XYZ").find(c);
    if (pos == std::string_view::npos) {
      throw std::invalid_argument("setting '" + setting + "' uses letters outside XYZ");
    }
    code = code * 3 + pos;
  }
  return code;
}

TomographyPlan TomographyPlan::complete(int n_qubits, std::uint64_t shots_per_setting) {
  if (n_qubits < 1 || n_qubits > 6) throw std::invalid_argument("tomography supports 1..6 qubits");
  TomographyPlan plan{n_qubits, {}, shots_per_setting};
  std::size_t total = 1;
  for (int i = 0; i < n_qubits; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::string s(static_cast<std::size_t>(n_qubits), 'X');
    std::size_t rest = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      s[q] = "XYZ"[rest % 3];
      rest /= 3;
    }
    plan.settings.push_back(std::move(s));
  }
  return plan;
}

void TomographyPlan::validate() const {
  if (shots_per_setting == 0) throw std::invalid_argument("shots per setting must be >= 1");
  std::set<std::string> seen;
  for (const auto& s : settings) {
    if (static_cast<int>(s.size()) != n_qubits) {
      throw std::invalid_argument("setting '" + s + "' has wrong length");
    }
    if (s.find_first_not_of("XYZ") != std::string::npos) {
      throw std::invalid_argument("setting '" + s + "' uses letters outside XYZ");
    }
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate setting '" + s + "'");
  }
}

QuantumCircuit basis_rotation(const std::string& setting, std::span<const int> qubits, int n_total) {
  if (setting.size() != qubits.size()) {
    throw std::invalid_argument("setting length does not match measured qubits");
  }
  QuantumCircuit c(n_total);
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    switch (setting[i]) {
      case 'X': c.h(qubits[i]); break;
      case 'Y': c.sdg(qubits[i]).h(qubits[i]); break;
      case 'Z': break;
      default: throw std::invalid_argument("setting '" + setting + "' uses letters outside XYZ");
    }
  }
  return c;
}

SettingData SettingData::from_counts(const std::string& setting, const CountsTable& counts) {
  if (static_cast<int>(setting.size()) != counts.n_measured()) {
    throw std::invalid_argument("setting '" + setting + "' does not match counts width");
  }
  return {setting, counts.frequencies(), static_cast<double>(counts.shots())};
}

ExpectationMap estimate_expectations(std::span<const SettingData> data, int n) {
  for (const auto& d : data) {
    if (!(d.weight > 0.0)) throw std::invalid_argument("setting '" + d.setting + "' has no shots");
    if (static_cast<int>(d.setting.size()) != n ||
        d.probabilities.size() != (std::size_t{1} << n)) {
      throw std::invalid_argument("setting '" + d.setting + "' has wrong width");
    }
  }
  ExpectationMap out;
  for (const auto& p : all_pauli_strings(n)) {
    if (p.is_identity()) {
      out[p] = 1.0;
      continue;
    }
    const std::uint64_t mask = support_mask(p);
    double sum = 0.0, weight = 0.0;
    for (const auto& d : data) {
      if (!covers(d.setting, p)) continue;
      double e = 0.0;
      for (std::uint64_t o = 0; o < d.probabilities.size(); ++o) {
        e += (std::popcount(o & mask) & 1) ? -d.probabilities[o] : d.probabilities[o];
      }
      sum += d.weight * e;
      weight += d.weight;
    }
    if (weight == 0.0) {
      throw std::invalid_argument("missing setting: nothing covers " + p.letters());
    }
    out[p] = sum / weight;
  }
  return out;
}

ExpectationMap estimate_expectations(const std::map<std::string, CountsTable>& counts) {
  if (counts.empty()) throw std::invalid_argument("no settings");
  std::vector<SettingData> data;
  for (const auto& [setting, table] : counts) data.push_back(SettingData::from_counts(setting, table));
  return estimate_expectations(data, static_cast<int>(counts.begin()->first.size()));
}

DensityMatrix linear_inversion(const ExpectationMap& expectations, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& p : all_pauli_strings(n)) {
    auto it = expectations.find(p);
    if (it == expectations.end()) {
      throw std::invalid_argument("incomplete expectation map: missing " + p.letters());
    }
    if (it->second != 0.0) rho += it->second * pauli_matrix(p);
  }
  rho /= static_cast<double>(d);
  return DensityMatrix(std::move(rho), /*raw=*/true);
}

DensityMatrix project_to_physical(const DensityMatrix& rho) {
  const double scale = std::max(1.0, rho.entries().cwiseAbs().maxCoeff());
  if (rho.hermitian_defect() > 1e-10 * scale) {
    throw std::invalid_argument("project_to_physical: input is not Hermitian");
  }
  Eigen::MatrixXcd h = 0.5 * (rho.entries() + rho.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd mu = solver.eigenvalues();

  // Euclidean projection of the spectrum onto {lambda >= 0, sum lambda = 1}.
  std::vector<double> sorted(mu.data(), mu.data() + mu.size());
  std::sort(sorted.rbegin(), sorted.rend());
  double running = 0.0, shift = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) shift = candidate;
  }
  Eigen::VectorXd lambda = (mu.array() - shift).cwiseMax(0.0);
  Eigen::MatrixXcd out = solver.eigenvectors() * lambda.cast<Complex>().asDiagonal() *
                         solver.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(std::move(out), /*raw=*/false);
}

FidelityResult fidelity_pure(const Statevector& target, const DensityMatrix& rho,
                             FidelityConvention convention) {
  if (static_cast<Eigen::Index>(target.dim()) != rho.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXcd> psi(target.amplitudes().data(), rho.dim());
  double overlap = psi.dot(rho.entries() * psi).real();
  if (!rho.raw()) {
    overlap = std::clamp(overlap, 0.0, 1.0);
    return {convention == FidelityConvention::Sqrt ? std::sqrt(overlap) : overlap, false};
  }
  if (convention == FidelityConvention::Squared) return {overlap, true};
  return {overlap >= 0.0 ? std::sqrt(overlap) : std::numeric_limits<double>::quiet_NaN(), true};
}

TomographyReport tomography_end_to_end(const QuantumCircuit& preparation,
                                       std::span<const int> measured, const Statevector& target,
                                       const TomographyPlan& plan, const NoiseModel& noise,
                                       Seed seed) {
  plan.validate();
  noise.validate();
  if (static_cast<int>(measured.size()) != plan.n_qubits) {
    throw std::invalid_argument("plan width does not match measured qubits");
  }
  if (target.n_qubits() != plan.n_qubits) {
    throw std::invalid_argument("target width does not match measured qubits");
  }
  const int n_total = preparation.n_qubits();
  const int k = plan.n_qubits;
  const QuantumCircuit prep = preparation.unitary_part();

  std::map<std::string, CountsTable> counts;
  std::vector<SettingData> data;
  if (noise.is_zero()) {
    const Statevector psi = run_circuit(Statevector(n_total), prep);
    for (const auto& s : plan.settings) {
      Statevector rotated = run_circuit(psi, basis_rotation(s, measured, n_total));
      auto table = sample_counts(rotated, measured, plan.shots_per_setting, derive_seed(seed, setting_stream(s)));
      data.push_back(SettingData::from_counts(s, table));
      counts.emplace(s, std::move(table));
    }
  } else {
    if (n_total > kMaxDensityQubits) {
      throw std::invalid_argument("noisy tomography supports at most " +
                                  std::to_string(kMaxDensityQubits) + " qubits");
    }
    const DensityMatrix rho = evolve_noisy(DensityMatrix(n_total), prep, noise);
    for (const auto& s : plan.settings) {
      DensityMatrix rotated = evolve_noisy(rho, basis_rotation(s, measured, n_total), noise);
      auto table = sample_density_counts(rotated, measured, plan.shots_per_setting,
                                         noise.p_readout, derive_seed(seed, setting_stream(s)));
      data.push_back(SettingData::from_counts(s, table));
      counts.emplace(s, std::move(table));
    }
  }

  DensityMatrix raw = linear_inversion(estimate_expectations(data, k), k);
  DensityMatrix physical = project_to_physical(raw);
  TomographyReport report{raw, physical, target, std::move(counts), {}, {}, {}, {}};
  report.raw_sqrt = fidelity_pure(target, raw, FidelityConvention::Sqrt);
  report.raw_squared = fidelity_pure(target, raw, FidelityConvention::Squared);
  report.physical_sqrt = fidelity_pure(target, physical, FidelityConvention::Sqrt);
  report.physical_squared = fidelity_pure(target, physical, FidelityConvention::Squared);
  return report;
}

std::string expected_readout(int n, std::uint64_t k) {
  ZStateIndex::checked(n, k);
  for (std::uint64_t o = 0; o < (std::uint64_t{1} << n); ++o) {
    auto bits = outcome_to_bits(o, n);
    if (decode_ancilla(bits, n).k == k) return bits;
  }
  throw std::logic_error("decode table is not surjective");
}

TomographyReport discrimination_tomography(int n, std::uint64_t k, TomographyTarget target,
                                           std::uint64_t shots_per_setting,
                                           const NoiseModel& noise, Seed seed) {
  const auto dc = build_discrimination_circuit(n);
  const QuantumCircuit prep = prepare_and_discriminate(n, k);
  const auto plan = TomographyPlan::complete(n, shots_per_setting);
  if (target == TomographyTarget::State) {
    return tomography_end_to_end(prep, dc.data_qubits(), zstate_vector(n, k), plan, noise, seed);
  }
  const auto ancilla_target = Statevector::basis(n, bits_to_outcome(expected_readout(n, k)));
  return tomography_end_to_end(prep, dc.readout_qubits(), ancilla_target, plan, noise, seed);
}

}  // namespace zstates
