#include "zstates/zbasis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace zstates {

namespace {

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("Z-states need N >= 2 (got " + std::to_string(n) + ")");
  if (n > kMaxClusterQubits) throw std::invalid_argument("N too large for dense simulation");
}

// Published enumeration orders, verified against the column vectors.
const std::vector<ZPattern> kPatterns2 = {{}, {1}, {2}, {1, 2}};
const std::vector<ZPattern> kPatterns3 = {{}, {3}, {1}, {1, 3}, {2}, {2, 3}, {1, 2}, {1, 2, 3}};

}  // namespace

ZStateIndex ZStateIndex::checked(int n_qubits, std::uint64_t k) {
  check_n(n_qubits);
  if (k >= (std::uint64_t{1} << n_qubits)) {
    throw std::out_of_range("Z-state index " + std::to_string(k) + " out of range for N=" +
                            std::to_string(n_qubits));
  }
  return {n_qubits, k};
}

Statevector cluster_state(int n) {
  check_n(n);
  const std::size_t dim = std::size_t{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  std::vector<Complex> a(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    // Adjacent pairs of set bits.
    int parity = std::popcount(i & (i >> 1)) & 1;
    a[i] = parity ? -amp : amp;
  }
  return Statevector::from_amplitudes(std::move(a));
}

QuantumCircuit cluster_circuit(int n) {
  check_n(n);
  QuantumCircuit c(n);
  for (int q = 1; q <= n; ++q) c.h(q);
  for (int q = 1; q < n; ++q) c.cz(q, q + 1);
  return c;
}

ZPattern z_pattern(int n, std::uint64_t k) {
  ZStateIndex::checked(n, k);
  if (n == 2) return kPatterns2[k];
  if (n == 3) return kPatterns3[k];
  ZPattern p;
  for (int j = 1; j <= n; ++j) {
    if ((k >> (n - j)) & 1U) p.push_back(j);
  }
  return p;
}

std::uint64_t z_index(int n, const ZPattern& pattern) {
  check_n(n);
  ZPattern sorted = pattern;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("Z pattern repeats a qubit");
  }
  for (int q : sorted) {
    if (q < 1 || q > n) throw std::out_of_range("Z pattern qubit out of range");
  }
  if (n == 2 || n == 3) {
    const auto& table = n == 2 ? kPatterns2 : kPatterns3;
    return static_cast<std::uint64_t>(std::find(table.begin(), table.end(), sorted) - table.begin());
  }
  std::uint64_t k = 0;
  for (int q : sorted) k |= std::uint64_t{1} << (n - q);
  return k;
}

Statevector zstate_vector(int n, std::uint64_t k) {
  Statevector s = cluster_state(n);
  for (int q : z_pattern(n, k)) apply_gate_inplace(s.amplitudes(), n, GateInstance::z(q));
  return s;
}

QuantumCircuit zstate_circuit(int n, std::uint64_t k) {
  QuantumCircuit c = cluster_circuit(n);
  for (int q : z_pattern(n, k)) c.z(q);
  return c;
}

BasisReport verify_basis(int n) {
  check_n(n);
  if (n > 8) throw std::invalid_argument("verify_basis supports N <= 8");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Statevector> basis;
  basis.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) basis.push_back(zstate_vector(n, k));
  BasisReport report{n, 0.0, 0.0};
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::uint64_t j = 0; j < count; ++j) {
      double mag = std::abs(basis[i].inner(basis[j]));
      if (i == j) {
        report.max_norm_deviation = std::max(report.max_norm_deviation, std::abs(mag - 1.0));
      } else {
        report.max_off_diagonal = std::max(report.max_off_diagonal, mag);
      }
    }
  }
  return report;
}

std::vector<double> schmidt_coefficients(const Statevector& state, int cut) {
  const int n = state.n_qubits();
  if (cut < 1 || cut >= n) throw std::out_of_range("cut must lie strictly inside the register");
  const Eigen::Index rows = Eigen::Index{1} << cut;
  const Eigen::Index cols = Eigen::Index{1} << (n - cut);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      state.amplitudes().data(), rows, cols);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

}  // namespace zstates
