#include "zstates/density_matrix.h"

#include <stdexcept>

namespace zstates {

namespace {

int side_to_qubits(Eigen::Index side) {
  if (side < 2 || (side & (side - 1)) != 0) {
    throw std::invalid_argument("density matrix side must be a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < side) ++n;
  return n;
}

// Column-major storage viewed as a 2n-qubit vector: column bits are qubits
// 1..n, row bits are qubits n+1..2n.
std::span<Complex> as_vector(Eigen::MatrixXcd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

GateInstance shifted(GateInstance g, int offset) {
  for (int& q : g.targets) q += offset;
  return g;
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 13) throw std::invalid_argument("qubit count must be in [1, 13]");
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  entries_ = Eigen::MatrixXcd::Zero(d, d);
  entries_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries, bool raw)
    : entries_(std::move(entries)), raw_(raw) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("density matrix not square");
  n_qubits_ = side_to_qubits(entries_.rows());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d), false);
}

double DensityMatrix::hermitian_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

bool DensityMatrix::is_physical(double tol) const {
  if (hermitian_defect() > tol) return false;
  if (std::abs(trace() - Complex{1.0}) > tol) return false;
  return eigenvalues().minCoeff() >= -tol;
}

std::vector<double> DensityMatrix::diagonal_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(dim()));
  for (Eigen::Index i = 0; i < dim(); ++i) p[i] = entries_(i, i).real();
  return p;
}

double DensityMatrix::expectation(const PauliString& pauli) const {
  if (pauli.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Pauli length does not match qubit count");
  }
  // P acting on the row index gives P rho.
  Eigen::MatrixXcd m = entries_;
  for (int q = 1; q <= n_qubits_; ++q) {
    apply_pauli_inplace(as_vector(m), 2 * n_qubits_, pauli[q], n_qubits_ + q);
  }
  return m.trace().real();
}

DensityMatrix DensityMatrix::partial_trace(std::span<const int> keep) const {
  const int n = n_qubits_;
  std::vector<std::uint64_t> keep_masks;
  std::uint64_t keep_all = 0;
  for (int q : keep) {
    if (q < 1 || q > n) throw std::out_of_range("partial_trace: qubit out of range");
    keep_masks.push_back(qubit_mask(n, q));
    if (keep_all & keep_masks.back()) throw std::invalid_argument("partial_trace: repeated qubit");
    keep_all |= keep_masks.back();
  }
  const int k = static_cast<int>(keep.size());
  if (k == 0) throw std::invalid_argument("partial_trace: nothing kept");
  auto reduced_index = [&](std::uint64_t i) {
    std::uint64_t r = 0;
    for (auto m : keep_masks) r = (r << 1) | static_cast<std::uint64_t>((i & m) != 0);
    return r;
  };
  const Eigen::Index d = Eigen::Index{1} << k;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index r = 0; r < dim(); ++r) {
    for (Eigen::Index c = 0; c < dim(); ++c) {
      if ((static_cast<std::uint64_t>(r) & ~keep_all) != (static_cast<std::uint64_t>(c) & ~keep_all)) {
        continue;
      }
      out(reduced_index(r), reduced_index(c)) += entries_(r, c);
    }
  }
  return DensityMatrix(std::move(out), raw_);
}

DensityMatrix DensityMatrix::reversed_qubits() const {
  std::vector<int> order;
  for (int q = n_qubits_; q >= 1; --q) order.push_back(q);
  DensityMatrix out = partial_trace(order);
  out.raw_ = raw_;
  return out;
}

DensityMatrix density_from_state(const Statevector& state) {
  Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(),
                                       static_cast<Eigen::Index>(state.dim()));
  return DensityMatrix(v * v.adjoint(), false);
}

void evolve_density_inplace(DensityMatrix& rho, const GateInstance& gate) {
  if (gate.kind == GateKind::Barrier) return;
  if (!is_unitary(gate.kind)) throw std::invalid_argument("measure is not a unitary gate");
  const int n = rho.n_qubits();
  validate_gate(gate, n, 0);
  auto v = as_vector(rho.mutable_entries());
  apply_gate_inplace(v, 2 * n, shifted(gate, n));
  apply_gate_inplace(v, 2 * n, gate, /*conjugate=*/true);
}

DensityMatrix evolve_density(DensityMatrix rho, const QuantumCircuit& circuit) {
  if (circuit.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("circuit and density matrix sizes differ");
  }
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Measure) {
      throw std::invalid_argument("evolve_density: measurement must be handled separately");
    }
    evolve_density_inplace(rho, g);
  }
  return rho;
}

void conjugate_by_pauli_inplace(Eigen::MatrixXcd& m, int n, char letter, int qubit) {
  auto v = as_vector(m);
  apply_pauli_inplace(v, 2 * n, letter, n + qubit);
  apply_pauli_inplace(v, 2 * n, letter, qubit, /*conjugate=*/true);
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace zstates
