#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "zstates/circuit.h"
#include "zstates/pauli.h"
#include "zstates/statevector.h"

namespace zstates {

// 2^n x 2^n complex matrix with the same basis ordering as Statevector.
// Physical matrices are Hermitian, trace one and PSD; tomographic estimates
// may break positivity and are marked raw.
class DensityMatrix {
 public:
  // |0...0><0...0|
  explicit DensityMatrix(int n_qubits);
  // Throws unless square with a power-of-two side.
  DensityMatrix(Eigen::MatrixXcd entries, bool raw);

  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Eigen::MatrixXcd& mutable_entries() { return entries_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }
  bool raw() const { return raw_; }
  void set_raw(bool raw) { raw_ = raw; }

  Complex trace() const { return entries_.trace(); }
  // max_ij |rho_ij - conj(rho_ji)|
  double hermitian_defect() const;
  // Eigenvalues of the Hermitian part, ascending.
  Eigen::VectorXd eigenvalues() const;
  // Hermitian, trace one and eigenvalues >= -tol, all within tol.
  bool is_physical(double tol = 1e-10) const;
  std::vector<double> diagonal_probabilities() const;
  // Re tr(P rho)
  double expectation(const PauliString& pauli) const;
  // Reduced matrix on `keep` (keep[0] becomes qubit 1).
  DensityMatrix partial_trace(std::span<const int> keep) const;
  DensityMatrix reversed_qubits() const;

 private:
  int n_qubits_ = 0;
  Eigen::MatrixXcd entries_;
  bool raw_ = false;
};

DensityMatrix density_from_state(const Statevector& state);

// rho -> U rho U^dagger for one gate; barriers are no-ops, Measure throws.
void evolve_density_inplace(DensityMatrix& rho, const GateInstance& gate);
DensityMatrix evolve_density(DensityMatrix rho, const QuantumCircuit& circuit);

// m -> P m P^dagger for a single-qubit Pauli letter on `qubit`.
void conjugate_by_pauli_inplace(Eigen::MatrixXcd& m, int n_qubits, char letter, int qubit);

// Max entrywise |a - b|.
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace zstates
