#include "zstates/discrimination.h"

#include <map>
#include <stdexcept>

namespace zstates {

namespace {

void check_n(int n) {
  if (n < 2) throw std::invalid_argument("discrimination needs N >= 2");
  if (2 * n > 24) throw std::invalid_argument("N too large for dense simulation");
}

// Readout strings (K_N ... K_1) for the published enumerations. N = 2 is the
// printed ancilla table; N = 3 is frozen from exhaustive simulation.
const std::map<std::string, std::uint64_t> kDecode2 = {
    {"00", 0}, {"01", 1}, {"10", 2}, {"11", 3}};
const std::map<std::string, std::uint64_t> kDecode3 = {
    {"000", 0}, {"100", 1}, {"001", 2}, {"101", 3},
    {"010", 4}, {"110", 5}, {"011", 6}, {"111", 7}};

}  // namespace

std::vector<PauliString> stabilizer_generators(int n) {
  check_n(n);
  std::vector<PauliString> out;
  for (int a = 1; a <= n; ++a) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[a - 1] = 'X';
    if (a > 1) s[a - 2] = 'Z';
    if (a < n) s[a] = 'Z';
    out.emplace_back(std::move(s));
  }
  return out;
}

std::vector<int> DiscriminationCircuit::data_qubits() const {
  std::vector<int> q(n_data);
  for (int i = 0; i < n_data; ++i) q[i] = i + 1;
  return q;
}

std::vector<int> DiscriminationCircuit::readout_qubits() const {
  std::vector<int> q;
  for (int i = n_data; i >= 1; --i) q.push_back(ancilla_qubit(i));
  return q;
}

DiscriminationCircuit build_discrimination_circuit(int n) {
  check_n(n);
  DiscriminationCircuit dc{n, QuantumCircuit(2 * n, n), stabilizer_generators(n)};
  auto& c = dc.circuit;
  for (int i = 1; i <= n; ++i) {
    const int anc = dc.ancilla_qubit(i);
    // Z-parity of the neighbours of data qubit i.
    if (i > 1) c.cnot(i - 1, anc);
    if (i < n) c.cnot(i + 1, anc);
    // Phase kickback of X on data qubit i.
    c.h(anc);
    c.cnot(anc, i);
    c.h(anc);
    c.measure(anc, n + 1 - i);
  }
  return dc;
}

QuantumCircuit prepare_and_discriminate(int n, std::uint64_t k) {
  auto dc = build_discrimination_circuit(n);
  QuantumCircuit full(2 * n, n);
  full.append(zstate_circuit(n, k), dc.data_qubits());
  full.append(dc.circuit);
  return full;
}

ZStateIndex decode_ancilla(const std::string& bits, int n) {
  check_n(n);
  if (static_cast<int>(bits.size()) != n) {
    throw std::invalid_argument("ancilla string '" + bits + "' must have length " +
                                std::to_string(n));
  }
  bits_to_outcome(bits);
  if (n == 2) return ZStateIndex::checked(n, kDecode2.at(bits));
  if (n == 3) return ZStateIndex::checked(n, kDecode3.at(bits));
  // Position p holds K_{N-p}; K_j carries weight 2^(N-j) = 2^p.
  std::uint64_t k = 0;
  for (int p = 0; p < n; ++p) {
    if (bits[p] == '1') k |= std::uint64_t{1} << p;
  }
  return ZStateIndex::checked(n, k);
}

std::vector<double> ancilla_distribution(const Statevector& data) {
  const int n = data.n_qubits();
  auto dc = build_discrimination_circuit(n);
  Statevector full = run_circuit(data.tensor(Statevector(n)), dc.circuit.unitary_part());
  const auto readout = dc.readout_qubits();
  return marginal_probabilities(full.probabilities(), 2 * n, readout);
}

DiscriminationResult discriminate(const Statevector& data, std::mt19937_64& rng) {
  const int n = data.n_qubits();
  auto dc = build_discrimination_circuit(n);
  Statevector full = run_circuit(data.tensor(Statevector(n)), dc.circuit.unitary_part());
  const auto readout = dc.readout_qubits();
  auto measured = measure_and_collapse(full, readout, rng);

  // Ancilla register value in the low N bits of the full index.
  std::uint64_t anc_index = 0;
  for (std::size_t b = 0; b < readout.size(); ++b) {
    if (measured.bits[b] == '1') anc_index |= qubit_mask(2 * n, readout[b]);
  }
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::uint64_t d = 0; d < amps.size(); ++d) {
    amps[d] = measured.post_state[(d << n) | anc_index];
  }
  return {decode_ancilla(measured.bits, n), measured.bits,
          Statevector::from_amplitudes(std::move(amps), /*normalize=*/true)};
}

DiscriminationResult discriminate(const Statevector& data, Seed seed) {
  std::mt19937_64 rng(seed);
  return discriminate(data, rng);
}

}  // namespace zstates
