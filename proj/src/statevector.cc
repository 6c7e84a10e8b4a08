#include "zstates/statevector.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zstates {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_power_of_two(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
}

int log2_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

template <typename F>
void for_each_pair(std::span<Complex> a, std::uint64_t mask, F&& f) {
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (!(i & mask)) f(a[i], a[i | mask]);
  }
}

void apply_h(std::span<Complex> a, std::uint64_t mask) {
  const double r = 1.0 / std::numbers::sqrt2;
  for_each_pair(a, mask, [r](Complex& lo, Complex& hi) {
    Complex x = lo, y = hi;
    lo = r * (x + y);
    hi = r * (x - y);
  });
}

void apply_phase(std::span<Complex> a, std::uint64_t mask, Complex phase) {
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (i & mask) a[i] *= phase;
  }
}

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 1 || qubit > n_qubits) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " outside [1, " +
                            std::to_string(n_qubits) + "]");
  }
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("qubit count must be in [1, 30]");
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
  amplitudes_[0] = 1.0;
}

Statevector Statevector::basis(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes, bool normalize) {
  check_power_of_two(amplitudes.size());
  Statevector s;
  s.n_qubits_ = log2_dim(amplitudes.size());
  s.amplitudes_ = std::move(amplitudes);
  double n2 = s.norm_squared();
  if (normalize) {
    if (n2 <= 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    double inv = 1.0 / std::sqrt(n2);
    for (auto& a : s.amplitudes_) a *= inv;
  } else if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return s;
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

Complex Statevector::inner(const Statevector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("inner product: dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return s;
}

Statevector Statevector::tensor(const Statevector& other) const {
  Statevector out;
  out.n_qubits_ = n_qubits_ + other.n_qubits_;
  out.amplitudes_.resize(dim() * other.dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < other.dim(); ++j) {
      out.amplitudes_[i * other.dim() + j] = amplitudes_[i] * other.amplitudes_[j];
    }
  }
  return out;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = std::norm(amplitudes_[i]);
  return p;
}

Statevector Statevector::reversed_qubits() const {
  Statevector out = *this;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    std::uint64_t r = 0;
    for (int b = 0; b < n_qubits_; ++b) {
      if ((i >> b) & 1U) r |= std::uint64_t{1} << (n_qubits_ - 1 - b);
    }
    out.amplitudes_[r] = amplitudes_[i];
  }
  return out;
}

double state_overlap(const Statevector& a, const Statevector& b) { return std::norm(a.inner(b)); }

void apply_gate_inplace(std::span<Complex> a, int n, const GateInstance& gate, bool conjugate) {
  if (!is_unitary(gate.kind)) {
    throw std::invalid_argument(std::string(gate_name(gate.kind)) + " is not a unitary gate");
  }
  if (a.size() != (std::size_t{1} << n)) throw std::invalid_argument("buffer size mismatch");
  validate_gate(gate, n, 0);
  const std::uint64_t m0 = qubit_mask(n, gate.targets[0]);
  switch (gate.kind) {
    case GateKind::H:
      apply_h(a, m0);
      break;
    case GateKind::X:
      for_each_pair(a, m0, [](Complex& lo, Complex& hi) { std::swap(lo, hi); });
      break;
    case GateKind::Z:
      apply_phase(a, m0, -1.0);
      break;
    case GateKind::S:
      apply_phase(a, m0, conjugate ? -kI : kI);
      break;
    case GateKind::Sdg:
      apply_phase(a, m0, conjugate ? kI : -kI);
      break;
    case GateKind::CNOT: {
      const std::uint64_t mt = qubit_mask(n, gate.targets[1]);
      for (std::uint64_t i = 0; i < a.size(); ++i) {
        if ((i & m0) && !(i & mt)) std::swap(a[i], a[i | mt]);
      }
      break;
    }
    case GateKind::CZ: {
      const std::uint64_t both = m0 | qubit_mask(n, gate.targets[1]);
      for (std::uint64_t i = 0; i < a.size(); ++i) {
        if ((i & both) == both) a[i] = -a[i];
      }
      break;
    }
    default:
      break;
  }
}

void apply_pauli_inplace(std::span<Complex> a, int n, char letter, int qubit, bool conjugate) {
  check_qubit(n, qubit);
  const std::uint64_t m = qubit_mask(n, qubit);
  switch (letter) {
    case 'I':
      break;
    case 'X':
      for_each_pair(a, m, [](Complex& lo, Complex& hi) { std::swap(lo, hi); });
      break;
    case 'Y': {
      // Y = [[0, -i], [i, 0]]
      const Complex up = conjugate ? kI : -kI;
      for_each_pair(a, m, [up](Complex& lo, Complex& hi) {
        Complex x = lo;
        lo = up * hi;
        hi = -up * x;
      });
      break;
    }
    case 'Z':
      apply_phase(a, m, -1.0);
      break;
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

Statevector apply_gate(Statevector state, const GateInstance& gate) {
  apply_gate_inplace(state.amplitudes(), state.n_qubits(), gate);
  return state;
}

Statevector run_circuit(Statevector state, const QuantumCircuit& circuit) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.n_qubits()) +
                                " qubits, state has " + std::to_string(state.n_qubits()));
  }
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Barrier) continue;
    if (g.kind == GateKind::Measure) {
      throw std::invalid_argument("run_circuit: measurement must be handled separately");
    }
    apply_gate_inplace(state.amplitudes(), state.n_qubits(), g);
  }
  return state;
}

std::vector<double> marginal_probabilities(std::span<const double> full, int n,
                                           std::span<const int> qubits) {
  std::vector<std::uint64_t> masks;
  for (int q : qubits) {
    check_qubit(n, q);
    masks.push_back(qubit_mask(n, q));
  }
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      if (masks[i] == masks[j]) throw std::invalid_argument("measured qubits must be distinct");
    }
  }
  const std::size_t k = masks.size();
  std::vector<double> out(std::size_t{1} << k, 0.0);
  for (std::uint64_t i = 0; i < full.size(); ++i) {
    std::uint64_t o = 0;
    for (std::size_t b = 0; b < k; ++b) o = (o << 1) | static_cast<std::uint64_t>((i & masks[b]) != 0);
    out[o] += full[i];
  }
  return out;
}

MeasurementResult measure_and_collapse(const Statevector& state, std::span<const int> qubits,
                                       std::mt19937_64& rng) {
  if (qubits.empty()) throw std::invalid_argument("no qubits to measure");
  const int n = state.n_qubits();
  auto probs = marginal_probabilities(state.probabilities(), n, qubits);
  const std::uint64_t outcome = sample_outcomes(probs, 1, rng).front();
  const double p = probs[outcome];
  if (!(p > 0.0)) throw std::runtime_error("measurement projected onto a zero-probability outcome");

  const int k = static_cast<int>(qubits.size());
  Statevector post = state;
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < post.dim(); ++i) {
    bool keep = true;
    for (int b = 0; b < k && keep; ++b) {
      bool want = (outcome >> (k - 1 - b)) & 1U;
      bool have = (i & qubit_mask(n, qubits[b])) != 0;
      keep = want == have;
    }
    post[i] = keep ? post[i] * scale : Complex{};
  }
  return {outcome_to_bits(outcome, k), std::move(post)};
}

MeasurementResult measure_and_collapse(const Statevector& state, std::span<const int> qubits,
                                       Seed seed) {
  std::mt19937_64 rng(seed);
  return measure_and_collapse(state, qubits, rng);
}

CountsTable sample_counts(const Statevector& state, std::span<const int> qubits,
                          std::uint64_t shots, Seed seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (qubits.empty()) throw std::invalid_argument("no qubits to measure");
  auto probs = marginal_probabilities(state.probabilities(), state.n_qubits(), qubits);
  std::mt19937_64 rng(seed);
  auto outcomes = sample_outcomes(probs, shots, rng);
  return CountsTable::from_outcomes(static_cast<int>(qubits.size()), outcomes);
}

double pauli_expectation(const Statevector& state, const PauliString& pauli) {
  if (pauli.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("Pauli length does not match qubit count");
  }
  Statevector applied = state;
  for (int q = 1; q <= pauli.n_qubits(); ++q) {
    apply_pauli_inplace(applied.amplitudes(), state.n_qubits(), pauli[q], q);
  }
  return state.inner(applied).real();
}

}  // namespace zstates
