#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_util.h"
#include "zstates/statevector.h"

using namespace zstates;
using namespace zstates::testing;

namespace {

void expect_state_near(const Statevector& s, const std::vector<Complex>& ref, double tol = 1e-12) {
  ASSERT_EQ(s.dim(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(s[i].real(), ref[i].real(), tol) << "i=" << i;
    EXPECT_NEAR(s[i].imag(), ref[i].imag(), tol) << "i=" << i;
  }
}

}  // namespace

TEST(ApplyGate, HadamardOnZero) {
  const double r = 1.0 / std::numbers::sqrt2;
  expect_state_near(apply_gate(Statevector(1), GateInstance::h(1)), {r, r});
}

TEST(ApplyGate, CnotFlipsTargetWhenControlSet) {
  auto s = apply_gate(Statevector::basis(2, 0b10), GateInstance::cnot(1, 2));
  expect_state_near(s, {0, 0, 0, 1});
}

TEST(ApplyGate, ZOnQubitOneTurnsClusterIntoFirstZState) {
  auto s = apply_gate(from_signs({1, 1, 1, -1}), GateInstance::z(1));
  expect_state_near(s, {0.5, 0.5, -0.5, 0.5});
}

TEST(ApplyGate, RejectsBadInput) {
  EXPECT_THROW(apply_gate(Statevector(2), GateInstance::h(3)), std::out_of_range);
  EXPECT_THROW(apply_gate(Statevector(2), GateInstance::h(0)), std::out_of_range);
  EXPECT_THROW(apply_gate(Statevector(2), GateInstance::measure(1, 1)), std::invalid_argument);
  EXPECT_THROW(apply_gate(Statevector(2), GateInstance::cnot(1, 1)), std::invalid_argument);
}

TEST(ApplyGate, MatchesKroneckerOracleForEveryGateAndPosition) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    std::vector<GateInstance> gates;
    for (int q = 1; q <= n; ++q) {
      for (auto g : {GateInstance::h(q), GateInstance::x(q), GateInstance::z(q), GateInstance::s(q),
                     GateInstance::sdg(q)}) {
        gates.push_back(g);
      }
      for (int t = 1; t <= n; ++t) {
        if (t == q) continue;
        gates.push_back(GateInstance::cnot(q, t));
        gates.push_back(GateInstance::cz(q, t));
      }
    }
    for (const auto& g : gates) {
      Statevector psi = random_state(n, rng);
      Eigen::VectorXcd expected = gate_matrix(g, n) * to_eigen(psi);
      Eigen::VectorXcd got = to_eigen(apply_gate(psi, g));
      EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12) << to_string(g) << " n=" << n;
    }
  }
}

TEST(ApplyGate, GateAlgebraOnAllBasisStates) {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t b = 0; b < (1u << n); ++b) {
      for (int q = 1; q <= n; ++q) {
        auto basis = Statevector::basis(n, b);
        // H H = I
        QuantumCircuit hh(n);
        hh.h(q).h(q);
        EXPECT_LT(1.0 - state_overlap(run_circuit(basis, hh), basis), 1e-12);
        // Z = H X H, compared as vectors (phase included)
        QuantumCircuit hxh(n);
        hxh.h(q).x(q).h(q);
        auto a = to_eigen(run_circuit(basis, hxh));
        auto z = to_eigen(apply_gate(basis, GateInstance::z(q)));
        EXPECT_LT((a - z).cwiseAbs().maxCoeff(), 1e-12);
        for (int t = 1; t <= n; ++t) {
          if (t == q) continue;
          QuantumCircuit hch(n);
          hch.h(t).cnot(q, t).h(t);
          auto lhs = to_eigen(apply_gate(basis, GateInstance::cz(q, t)));
          auto rhs = to_eigen(run_circuit(basis, hch));
          EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
        }
      }
    }
  }
}

TEST(RunCircuit, EmptyCircuitIsIdentity) {
  std::mt19937_64 rng(3);
  auto psi = random_state(3, rng);
  auto out = run_circuit(psi, QuantumCircuit(3));
  EXPECT_EQ(to_eigen(out), to_eigen(psi));
}

TEST(RunCircuit, PreservesNormForRandomCircuits) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 6;
    auto out = run_circuit(random_state(n, rng), random_circuit(n, 40, rng));
    EXPECT_LT(std::abs(out.norm_squared() - 1.0), 1e-12);
  }
}

TEST(RunCircuit, MatchesOracleForRandomCircuits) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 4;
    auto c = random_circuit(n, 25, rng);
    auto psi = random_state(n, rng);
    Eigen::VectorXcd expected = circuit_matrix(c) * to_eigen(psi);
    EXPECT_LT((to_eigen(run_circuit(psi, c)) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RunCircuit, Errors) {
  EXPECT_THROW(run_circuit(Statevector(2), QuantumCircuit(3)), std::invalid_argument);
  QuantumCircuit with_measure(2, 1);
  with_measure.measure(1, 1);
  EXPECT_THROW(run_circuit(Statevector(2), with_measure), std::invalid_argument);
  QuantumCircuit with_barrier(2);
  with_barrier.h(1).barrier({1, 2});
  EXPECT_NO_THROW(run_circuit(Statevector(2), with_barrier));
}

TEST(Statevector, ConstructionChecks) {
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(Statevector::from_amplitudes({0.0, 0.0}, true), std::invalid_argument);
  EXPECT_THROW(Statevector::basis(2, 4), std::out_of_range);
  EXPECT_EQ(Statevector::from_amplitudes({3.0, 4.0}, true)[1], Complex(0.8));
}

TEST(Statevector, ReversedQubits) {
  auto s = Statevector::basis(3, 0b110).reversed_qubits();
  EXPECT_EQ(s[0b011], Complex(1.0));
  auto z = from_signs({1, 1, -1, 1}).reversed_qubits();
  EXPECT_NEAR(z[1].real(), -0.5, 1e-15);
  EXPECT_NEAR(z[2].real(), 0.5, 1e-15);
}

TEST(MeasureAndCollapse, CertainOutcomeLeavesStateUntouched) {
  std::mt19937_64 rng(8);
  auto psi = Statevector(1).tensor(random_state(2, rng));
  const int q1[] = {1};
  for (Seed seed = 0; seed < 20; ++seed) {
    auto r = measure_and_collapse(psi, q1, seed);
    EXPECT_EQ(r.bits, "0");
    EXPECT_LT((to_eigen(r.post_state) - to_eigen(psi)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MeasureAndCollapse, BornRuleFrequencyOfPlusState) {
  auto plus = apply_gate(Statevector(1), GateInstance::h(1));
  const int q1[] = {1};
  const int trials = 4000;
  int zeros = 0;
  for (Seed seed = 0; seed < trials; ++seed) {
    auto r = measure_and_collapse(plus, q1, seed);
    zeros += r.bits == "0";
    // Collapse onto the observed basis state.
    EXPECT_NEAR(std::norm(r.post_state[r.bits == "0" ? 0 : 1]), 1.0, 1e-12);
  }
  const double sigma = std::sqrt(0.25 / trials);
  EXPECT_NEAR(static_cast<double>(zeros) / trials, 0.5, 3 * sigma);
}

TEST(MeasureAndCollapse, BitsFollowRequestOrder) {
  auto s = Statevector::basis(3, 0b101);
  const int order[] = {3, 2, 1};
  EXPECT_EQ(measure_and_collapse(s, order, Seed{1}).bits, "101");
  const int partial[] = {2, 3};
  EXPECT_EQ(measure_and_collapse(s, partial, Seed{1}).bits, "01");
  const int repeated[] = {1, 1};
  EXPECT_THROW(measure_and_collapse(s, repeated, Seed{1}), std::invalid_argument);
}

TEST(SampleCounts, ComputationalZero) {
  const int qs[] = {1, 2};
  auto counts = sample_counts(Statevector(2), qs, 8192, 1);
  EXPECT_EQ(counts.counts(), (std::map<std::string, std::uint64_t>{{"00", 8192}}));
}

TEST(SampleCounts, BellStateWithinBinomialBound) {
  QuantumCircuit bell(2);
  bell.h(1).cnot(1, 2);
  auto psi = run_circuit(Statevector(2), bell);
  const int qs[] = {1, 2};
  auto counts = sample_counts(psi, qs, 8192, 42);
  EXPECT_EQ(counts.count("00") + counts.count("11"), 8192u);
  const double bound = 4 * std::sqrt(8192 * 0.25);
  EXPECT_NEAR(static_cast<double>(counts.count("00")), 4096.0, bound);
  EXPECT_NEAR(static_cast<double>(counts.count("11")), 4096.0, bound);
}

TEST(SampleCounts, ZStateIsUniformInComputationalBasis) {
  // |amplitude|^2 of [1,1,-1,1]/2 is 1/4 everywhere.
  const int qs[] = {1, 2};
  auto counts = sample_counts(from_signs({1, 1, -1, 1}), qs, 8192, 9);
  const double sigma = std::sqrt(8192 * 0.25 * 0.75);
  for (const char* key : {"00", "01", "10", "11"}) {
    EXPECT_NEAR(static_cast<double>(counts.count(key)), 2048.0, 4 * sigma) << key;
  }
}

TEST(SampleCounts, DeterministicPerSeedAndRejectsZeroShots) {
  std::mt19937_64 rng(1);
  auto psi = random_state(3, rng);
  const int qs[] = {3, 1};
  EXPECT_EQ(sample_counts(psi, qs, 1000, 77), sample_counts(psi, qs, 1000, 77));
  EXPECT_NE(sample_counts(psi, qs, 1000, 77), sample_counts(psi, qs, 1000, 78));
  EXPECT_THROW(sample_counts(psi, qs, 0, 1), std::invalid_argument);
}

TEST(PauliExpectation, IdentityIsOne) {
  std::mt19937_64 rng(2);
  EXPECT_NEAR(pauli_expectation(random_state(2, rng), PauliString("II")), 1.0, 1e-12);
}

TEST(PauliExpectation, ClusterStabilizerSigns) {
  auto z0 = from_signs({1, 1, 1, -1});
  auto z1 = from_signs({1, 1, -1, 1});
  // Oracle: dense quadratic form.
  auto oracle = [](const Statevector& s, const std::string& p) {
    auto v = to_eigen(s);
    return v.dot(pauli_matrix(p) * v).real();
  };
  EXPECT_NEAR(oracle(z0, "ZX"), 1.0, 1e-12);
  EXPECT_NEAR(pauli_expectation(z0, PauliString("ZX")), 1.0, 1e-12);
  EXPECT_NEAR(oracle(z1, "XZ"), -1.0, 1e-12);
  EXPECT_NEAR(pauli_expectation(z1, PauliString("XZ")), -1.0, 1e-12);

  std::mt19937_64 rng(4);
  for (const auto& p : all_pauli_strings(3)) {
    auto psi = random_state(3, rng);
    double e = pauli_expectation(psi, p);
    EXPECT_NEAR(e, oracle(psi, p.letters()), 1e-12) << p.letters();
    EXPECT_LE(std::abs(e), 1.0 + 1e-12);
  }
}

TEST(PauliExpectation, Errors) {
  EXPECT_THROW(PauliString("XQ"), std::invalid_argument);
  EXPECT_THROW(PauliString("xz"), std::invalid_argument);
  EXPECT_THROW(pauli_expectation(Statevector(2), PauliString("XZZ")), std::invalid_argument);
}
