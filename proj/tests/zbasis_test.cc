#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_util.h"
#include "zstates/density_matrix.h"
#include "zstates/zbasis.h"

using namespace zstates;
using namespace zstates::testing;

namespace {

void expect_state_near(const Statevector& got, const Statevector& want, double tol = 1e-12) {
  ASSERT_EQ(got.dim(), want.dim());
  for (std::size_t i = 0; i < got.dim(); ++i) {
    EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, tol) << "index " << i;
  }
}

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

// Cluster amplitude straight from the chain formula.
Statevector cluster_oracle(int n) {
  std::vector<int> signs(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < signs.size(); ++i) signs[i] = popcount(i & (i >> 1)) % 2 ? -1 : 1;
  return from_signs(signs);
}

// Z on the qubits of `pattern`, applied as sign flips on basis indices.
Statevector flip_signs(const Statevector& s, const ZPattern& pattern) {
  const int n = s.n_qubits();
  std::vector<Complex> a(s.amplitudes().begin(), s.amplitudes().end());
  for (int q : pattern) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & (std::size_t{1} << (n - q))) a[i] = -a[i];
    }
  }
  return Statevector::from_amplitudes(std::move(a), false);
}

// The unique subset of qubits whose Z gates map the cluster to `target`.
ZPattern search_pattern(const Statevector& target) {
  const int n = target.n_qubits();
  const auto cluster = cluster_oracle(n);
  ZPattern found;
  int hits = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ZPattern p;
    for (int q = 1; q <= n; ++q) {
      if (mask & (std::uint64_t{1} << (q - 1))) p.push_back(q);
    }
    if (std::abs(state_overlap(flip_signs(cluster, p), target) - 1.0) < 1e-12) {
      found = p;
      ++hits;
    }
  }
  EXPECT_EQ(hits, 1);
  return found;
}

}  // namespace

TEST(ClusterState, TwoAndThreeQubitExpansions) {
  expect_state_near(cluster_state(2), from_signs({1, 1, 1, -1}));
  expect_state_near(cluster_state(3), from_signs({1, 1, 1, -1, 1, 1, -1, 1}));
}

TEST(ClusterState, FourQubitBranchForm) {
  // (1/2)(|+>|0>|+>|0> + |+>|0>|->|1> + |->|1>|->|0> + |->|1>|+>|1>), expanded.
  const Eigen::Vector2cd plus(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  const Eigen::Vector2cd minus(1 / std::sqrt(2.0), -1 / std::sqrt(2.0));
  const Eigen::Vector2cd zero(1, 0), one(0, 1);
  auto k4 = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, const Eigen::VectorXcd& c,
               const Eigen::VectorXcd& d) {
    return Eigen::VectorXcd(kron(kron(a, b), kron(c, d)));
  };
  Eigen::VectorXcd c4 = 0.5 * (k4(plus, zero, plus, zero) + k4(plus, zero, minus, one) +
                               k4(minus, one, minus, zero) + k4(minus, one, plus, one));
  auto got = cluster_state(4);
  for (int i = 0; i < 16; ++i) {
    EXPECT_NEAR(std::abs(got[i] - c4(i)), 0.0, 1e-12) << i;
    EXPECT_NEAR(std::abs(got[i]), 0.25, 1e-12);
  }
}

TEST(ClusterState, MatchesChainFormulaAndCircuit) {
  for (int n = 2; n <= 10; ++n) {
    expect_state_near(cluster_state(n), cluster_oracle(n));
    expect_state_near(run_circuit(Statevector(n), cluster_circuit(n)), cluster_oracle(n));
    auto c = cluster_circuit(n);
    EXPECT_EQ(c.count(GateKind::H), static_cast<std::size_t>(n));
    EXPECT_EQ(c.count(GateKind::CZ), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(c.size(), static_cast<std::size_t>(2 * n - 1));
  }
  EXPECT_THROW(cluster_state(1), std::invalid_argument);
  EXPECT_THROW(cluster_circuit(1), std::invalid_argument);
}

TEST(ZStateVector, ReproducesPublishedTwoQubitVectors) {
  for (std::uint64_t k = 0; k < 4; ++k) {
    expect_state_near(zstate_vector(2, k), from_signs(published_z2()[k]));
  }
}

TEST(ZStateVector, ReproducesPublishedThreeQubitVectors) {
  for (std::uint64_t k = 0; k < 8; ++k) {
    expect_state_near(zstate_vector(3, k), from_signs(published_z3()[k]));
  }
}

TEST(ZPattern, TablesMatchSubsetSearchOnPublishedVectors) {
  for (std::uint64_t k = 0; k < 4; ++k) {
    EXPECT_EQ(z_pattern(2, k), search_pattern(from_signs(published_z2()[k]))) << k;
  }
  for (std::uint64_t k = 0; k < 8; ++k) {
    EXPECT_EQ(z_pattern(3, k), search_pattern(from_signs(published_z3()[k]))) << k;
  }
  EXPECT_EQ(z_pattern(2, 1), (ZPattern{1}));
  EXPECT_EQ(z_pattern(3, 1), (ZPattern{3}));
  EXPECT_EQ(z_pattern(3, 5), (ZPattern{2, 3}));
}

TEST(ZPattern, BinaryRuleFromFourQubits) {
  for (int n = 4; n <= 7; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      ZPattern want;
      for (int j = 1; j <= n; ++j) {
        if (k & (std::uint64_t{1} << (n - j))) want.push_back(j);
      }
      EXPECT_EQ(z_pattern(n, k), want);
      EXPECT_EQ(z_index(n, want), k);
    }
  }
}

TEST(ZPattern, SignFlipCompositionForThreeFive) {
  // Z2 flips {2,3,6,7}, Z3 flips {1,3,5,7}; together {1,2,5,6}.
  std::vector<int> v = published_z3()[0];
  for (int i : {1, 2, 5, 6}) v[i] = -v[i];
  EXPECT_EQ(v, published_z3()[5]);
  expect_state_near(flip_signs(cluster_state(3), z_pattern(3, 5)), from_signs(v));
}

TEST(ZPattern, BijectiveAndInverse) {
  for (int n = 2; n <= 8; ++n) {
    std::set<ZPattern> seen;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      auto p = z_pattern(n, k);
      EXPECT_TRUE(seen.insert(p).second);
      EXPECT_EQ(z_index(n, p), k);
    }
  }
  EXPECT_THROW(z_index(3, {4}), std::out_of_range);
  EXPECT_THROW(z_index(3, {2, 2}), std::invalid_argument);
  EXPECT_THROW(z_pattern(3, 8), std::out_of_range);
  EXPECT_THROW(z_pattern(1, 0), std::invalid_argument);
}

TEST(ZStateCircuit, MatchesVectorForAllSmallIndices) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      auto c = zstate_circuit(n, k);
      expect_state_near(run_circuit(Statevector(n), c), zstate_vector(n, k));
      expect_state_near(zstate_vector(n, k), flip_signs(cluster_oracle(n), z_pattern(n, k)));
      EXPECT_EQ(c.count(GateKind::Z), z_pattern(n, k).size());
    }
  }
  EXPECT_EQ(zstate_circuit(3, 0), cluster_circuit(3));
  expect_state_near(run_circuit(Statevector(2), zstate_circuit(2, 3)), from_signs({1, -1, -1, -1}));
}

TEST(VerifyBasis, OrthonormalUpToSixQubits) {
  for (int n = 2; n <= 6; ++n) {
    auto r = verify_basis(n);
    EXPECT_TRUE(r.passed()) << n << " " << r.max_off_diagonal << " " << r.max_norm_deviation;
  }
  EXPECT_THROW(verify_basis(9), std::invalid_argument);
}

TEST(VerifyBasis, PublishedVectorsAreOrthonormal) {
  for (const auto* table : {&published_z2(), &published_z3()}) {
    for (std::size_t a = 0; a < table->size(); ++a) {
      for (std::size_t b = 0; b < table->size(); ++b) {
        double ip = state_overlap(from_signs((*table)[a]), from_signs((*table)[b]));
        EXPECT_NEAR(ip, a == b ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(ZStateVector, EqualSuperposition) {
  for (int n = 2; n <= 6; ++n) {
    const double mag = std::pow(2.0, -n / 2.0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const auto z = zstate_vector(n, k);
      for (auto a : z.amplitudes()) EXPECT_NEAR(std::abs(a), mag, 1e-12);
    }
  }
}

TEST(ZStateVector, SameEntanglementAsCluster) {
  for (int n = 2; n <= 5; ++n) {
    const auto cluster = cluster_state(n);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const auto z = zstate_vector(n, k);
      for (int cut = 1; cut < n; ++cut) {
        auto want = schmidt_coefficients(cluster, cut);
        auto got = schmidt_coefficients(z, cut);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
      }
      auto rho = density_from_state(z);
      auto rho_c = density_from_state(cluster);
      for (int q = 1; q <= n; ++q) {
        const int keep[] = {q};
        auto r = rho.partial_trace(keep);
        auto rc = rho_c.partial_trace(keep);
        bool mixed = max_abs_diff(r.entries(), Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-10;
        bool mixed_c = max_abs_diff(rc.entries(), Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-10;
        EXPECT_EQ(mixed, mixed_c);
      }
    }
  }
}

TEST(SchmidtCoefficients, ClusterCutHasTwoEqualTerms) {
  auto s = schmidt_coefficients(cluster_state(4), 2);
  ASSERT_GE(s.size(), 2u);
  EXPECT_NEAR(s[0], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s[1], 1 / std::sqrt(2.0), 1e-12);
  for (std::size_t i = 2; i < s.size(); ++i) EXPECT_NEAR(s[i], 0.0, 1e-12);
  EXPECT_THROW(schmidt_coefficients(cluster_state(3), 3), std::out_of_range);
}

TEST(ZStateIndex, Checked) {
  EXPECT_EQ(ZStateIndex::checked(3, 7).k, 7u);
  EXPECT_THROW(ZStateIndex::checked(3, 8), std::out_of_range);
  EXPECT_THROW(ZStateIndex::checked(1, 0), std::invalid_argument);
}
