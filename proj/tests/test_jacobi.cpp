#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "zonalpd/jacobi.hpp"
#include "zonalpd/quadrature.hpp"

using namespace zonalpd;

namespace {

const std::vector<std::pair<double, double>> kGrid = {
    {0.0, 0.0}, {1.0, 0.0}, {0.5, -0.5}, {-0.5, -0.5}, {2.0, 1.0}, {1.5, 1.5}, {3.0, 3.0}, {7.0, 3.0}, {-0.5, 2.0}};

}  // namespace

TEST(JacobiParams, RejectsIndicesAtOrBelowMinusOne) {
  EXPECT_THROW(JacobiParams(-1.0, 0.0), DomainError);
  EXPECT_THROW(JacobiParams(0.0, -1.5), DomainError);
  EXPECT_THROW(JacobiParams(NAN, 0.0), DomainError);
  EXPECT_NO_THROW(JacobiParams(-0.999, -0.999));
}

TEST(JacobiEval, SmallCases) {
  EXPECT_DOUBLE_EQ(jacobi_p({0, 0}, 0, 0.3), 1.0);
  EXPECT_NEAR(jacobi_p({0, 0}, 2, 0.0), -0.5, 1e-15);
  EXPECT_DOUBLE_EQ(jacobi_p({1, 0}, 1, 1.0), 2.0);
  EXPECT_THROW(jacobi_p({0, 0}, 1, 1.5), DomainError);
  EXPECT_THROW(jacobi_p({0, 0}, -1, 0.0), DomainError);
}

TEST(JacobiEval, ValueAtOne) {
  EXPECT_DOUBLE_EQ(jacobi_p_at_one({0, 0}, 7), 1.0);
  EXPECT_DOUBLE_EQ(jacobi_p_at_one({2, -0.5}, 1), 3.0);
  EXPECT_DOUBLE_EQ(jacobi_p_at_one({1, 3}, 2), 3.0);
  // No overflow past the Γ range.
  EXPECT_TRUE(std::isfinite(jacobi_p_at_one({0.5, 0.5}, 400)));
}

TEST(JacobiEval, Norms) {
  EXPECT_DOUBLE_EQ(jacobi_norm({0, 0}, 0), 2.0);
  EXPECT_NEAR(jacobi_norm({0, 0}, 1), 2.0 / 3.0, 1e-15);
  for (auto [a, b] : kGrid) {
    for (int n = 0; n <= 12; ++n) {
      const double h = oracle::norm_h(a, b, n);
      EXPECT_NEAR(jacobi_norm({a, b}, n), h, 1e-12 * h) << a << "," << b << " n=" << n;
    }
  }
  EXPECT_TRUE(std::isfinite(jacobi_norm({1.0, 1.0}, 300)));
}

TEST(JacobiEval, NormalizedSmallCases) {
  for (double t : {-0.9, -0.2, 0.4, 0.95}) {
    EXPECT_NEAR(jacobi_r({0, 0}, 1, t), t, 1e-15);
    EXPECT_NEAR(jacobi_r({1, 0}, 1, t), (3 * t + 1) / 4, 1e-15);
  }
  for (auto [a, b] : kGrid)
    for (int n = 0; n <= 30; ++n) EXPECT_EQ(jacobi_r({a, b}, n, 1.0), 1.0);
}

TEST(JacobiEval, MatchesHypergeometricOracle) {
  for (auto [a, b] : kGrid) {
    for (int n = 0; n <= 40; ++n) {
      for (double t : {-1.0, -0.97, -0.5, -0.1, 0.0, 0.33, 0.8, 0.999}) {
        EXPECT_NEAR(jacobi_r({a, b}, n, t), oracle::r(a, b, n, t), 1e-12 * std::max(1.0, std::abs(oracle::r(a, b, n, t))))
            << "alpha=" << a << " beta=" << b << " n=" << n << " t=" << t;
      }
    }
  }
}

TEST(JacobiEval, AllDegreesAgreeWithSingle) {
  const JacobiParams p(1.5, 0.0);
  const auto all = jacobi_r_all(p, 20, 0.37);
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(all[n], jacobi_r(p, n, 0.37));
}

TEST(DerivativeTriple, SmallCases) {
  const auto d1 = derivative_triple({0, 0}, 1);
  EXPECT_NEAR(d1.a, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(d1.b, 0.0, 1e-15);
  EXPECT_NEAR(d1.c, -2.0 / 3.0, 1e-15);

  const auto d2 = derivative_triple({1, 0}, 2);
  // 2n+α+β = 5 here: A₂ = 2·2·2·4/(5·6), B₂ = 2·2·4/(5·7), C₂ = −2·2·4·4/(6·7).
  EXPECT_NEAR(d2.a, 16.0 / 15.0, 1e-15);
  EXPECT_NEAR(d2.b, 16.0 / 35.0, 1e-15);
  EXPECT_NEAR(d2.c, -32.0 / 21.0, 1e-15);
  for (int i = 0; i < 20; ++i) {
    const double t = -0.95 + 0.1 * i;
    const double lhs = (1 - t * t) * oracle::dr(1, 0, 2, t);
    const double rhs = d2.a * oracle::r(1, 0, 1, t) + d2.b * oracle::r(1, 0, 2, t) + d2.c * oracle::r(1, 0, 3, t);
    EXPECT_NEAR(lhs, rhs, 1e-14);
  }

  EXPECT_THROW(derivative_triple({0, 0}, 0), DomainError);
}

TEST(DerivativeTriple, SignPattern) {
  for (auto [a, b] : kGrid) {
    for (int n = 1; n <= 50; ++n) {
      const auto d = derivative_triple({a, b}, n);
      EXPECT_LT(d.c, 0.0);
      if (a == b) EXPECT_EQ(d.b, 0.0);
    }
  }
}

TEST(DerivativeTriple, RelationHoldsOnNodes) {
  for (auto [a, b] : kGrid) {
    const JacobiParams p(a, b);
    for (int i = 0; i < 50; ++i) {
      const double t = std::cos(M_PI * (i + 0.5) / 50);
      const auto r = jacobi_r_all(p, 51, t);
      const auto dr = jacobi_dr_all(p, 50, t);
      for (int n = 1; n <= 50; ++n) {
        const auto d = derivative_triple(p, n);
        const double terms = std::abs(d.a * r[n - 1]) + std::abs(d.b * r[n]) + std::abs(d.c * r[n + 1]);
        const double res = (1 - t * t) * dr[n] - (d.a * r[n - 1] + d.b * r[n] + d.c * r[n + 1]);
        EXPECT_LE(std::abs(res), 1e-10 * std::max(1.0, terms));
      }
    }
  }
}

TEST(JacobiDerivative, SmallCasesAndOracle) {
  EXPECT_EQ(jacobi_dr({0, 0}, 0, 0.2), 0.0);
  EXPECT_NEAR(jacobi_dr({0, 0}, 1, -0.4), 1.0, 1e-15);
  EXPECT_NEAR(jacobi_dr({0, 0}, 2, 0.5), 1.5, 1e-15);
  EXPECT_THROW(jacobi_dr({0, 0}, 2, 1.0), DomainError);
  for (auto [a, b] : kGrid) {
    for (int n = 0; n <= 20; ++n) {
      for (double t : {-0.9, -0.3, 0.0, 0.6, 0.9}) {
        const double ref = oracle::dr(a, b, n, t);
        EXPECT_NEAR(jacobi_dr({a, b}, n, t), ref, 1e-11 * std::max(1.0, std::abs(ref)));
        // central difference, step 1e−6
        const double fd = (jacobi_r({a, b}, n, t + 1e-6) - jacobi_r({a, b}, n, t - 1e-6)) / 2e-6;
        EXPECT_NEAR(jacobi_dr({a, b}, n, t), fd, 1e-5);
      }
    }
  }
}

TEST(GaussJacobi, WeightsSumToMass) {
  for (auto [a, b] : kGrid) {
    for (int n : {1, 2, 5, 17, 40}) {
      const auto q = gauss_jacobi({a, b}, n);
      ASSERT_EQ(q.nodes.size(), static_cast<std::size_t>(n));
      const double mass = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
      EXPECT_NEAR(mass, jacobi_norm({a, b}, 0), 1e-13 * mass);
      EXPECT_TRUE(std::is_sorted(q.nodes.begin(), q.nodes.end()));
      for (double x : q.nodes) {
        EXPECT_GT(x, -1.0);
        EXPECT_LT(x, 1.0);
      }
    }
  }
  EXPECT_THROW(gauss_jacobi({0, 0}, 0), DomainError);
}

TEST(GaussJacobi, ExactMoments) {
  for (auto [a, b] : kGrid) {
    const int n = 8;
    const auto q = gauss_jacobi({a, b}, n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      oracle::Poly mono(static_cast<std::size_t>(k) + 1);
      mono[static_cast<std::size_t>(k)] = 1;  // x^k
      const double ref = static_cast<double>(oracle::weighted_integral(mono, a, b));
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += q.weights[i] * std::pow((1 - q.nodes[i]) / 2, k);
      EXPECT_NEAR(sum, ref, 1e-13 * std::abs(ref)) << a << "," << b << " k=" << k;
    }
  }
}

TEST(GaussJacobi, Orthogonality) {
  for (auto [a, b] : kGrid) {
    const JacobiParams p(a, b);
    const auto q = gauss_jacobi(p, 21);
    for (int m = 0; m <= 20; ++m) {
      for (int n = 0; n <= 20; ++n) {
        double sum = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
          sum += q.weights[i] * jacobi_p(p, m, q.nodes[i]) * jacobi_p(p, n, q.nodes[i]);
        if (m != n) {
          EXPECT_LE(std::abs(sum), 1e-10 * std::sqrt(jacobi_norm(p, m) * jacobi_norm(p, n)));
        } else {
          EXPECT_NEAR(sum, jacobi_norm(p, n), 1e-12 * jacobi_norm(p, n));
        }
      }
    }
  }
}

TEST(GaussJacobi, SmallWeightsAreRelativelyAccurate) {
  // The weights nearest t = 1 carry the projection onto R_n; check them
  // against the normalized moments K_n Σ w R_n² = 1 and Σ w R_n = δ_{n0}·mass.
  for (auto [a, b] : std::vector<std::pair<double, double>>{{3.0, -0.5}, {7.0, 3.0}, {11.0, 1.0}}) {
    const JacobiParams p(a, b);
    const int nodes = 20;
    const auto rule = gauss_jacobi(p, nodes);
    for (int n = 0; n < nodes; ++n) {
      double sq = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = jacobi_r(p, n, rule.nodes[i]);
        sq += rule.weights[i] * r * r;
      }
      const double p1 = jacobi_p_at_one(p, n);
      EXPECT_NEAR(sq * p1 * p1 / jacobi_norm(p, n), 1.0, 1e-12) << a << "," << b << " n=" << n;
    }
    const double w_last = rule.weights.back();
    const double t_last = rule.nodes.back();
    // Christoffel number at the node closest to 1, straight from the oracle.
    oracle::Real inv = 0;
    for (int k = 0; k < nodes; ++k) {
      const auto rk = oracle::poly_eval(oracle::r_poly(a, b, k), oracle::Real(t_last));
      oracle::Real p1 = 1;
      for (int j = 1; j <= k; ++j) p1 *= (oracle::Real(a) + j) / j;
      inv += rk * rk * p1 * p1 / oracle::norm_h(a, b, k);
    }
    EXPECT_NEAR(w_last * static_cast<double>(inv), 1.0, 1e-12) << a << "," << b;
  }
}
