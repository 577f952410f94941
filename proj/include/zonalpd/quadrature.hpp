#pragma once

// Gauss–Jacobi rules by the Golub–Welsch eigenvalue method.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "zonalpd/jacobi.hpp"

namespace zonalpd {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // for the weight (1−t)^α (1+t)^β
};

/// n-point rule, exact for polynomials of degree ≤ 2n − 1.
inline QuadratureRule gauss_jacobi(const JacobiParams& p, int n) {
  if (n < 1) throw DomainError("quadrature needs at least one node");
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  diag(0) = (b - a) / (s + 2.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + s;
    diag(k) = (b * b - a * a) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    } else {
      const double c = 2.0 * k + s;
      b2 = 4.0 * k * (k + a) * (k + b) * (k + s) / (c * c * (c + 1.0) * (c - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw IntegrationError("Golub-Welsch eigensolver failed");

  // The eigenvectors fix the weights only to absolute accuracy, which is
  // poor for the tiny weights near t = ±1. Each node gets a Newton polish
  // on R_n, and its weight is the Christoffel number 1 / Σ_{k<n} p̂_k(t)²
  // (orthonormal p̂_k), a sum of positive terms.
  std::vector<double> factor(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double p1 = jacobi_p_at_one(p, k);
    factor[k] = p1 * p1 / jacobi_norm(p, k);
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    double t = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const double step = jacobi_r(p, n, t) / jacobi_dr(p, n, t);
      if (!std::isfinite(step) || std::abs(step) > 1e-6 || std::abs(t - step) >= 1.0) break;
      t -= step;
      if (step == 0.0) break;
    }
    detail::fill_normalized(p, t, r);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += factor[k] * r[k] * r[k];
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

}  // namespace zonalpd
