#pragma once

// Zonal kernels K(x, y) = K_r(t(x, y)) with K_r = Σ a_n R_n^{α,β} at the
// indices of their space.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "zonalpd/coeffs.hpp"
#include "zonalpd/derivative.hpp"
#include "zonalpd/error.hpp"
#include "zonalpd/spaces.hpp"

namespace zonalpd {

class ZonalKernel {
 public:
  ZonalKernel(Space space, CoeffSeq coeffs) : space_(space), coeffs_(std::move(coeffs)) {
    if (!(coeffs_.params() == jacobi_params(space_))) {
      throw DomainError("kernel coefficients must be given at the Jacobi indices of " + describe(space_));
    }
  }

  const Space& space() const noexcept { return space_; }
  const CoeffSeq& coeffs() const noexcept { return coeffs_; }

 private:
  Space space_;
  CoeffSeq coeffs_;
};

/// K_r(t).
inline double eval_radial(const ZonalKernel& k, double t) { return series_value(k.coeffs(), t); }

/// K(x, y) = K_r(t(x, y)).
inline double eval_pair(const ZonalKernel& k, const Point& x, const Point& y) {
  return eval_radial(k, zonal_argument(k.space(), x, y));
}

struct GramResult {
  Eigen::MatrixXd matrix;
  double min_eigenvalue = 0.0;
  bool psd = false;
};

/// Relative slack of the PSD decision: λ_min ≥ −1e−8 · trace / n.
inline constexpr double kPsdTolerance = 1e-8;

inline GramResult gram(const ZonalKernel& k, std::span<const Point> pts) {
  if (pts.empty()) throw DomainError("Gram matrix needs at least one point");
  const auto n = static_cast<Eigen::Index>(pts.size());
  GramResult g;
  g.matrix.resize(n, n);
  const double diag = eval_radial(k, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    // zonal_argument(x, x) may round below 1; the diagonal is K_r(1) by definition.
    g.matrix(i, i) = diag;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = eval_pair(k, pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
      g.matrix(i, j) = v;
      g.matrix(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConsistencyError("symmetric eigensolver failed");
  g.min_eigenvalue = solver.eigenvalues().minCoeff();
  const double trace = g.matrix.trace();
  g.psd = g.min_eigenvalue >= -kPsdTolerance * (trace / static_cast<double>(n));
  return g;
}

struct KernelDerivative {
  std::vector<ChainLevel> levels;
  ChainEvaluator evaluator;
};

/// Derivative chain of the radial part up to the given order, routed per
/// space through the descent tower.
inline KernelDerivative differentiate(const ZonalKernel& k, int order) {
  auto levels = chain(k.coeffs(), k.space(), order);
  ChainEvaluator eval(k.coeffs(), levels);
  return {std::move(levels), std::move(eval)};
}

}  // namespace zonalpd
