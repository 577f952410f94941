#pragma once

// Explicit derivative decompositions (1 − t²) f′ = scale · (f₁ − f₂) of a
// Fourier–Jacobi series f = Σ a_n R_n^{α,β} with nonnegative coefficients,
// and their chaining down the descent tower for higher derivatives.
//
// Both routes split (1 − t²) f′ into
//   leading   R_0 and R_1 terms,
//   asymmetry (α−β)-weighted diagonal terms,
//   cross     (α−β)-weighted terms, only on the (α+1, β+1) route,
//   interior  Q_n-weighted diagonal terms,
// all of which make up f₁, and f₂, which is written with coefficients lifted
// to (α+1, β) or (α+1, β+1).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zonalpd/analysis.hpp"
#include "zonalpd/coeffs.hpp"
#include "zonalpd/error.hpp"
#include "zonalpd/jacobi.hpp"
#include "zonalpd/spaces.hpp"

namespace zonalpd {

/// Global factor in (1 − t²) f′ = scale · (f₁ − f₂), fixed by oracle
/// arbitration (see arbitrate_scale) and asserted in the tests.
inline constexpr double kDecompositionScale = 2.0;

/// Beyond 1 − 1e−6 derivative values are returned but flagged.
inline constexpr double kEndpointMargin = 1e-6;

struct DerivativeDecomposition {
  CoeffSeq f1;
  CoeffSeq f2;
  JacobiParams source;
  double scale = kDecompositionScale;
  LiftRoute route = LiftRoute::Alpha;
};

struct DecompositionParts {
  CoeffSeq leading;
  CoeffSeq asymmetry;
  CoeffSeq cross;
  CoeffSeq interior;
  CoeffSeq f2;

  CoeffSeq f1() const {
    return combine(1.0, combine(1.0, leading, 1.0, asymmetry), 1.0, combine(1.0, cross, 1.0, interior));
  }
};

/// Q_n for the α-route, n ≥ 2: multiplies a_n.
inline double q_alpha_route(const JacobiParams& p, long n) {
  if (n < 2) throw DomainError("Q_n is defined for n >= 2");
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  const double m = static_cast<double>(n);
  return (m + a + 1.0) * (m + s + 1.0) * (m + s + 2.0) / ((2.0 * m + s + 2.0) * (2.0 * m + s + 1.0)) -
         m * (m - 1.0) * (m + b) / ((2.0 * m + s) * (2.0 * m + s + 1.0));
}

/// Q_n for the (α+1, β+1)-route, n ≥ 2: multiplies a_{n+1}.
inline double q_both_route(const JacobiParams& p, long n) {
  if (n < 2) throw DomainError("Q_n is defined for n >= 2");
  const double b = p.beta();
  const double s = p.alpha() + b;
  const double m = static_cast<double>(n);
  return (m + 1.0) * (m + b + 1.0) * (m + s + 2.0) / ((2.0 * m + s + 2.0) * (2.0 * m + s + 3.0)) -
         m * (m - 1.0) * (m + 1.0) * (m + b + 1.0) / ((m + s + 1.0) * (2.0 * m + s + 2.0) * (2.0 * m + s + 3.0));
}

namespace detail {

inline void require_decomposable(const CoeffSeq& c) {
  require_admissible(c.params());
  for (std::size_t k = 0; k < c.values().size(); ++k) {
    if (c.values()[k] < 0.0) {
      std::ostringstream os;
      os << "hypothesis: all Fourier-Jacobi coefficients nonnegative (a_" << k << " = " << c.values()[k] << ")";
      throw PreconditionError(os.str());
    }
  }
}

}  // namespace detail

/// The pieces of (1 − t²) f′ / scale, before they are summed into f₁.
inline DecompositionParts decomposition_parts(const CoeffSeq& input, LiftRoute route) {
  const CoeffSeq c = input.materialized();
  detail::require_decomposable(c);
  const JacobiParams p = c.params();
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  const std::size_t len = c.values().size() + 1;
  auto at = [&c](std::size_t n) { return c.at(n); };

  std::vector<double> leading(len, 0.0), asym(len, 0.0), cross(len, 0.0), interior(len, 0.0), f2(len, 0.0);
  leading[0] = (b + 1.0) / (s + 3.0) * at(1);
  leading[1] = 2.0 * (b + 2.0) * (s + 3.0) / ((s + 4.0) * (s + 5.0)) * at(2);
  for (std::size_t k = 1; k < len; ++k) {
    const double n = static_cast<double>(k);
    asym[k] = (a - b) * n * (n + s + 1.0) / ((2.0 * n + s) * (2.0 * n + s + 2.0)) * at(k);
  }

  if (route == LiftRoute::Alpha) {
    const CoeffSeq lifted = lift_alpha(c);
    for (std::size_t k = 2; k < len; ++k) {
      const double n = static_cast<double>(k);
      interior[k] = q_alpha_route(p, static_cast<long>(k)) * at(k);
      f2[k] = (a + 1.0) * (n + s + 2.0) / (2.0 * n + s + 2.0) * lifted.at(k) +
              (a + 1.0) * (n - 1.0) / (2.0 * n + s) * lifted.at(k - 1);
    }
  } else {
    const CoeffSeq lifted = lift_both(c);
    for (std::size_t k = 2; k < len; ++k) {
      const double n = static_cast<double>(k);
      cross[k] = (a - b) * n * (n - 1.0) * (n + s + 1.0) / ((n + s + 1.0) * (2.0 * n + s + 2.0) * (2.0 * n + s)) * at(k);
      interior[k] = q_both_route(p, static_cast<long>(k)) * at(k + 1);
      f2[k] = (a + 1.0) * (n - 1.0) / (n + s + 1.0) * lifted.at(k - 1);
    }
  }
  return {CoeffSeq(p, std::move(leading)), CoeffSeq(p, std::move(asym)), CoeffSeq(p, std::move(cross)),
          CoeffSeq(p, std::move(interior)), CoeffSeq(p, std::move(f2))};
}

/// f₁, f₂ at the source indices with (1 − t²) f′ = scale · (f₁ − f₂).
inline DerivativeDecomposition decompose(const CoeffSeq& c, LiftRoute route) {
  const auto parts = decomposition_parts(c, route);
  return {parts.f1(), parts.f2, c.params(), kDecompositionScale, route};
}

/// f′(t) by term-wise differentiation Σ a_n R_n′(t); the reference every
/// decomposition is checked against.
inline double oracle_derivative(const CoeffSeq& c, double t) {
  detail::require_open_interval(t);
  const CoeffSeq f = c.materialized();
  const auto dr = jacobi_dr_all(f.params(), f.degree(), t);
  double s = 0.0;
  for (std::size_t n = 0; n < dr.size(); ++n) s += f.values()[n] * dr[n];
  return s;
}

struct DerivativeValue {
  double value = 0.0;
  bool near_endpoint = false;  // |t| > 1 − 1e−6: interior differentiability only
};

inline DerivativeValue evaluate_flagged(const DerivativeDecomposition& d, double t) {
  detail::require_open_interval(t);
  const double g = series_value(d.f1, t) - series_value(d.f2, t);
  return {d.scale * g / ((1.0 - t) * (1.0 + t)), std::abs(t) > 1.0 - kEndpointMargin};
}

/// f′(t) = scale · (f₁(t) − f₂(t)) / (1 − t²).
inline double evaluate(const DerivativeDecomposition& d, double t) { return evaluate_flagged(d, t).value; }

/// Chooses the factor in {1, 2} relating f₁ − f₂ to (1 − t²) f′ on a
/// single-mode input, by comparison with the term-wise oracle.
inline double arbitrate_scale(LiftRoute route) {
  const CoeffSeq probe = route == LiftRoute::Alpha ? CoeffSeq::unit({1.0, 0.0}, 1) : CoeffSeq::unit({1.5, 1.5}, 2);
  const auto parts = decomposition_parts(probe, route);
  const CoeffSeq f1 = parts.f1();
  double best = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (double candidate : {1.0, 2.0}) {
    double residual = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = std::cos(std::numbers::pi * (i + 0.5) / 50.0);
      const double lhs = (1.0 - t * t) * oracle_derivative(probe, t);
      const double rhs = candidate * (series_value(f1, t) - series_value(parts.f2, t));
      residual = std::max(residual, std::abs(lhs - rhs));
    }
    if (residual < best_residual) {
      best_residual = residual;
      best = candidate;
    }
  }
  return best;
}

/// Which decomposition route the descent argument uses for a space.
inline LiftRoute route_for(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::RealProjective:
    case SpaceKind::ComplexProjective: return LiftRoute::Alpha;
    case SpaceKind::Sphere:
    case SpaceKind::QuaternionicProjective:
    case SpaceKind::CayleyPlane: return LiftRoute::Both;
  }
  return LiftRoute::Both;
}

/// One step of the descent: the derivative of the level's input function,
/// decomposed into f₁, f₂ that are positive definite on `to`.
struct ChainLevel {
  Space from;
  Space to;
  DerivativeDecomposition decomposition;
};

inline constexpr double kReexpansionTolerance = 1e-10;

namespace detail {

inline std::string smoothness_formula(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Sphere:
    case SpaceKind::RealProjective: return "C^{floor((d-1)/2)}";
    case SpaceKind::ComplexProjective: return "C^{(d-2)/2}";
    case SpaceKind::QuaternionicProjective:
      return s.dimension() % 8 == 0 ? "C^{(d-4)/4} (d in 8Z+8)" : "C^{d/4} (d in 8Z+12)";
    case SpaceKind::CayleyPlane: return "C^1";
  }
  return {};
}

inline void require_order(const Space& s, int order) {
  if (order < 1) throw PreconditionError("derivative order must be at least 1");
  const int bound = smoothness_order(s);
  if (order > bound) {
    std::ostringstream os;
    os << "derivative order " << order << " exceeds the smoothness bound " << smoothness_formula(s) << " = C^"
       << bound << " for " << describe(s);
    throw PreconditionError(os.str());
  }
}

/// Re-expands at the descended indices; values below −tol·max(1, Σ|a|)
/// violate the embedding guarantee, smaller negatives are rounding and are
/// set to zero.
inline CoeffSeq descend_coefficients(const CoeffSeq& c, const JacobiParams& target) {
  CoeffSeq r = reexpand(c, target);
  const double floor = -kReexpansionTolerance * std::max(1.0, c.sum_abs());
  std::vector<double> v = r.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < floor) {
      std::ostringstream os;
      os << "re-expanded coefficient a_" << k << " = " << v[k]
         << " is negative beyond tolerance; the embedding guarantee is violated";
      throw ConsistencyError(os.str());
    }
    if (v[k] < 0.0) v[k] = 0.0;
  }
  return {target, std::move(v)};
}

}  // namespace detail

/// k decompositions down the descent tower. Level j + 1 decomposes
/// f₁ − f₂ of level j (re-expanded one space further down) and recombines
/// by linearity so each level is again a single nonnegative pair.
inline std::vector<ChainLevel> chain(const CoeffSeq& c, const Space& space, int order) {
  detail::require_order(space, order);
  if (!(c.params() == jacobi_params(space))) {
    throw PreconditionError("coefficients are not at the Jacobi indices of " + describe(space));
  }
  const auto pd = pd_check(c);
  if (!pd.is_pd) {
    throw PreconditionError("hypothesis: kernel is positive definite (negative coefficient a_" +
                            std::to_string(*pd.first_negative_index) + ")");
  }

  std::vector<ChainLevel> levels;
  Space from = space;
  Space to = descend(from);
  const JacobiParams first = jacobi_params(to);
  levels.push_back({from, to, decompose(detail::descend_coefficients(c.materialized(), first), route_for(from))});

  for (int j = 1; j < order; ++j) {
    from = to;
    to = descend(from);
    const JacobiParams target = jacobi_params(to);
    const auto& prev = levels.back().decomposition;
    const auto d1 = decompose(detail::descend_coefficients(prev.f1, target), route_for(from));
    const auto d2 = decompose(detail::descend_coefficients(prev.f2, target), route_for(from));
    // (1−t²)(f₁ − f₂)′ = s[(d1.f1 − d1.f2) − (d2.f1 − d2.f2)].
    DerivativeDecomposition next{combine(1.0, d1.f1, 1.0, d2.f2), combine(1.0, d1.f2, 1.0, d2.f1), target,
                                 d1.scale, d1.route};
    levels.push_back({from, to, std::move(next)});
  }
  return levels;
}

/// Evaluates f^{(j)} on (−1, 1) from a chain by the product rule applied to
/// g_{j−1}′ = s · g_j / (1 − t²), where g_0 = f and g_j = f₁ − f₂ of level j.
class ChainEvaluator {
 public:
  ChainEvaluator(CoeffSeq base, std::vector<ChainLevel> levels)
      : base_(base.materialized()), levels_(std::move(levels)) {}

  int order() const noexcept { return static_cast<int>(levels_.size()); }
  const std::vector<ChainLevel>& levels() const noexcept { return levels_; }

  /// f^{(j)}(t); j = 0 gives f(t).
  double derivative(int j, double t) const {
    if (j < 0 || j > order()) throw PreconditionError("derivative order outside the computed chain");
    if (j == 0) return series_value(base_, t);
    detail::require_open_interval(t);
    return derive(j, 0, t);
  }

 private:
  double level_value(int level, double t) const {
    if (level == 0) return series_value(base_, t);
    const auto& d = levels_[static_cast<std::size_t>(level - 1)].decomposition;
    return series_value(d.f1, t) - series_value(d.f2, t);
  }

  // k-th derivative of 1/(1 − t²).
  static double weight_derivative(int k, double t) {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return 0.5 * fact * (std::pow(1.0 - t, -(k + 1)) + sign * std::pow(1.0 + t, -(k + 1)));
  }

  // D^m g_level.
  double derive(int m, int level, double t) const {
    if (m == 0) return level_value(level, t);
    const double scale = levels_[static_cast<std::size_t>(level)].decomposition.scale;
    double sum = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m - 1; ++i) {
      sum += binom * derive(i, level + 1, t) * weight_derivative(m - 1 - i, t);
      binom = binom * (m - 1 - i) / (i + 1);
    }
    return scale * sum;
  }

  CoeffSeq base_;
  std::vector<ChainLevel> levels_;
};

}  // namespace zonalpd
