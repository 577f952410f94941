#pragma once

// Horizon-bounded diagnostics for the sequence comparison test
//
//   b_n ≥ λ_n b_{n+g} − ξ_n,  λ_n ↑ 1,  Σ n ξ_n < ∞,  Σ b_n < ∞,  inf λ_n^n > 0
//   ⇒  n b_n → 0,
//
// and the two λ-sequences used by the derivative decompositions. A report
// is evidence up to the horizon, not a proof of the limit statement.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "zonalpd/coeffs.hpp"
#include "zonalpd/error.hpp"
#include "zonalpd/jacobi.hpp"

namespace zonalpd {

using Sequence = std::function<double(long)>;

struct ConvergenceTriple {
  Sequence b;
  Sequence lambda;
  Sequence xi;
  int gap = 1;
};

struct ConvergenceReport {
  bool lambda_positive = false;
  bool lambda_increasing = false;
  bool lambda_at_most_one = false;
  bool lambda_power_bounded = false;
  double lambda_power_min = 0.0;  // min_n λ_n^n over the horizon
  bool weighted_xi_sum_flat = false;
  double weighted_xi_increment = 0.0;
  bool b_sum_flat = false;
  double b_increment = 0.0;
  bool recurrence_holds = false;
  std::optional<long> recurrence_first_failure;
  double tail_max_nb = 0.0;  // max n·b_n over the second half of the horizon

  bool all_hypotheses() const {
    return lambda_positive && lambda_increasing && lambda_at_most_one && lambda_power_bounded &&
           weighted_xi_sum_flat && b_sum_flat && recurrence_holds;
  }
};

inline constexpr double kCauchyFlatness = 1e-9;

/// Checks the hypotheses for n = 1..horizon. Partial sums count as
/// convergent when their increment over the last half of the horizon is
/// below 1e−9.
inline ConvergenceReport check_convergence_hypotheses(const ConvergenceTriple& t, long horizon) {
  if (horizon < 2) throw DomainError("convergence horizon must be at least 2");
  if (t.gap < 1) throw DomainError("recurrence gap must be positive");
  ConvergenceReport r;
  r.lambda_positive = true;
  r.lambda_increasing = true;
  r.lambda_at_most_one = true;
  r.recurrence_holds = true;
  r.lambda_power_min = std::numeric_limits<double>::infinity();

  const long half = horizon / 2;
  double prev_lambda = 0.0;
  for (long n = 1; n <= horizon; ++n) {
    const double b = t.b(n);
    const double xi = t.xi(n);
    const double lam = t.lambda(n);
    if (b < 0.0 || xi < 0.0) throw DomainError("b_n and xi_n must be nonnegative");
    if (!(lam > 0.0)) r.lambda_positive = false;
    if (n > 1 && lam < prev_lambda) r.lambda_increasing = false;
    if (lam > 1.0) r.lambda_at_most_one = false;
    prev_lambda = lam;
    if (lam > 0.0) r.lambda_power_min = std::min(r.lambda_power_min, std::exp(n * std::log(lam)));

    const double rhs = lam * t.b(n + t.gap) - xi;
    const double slack = 1e-12 * (std::abs(b) + std::abs(lam * t.b(n + t.gap)) + xi);
    if (b < rhs - slack && r.recurrence_holds) {
      r.recurrence_holds = false;
      r.recurrence_first_failure = n;
    }
    if (n > half) {
      r.weighted_xi_increment += n * xi;
      r.b_increment += b;
      r.tail_max_nb = std::max(r.tail_max_nb, n * b);
    }
  }
  r.lambda_power_bounded = r.lambda_positive && r.lambda_power_min > 0.0;
  r.weighted_xi_sum_flat = r.weighted_xi_increment < kCauchyFlatness;
  r.b_sum_flat = r.b_increment < kCauchyFlatness;
  return r;
}

namespace detail {

inline void require_admissible(const JacobiParams& p) {
  const double a = p.alpha();
  const double s = p.alpha() + p.beta();
  if (!(2.0 * a >= s && s >= -1.0)) {
    throw PreconditionError("hypothesis 2*alpha >= alpha+beta >= -1 is violated");
  }
}

}  // namespace detail

/// λ_n for the route through (α+1, β).
inline double lambda_alpha_route(const JacobiParams& p, long n) {
  detail::require_admissible(p);
  if (n < 1) throw DomainError("lambda_n is defined for n >= 1");
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  const double m = static_cast<double>(n);
  return m * (m + b) * (2.0 * m + s + 2.0) / ((m + a + 1.0) * (m + s + 1.0) * (2.0 * m + s));
}

/// λ_n for the route through (α+1, β+1).
///
/// Note: λ_n^n tends to e^{−3α−β−2}, not e^{−2α−β−2}; only the positive
/// lower bound matters for the comparison test.
inline double lambda_both_route(const JacobiParams& p, long n) {
  detail::require_admissible(p);
  if (n < 1) throw DomainError("lambda_n is defined for n >= 1");
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  const double m = static_cast<double>(n);
  return m * (m + 1.0) * (m + b + 1.0) * (2.0 * m + s + 4.0) /
         ((m + a + 2.0) * (m + s + 1.0) * (m + s + 2.0) * (2.0 * m + s + 2.0));
}

/// λ_n^n computed as exp(n·log1p(λ_n − 1)).
inline double lambda_power(double lambda, long n) {
  return std::exp(static_cast<double>(n) * std::log1p(lambda - 1.0));
}

enum class LiftRoute { Alpha, Both };

/// The triple (b, λ, ξ) built from a coefficient sequence exactly as in the
/// proofs that the boundary term H_N vanishes; gap 1 for the α-route and
/// gap 2 for the (α,β)-route.
inline ConvergenceTriple harvest_triple(const CoeffSeq& c, LiftRoute route) {
  const JacobiParams p = c.params();
  detail::require_admissible(p);
  const double a = p.alpha();
  const double bb = p.beta();
  const double s = a + bb;
  const CoeffSeq src = c.materialized();
  const CoeffSeq lifted = route == LiftRoute::Alpha ? lift_alpha(src) : lift_both(src);

  ConvergenceTriple t;
  t.b = [src, a, s](long n) {
    const double m = static_cast<double>(n);
    // (N+α+β)/(2N+α+β−1) is 1 at N = 1 even when α+β = −1.
    const double ratio = n == 1 ? 1.0 : (m + s) / (2.0 * m + s - 1.0);
    return (m + a) * ratio / (2.0 * m + s) * src.at(static_cast<std::size_t>(n - 1));
  };
  if (route == LiftRoute::Alpha) {
    t.gap = 1;
    t.lambda = [p](long n) { return lambda_alpha_route(p, n); };
    t.xi = [lifted, a, s](long n) {
      const double v = (a + 1.0) / (2.0 * n + s) * lifted.at(static_cast<std::size_t>(n - 1));
      return std::max(0.0, -v);
    };
  } else {
    t.gap = 2;
    t.lambda = [p](long n) { return lambda_both_route(p, n); };
    t.xi = [lifted, src, a, bb, s](long n) {
      const double m = static_cast<double>(n);
      const double v = (a + 1.0) / (m + s + 1.0) * lifted.at(static_cast<std::size_t>(n - 1)) -
                       (a - bb) * m / ((2.0 * m + s + 2.0) * (2.0 * m + s)) * src.at(static_cast<std::size_t>(n));
      return std::max(0.0, -v);
    };
  }
  return t;
}

}  // namespace zonalpd
