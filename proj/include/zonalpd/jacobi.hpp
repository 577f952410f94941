#pragma once

// Jacobi polynomials P_n^{α,β}, their normalized forms R_n = P_n / P_n(1),
// norm constants and the three-term derivative relation
//
//   (1 − t²) R_n'(t) = A_n R_{n−1}(t) + B_n R_n(t) + C_n R_{n+1}(t),  n ≥ 1.

#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "zonalpd/error.hpp"

namespace zonalpd {

/// Index pair (α, β) of a Jacobi family; both must exceed −1.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
      std::ostringstream os;
      os << "Jacobi indices require alpha > -1 and beta > -1 (got alpha=" << alpha
         << ", beta=" << beta << ")";
      throw DomainError(os.str());
    }
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// Indices raised by one in α, in β, or in both.
  JacobiParams raised_alpha() const { return {alpha_ + 1.0, beta_}; }
  JacobiParams raised_beta() const { return {alpha_, beta_ + 1.0}; }
  JacobiParams raised_both() const { return {alpha_ + 1.0, beta_ + 1.0}; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Coefficients of the derivative relation for R_n at a fixed degree.
struct DerivTriple {
  int n;
  double a;  // multiplies R_{n−1}
  double b;  // multiplies R_n
  double c;  // multiplies R_{n+1}
};

namespace detail {

inline void require_degree(int n) {
  if (n < 0) throw DomainError("polynomial degree must be nonnegative");
}

inline void require_closed_interval(double t) {
  if (std::isnan(t)) throw DomainError("evaluation point is NaN");
  if (t < -1.0 || t > 1.0) throw DomainError("evaluation point must lie in [-1, 1]");
}

inline void require_open_interval(double t) {
  if (std::isnan(t)) throw DomainError("evaluation point is NaN");
  if (!(std::abs(t) < 1.0)) throw DomainError("evaluation point must lie in (-1, 1)");
}

/// (n+α+β+1)/(2n+α+β+1); equals 1 at n = 0 for every admissible pair,
/// including α+β = −1 where the quotient is formally 0/0.
inline double half_ratio(const JacobiParams& p, int n) {
  if (n == 0) return 1.0;
  const double s = p.alpha() + p.beta();
  return (n + s + 1.0) / (2.0 * n + s + 1.0);
}

/// Fills out[0..N] with R_n^{α,β}(t). The recurrence is written directly
/// for the normalized polynomials so that no P_n(1) factor ever overflows.
inline void fill_normalized(const JacobiParams& p, double t, std::span<double> out) {
  if (out.empty()) return;
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 1.0 + (s + 2.0) * (t - 1.0) / (2.0 * (a + 1.0));
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double n = static_cast<double>(k);
    const double c2 = 2.0 * n + s;
    const double lead = (c2 - 1.0) * (c2 * (c2 - 2.0) * t + a * a - b * b);
    const double back = 2.0 * (n - 1.0) * (n + b - 1.0) * c2;
    const double denom = 2.0 * (n + a) * (n + s) * (c2 - 2.0);
    out[k] = (lead * out[k - 1] - back * out[k - 2]) / denom;
  }
}

/// Γ(α+1)Γ(β+1)/Γ(α+β+2): finite for every admissible pair.
inline double gamma_base(const JacobiParams& p) {
  const double a = p.alpha();
  const double b = p.beta();
  return std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
}

}  // namespace detail

/// P_n^{α,β}(1) = Γ(α+n+1)/(n! Γ(α+1)), as a running product.
inline double jacobi_p_at_one(const JacobiParams& p, int n) {
  detail::require_degree(n);
  double v = 1.0;
  for (int j = 1; j <= n; ++j) v *= (p.alpha() + j) / j;
  return v;
}

/// h_n^{α,β} = ∫ P_n² (1−t)^α (1+t)^β dt.
inline double jacobi_norm(const JacobiParams& p, int n) {
  detail::require_degree(n);
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  // q_n = Γ(n+α+1)Γ(n+β+1) / (Γ(n+1)Γ(n+α+β+2)), q_0 = gamma_base.
  double q = detail::gamma_base(p);
  const double pow2 = std::exp2(s + 1.0);
  if (n == 0) return pow2 * q;
  for (int j = 1; j <= n; ++j) q *= (j + a) * (j + b) / (j * (j + s + 1.0));
  return pow2 * q * (n + s + 1.0) / (2.0 * n + s + 1.0);
}

/// R_n^{α,β}(t) for n = 0..N.
inline std::vector<double> jacobi_r_all(const JacobiParams& p, int max_degree, double t) {
  detail::require_closed_interval(t);
  if (max_degree < 0) return {};
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1);
  if (t == 1.0) {
    std::fill(out.begin(), out.end(), 1.0);
    return out;
  }
  detail::fill_normalized(p, t, out);
  return out;
}

/// R_n^{α,β}(t) = P_n(t)/P_n(1); exactly 1 at t = 1.
inline double jacobi_r(const JacobiParams& p, int n, double t) {
  detail::require_degree(n);
  return jacobi_r_all(p, n, t).back();
}

/// P_n^{α,β}(t) by the ascending-degree recurrence.
inline double jacobi_p(const JacobiParams& p, int n, double t) {
  return jacobi_r(p, n, t) * jacobi_p_at_one(p, n);
}

/// Coefficients A_n, B_n, C_n of the derivative relation; defined for n ≥ 1.
inline DerivTriple derivative_triple(const JacobiParams& p, int n) {
  if (n < 1) throw DomainError("derivative relation is defined for n >= 1 (R_0 is constant)");
  const double a = p.alpha();
  const double b = p.beta();
  const double s = a + b;
  const double m = n;
  DerivTriple d{n, 0.0, 0.0, 0.0};
  d.a = 2.0 * m * (m + b) * (m + s + 1.0) / ((2.0 * m + s) * (2.0 * m + s + 1.0));
  d.b = (a - b) * 2.0 * m * (m + s + 1.0) / ((2.0 * m + s) * (2.0 * m + s + 2.0));
  d.c = -2.0 * m * (m + a + 1.0) * (m + s + 1.0) / ((2.0 * m + s + 1.0) * (2.0 * m + s + 2.0));
  return d;
}

/// dR_n/dt for n = 0..N at an interior point, via
/// dP_n^{α,β}/dt = (n+α+β+1)/2 · P_{n−1}^{α+1,β+1}.
inline std::vector<double> jacobi_dr_all(const JacobiParams& p, int max_degree, double t) {
  detail::require_open_interval(t);
  if (max_degree < 0) return {};
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (max_degree == 0) return out;
  const auto up = jacobi_r_all(p.raised_both(), max_degree - 1, t);
  const double s = p.alpha() + p.beta();
  for (int n = 1; n <= max_degree; ++n) {
    out[n] = (n + s + 1.0) * n / (2.0 * (p.alpha() + 1.0)) * up[n - 1];
  }
  return out;
}

inline double jacobi_dr(const JacobiParams& p, int n, double t) {
  detail::require_degree(n);
  return jacobi_dr_all(p, n, t).back();
}

}  // namespace zonalpd
