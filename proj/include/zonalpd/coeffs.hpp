#pragma once

// Fourier–Jacobi coefficient sequences f ~ Σ a_n R_n^{α,β}, their
// computation by quadrature, the index-lifting maps and re-expansion at
// other indices, and the Gangolli nonnegativity/summability test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "zonalpd/error.hpp"
#include "zonalpd/jacobi.hpp"
#include "zonalpd/quadrature.hpp"

namespace zonalpd {

/// a_n = 0 beyond the stored values.
struct ZeroTail {
  friend bool operator==(const ZeroTail&, const ZeroTail&) = default;
};

/// a_n = scale · ratio^n beyond the stored values, 0 < ratio < 1.
struct GeometricTail {
  double ratio = 0.5;
  double scale = 1.0;
  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

using Tail = std::variant<ZeroTail, GeometricTail>;

/// Default cut-off for materializing geometric tails.
inline constexpr double kTailCutoff = 1e-14;

class CoeffSeq {
 public:
  CoeffSeq(JacobiParams params, std::vector<double> values, Tail tail = ZeroTail{})
      : params_(params), values_(std::move(values)), tail_(tail) {
    if (values_.empty()) throw DomainError("coefficient sequence needs at least a_0");
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("coefficient values must be finite");
    }
    if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
      if (!(g->ratio > 0.0 && g->ratio < 1.0)) {
        throw DomainError("geometric tail ratio must lie strictly inside (0, 1)");
      }
      if (!std::isfinite(g->scale)) throw DomainError("geometric tail scale must be finite");
    }
  }

  /// Single mode a_n = 1 (all others zero).
  static CoeffSeq unit(JacobiParams params, int n) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    v.back() = 1.0;
    return {params, std::move(v)};
  }

  const JacobiParams& params() const noexcept { return params_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const Tail& tail() const noexcept { return tail_; }
  bool finite_support() const noexcept { return std::holds_alternative<ZeroTail>(tail_); }

  /// Highest stored index N.
  int degree() const noexcept { return static_cast<int>(values_.size()) - 1; }

  /// a_n including the tail model.
  double at(std::size_t n) const {
    if (n < values_.size()) return values_[n];
    if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
      return g->scale * std::pow(g->ratio, static_cast<double>(n));
    }
    return 0.0;
  }

  /// Σ_{n>N} a_n in closed form.
  double tail_sum() const {
    if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
      return g->scale * std::pow(g->ratio, values_.size()) / (1.0 - g->ratio);
    }
    return 0.0;
  }

  /// Σ a_n, the value of the series at t = 1.
  double total_mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s + tail_sum();
  }

  double sum_abs() const {
    double s = 0.0;
    for (double v : values_) s += std::abs(v);
    return s + std::abs(tail_sum());
  }

  /// Finite-support copy: geometric tails are written out until
  /// |scale|·ratio^n drops below the cut-off.
  CoeffSeq materialized(double cutoff = kTailCutoff) const {
    const auto* g = std::get_if<GeometricTail>(&tail_);
    if (g == nullptr) return *this;
    std::vector<double> v = values_;
    for (std::size_t n = v.size();; ++n) {
      const double a = g->scale * std::pow(g->ratio, static_cast<double>(n));
      if (std::abs(a) < cutoff) break;
      v.push_back(a);
    }
    return {params_, std::move(v)};
  }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  JacobiParams params_;
  std::vector<double> values_;
  Tail tail_;
};

/// Σ a_n R_n(t); exactly Σ a_n at t = 1.
inline double series_value(const CoeffSeq& c, double t) {
  detail::require_closed_interval(t);
  if (t == 1.0) return c.total_mass();
  const CoeffSeq f = c.materialized();
  const auto r = jacobi_r_all(f.params(), f.degree(), t);
  double s = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) s += f.values()[n] * r[n];
  return s;
}

namespace detail {

/// [P_n(1)]² / h_n for n = 0..N, the normalization in a_n(f).
inline std::vector<double> coefficient_factors(const JacobiParams& p, int max_degree) {
  std::vector<double> k(static_cast<std::size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n) {
    const double p1 = jacobi_p_at_one(p, n);
    k[n] = p1 * p1 / jacobi_norm(p, n);
  }
  return k;
}

/// Projects sampled values onto R_0..R_N with the given rule.
inline std::vector<double> project(const JacobiParams& p, const QuadratureRule& rule,
                                   std::span<const double> samples, int max_degree) {
  std::vector<double> acc(static_cast<std::size_t>(max_degree) + 1, 0.0);
  std::vector<double> r(acc.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    fill_normalized(p, rule.nodes[i], r);
    const double wf = rule.weights[i] * samples[i];
    for (std::size_t n = 0; n < r.size(); ++n) acc[n] += wf * r[n];
  }
  const auto k = coefficient_factors(p, max_degree);
  for (std::size_t n = 0; n < acc.size(); ++n) {
    acc[n] *= k[n];
    if (!std::isfinite(acc[n])) throw IntegrationError("quadrature produced a non-finite coefficient");
  }
  return acc;
}

inline int nodes_for_degree(int total_degree) { return total_degree / 2 + 1; }

}  // namespace detail

/// Coefficients a_0..a_N of f at indices p by Gauss–Jacobi quadrature.
/// With a known polynomial degree bound D the result is exact up to
/// rounding; otherwise D = N + 64 is assumed.
template <typename F>
CoeffSeq expand(F&& f, const JacobiParams& p, int max_degree,
                std::optional<int> degree_bound = std::nullopt) {
  detail::require_degree(max_degree);
  const int bound = degree_bound.value_or(max_degree + 64);
  const auto rule = gauss_jacobi(p, detail::nodes_for_degree(bound + max_degree));
  std::vector<double> samples(rule.nodes.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<double>(f(rule.nodes[i]));
    if (!std::isfinite(samples[i])) throw IntegrationError("integrand is not finite at a quadrature node");
  }
  return {p, detail::project(p, rule, samples, max_degree)};
}

/// Coefficients of the same function at (α+1, β).
inline CoeffSeq lift_alpha(const CoeffSeq& c) {
  const CoeffSeq f = c.materialized();
  const double a = f.params().alpha();
  const double b = f.params().beta();
  const double s = a + b;
  std::vector<double> out(f.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double n = static_cast<double>(k);
    const double keep = (n + a + 1.0) * detail::half_ratio(f.params(), static_cast<int>(k));
    const double next = (n + 1.0) * (n + b + 1.0) / (2.0 * n + s + 3.0);
    out[k] = (keep * f.at(k) - next * f.at(k + 1)) / (a + 1.0);
  }
  return {f.params().raised_alpha(), std::move(out)};
}

/// Coefficients of the same function at (α, β+1). Nonnegative in, nonnegative out.
inline CoeffSeq lift_beta(const CoeffSeq& c) {
  const CoeffSeq f = c.materialized();
  const double s = f.params().alpha() + f.params().beta();
  std::vector<double> out(f.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double n = static_cast<double>(k);
    const double keep = detail::half_ratio(f.params(), static_cast<int>(k));
    const double next = (n + 1.0) / (2.0 * n + s + 3.0);
    out[k] = keep * f.at(k) + next * f.at(k + 1);
  }
  return {f.params().raised_beta(), std::move(out)};
}

/// Coefficients of the same function at (α+1, β+1), from the four-term
/// relation in a_n, a_{n+1}, a_{n+2}.
inline CoeffSeq lift_both(const CoeffSeq& c) {
  const CoeffSeq f = c.materialized();
  const double a = f.params().alpha();
  const double b = f.params().beta();
  const double s = a + b;
  std::vector<double> out(f.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double n = static_cast<double>(k);
    const double t0 = (n + a + 1.0) * (n + s + 2.0) * detail::half_ratio(f.params(), static_cast<int>(k)) /
                      (2.0 * n + s + 2.0);
    const double t1 = (a - b) * (n + 1.0) * (n + s + 2.0) / ((2.0 * n + s + 2.0) * (2.0 * n + s + 4.0));
    const double t2 = (n + 1.0) * (n + 2.0) * (n + b + 2.0) / ((2.0 * n + s + 4.0) * (2.0 * n + s + 5.0));
    out[k] = (t0 * f.at(k) + t1 * f.at(k + 1) - t2 * f.at(k + 2)) / (a + 1.0);
  }
  return {f.params().raised_both(), std::move(out)};
}

/// Coefficients at (α−1, β): lift_alpha solved from the top degree down.
/// Every step adds positive multiples, so nothing cancels.
inline CoeffSeq lower_alpha(const CoeffSeq& c) {
  const CoeffSeq f = c.materialized();
  const JacobiParams q(f.params().alpha() - 1.0, f.params().beta());
  const double a = q.alpha();
  const double b = q.beta();
  const double s = a + b;
  std::vector<double> out(f.values().size(), 0.0);
  for (std::size_t k = out.size(); k-- > 0;) {
    const double n = static_cast<double>(k);
    const double keep = (n + a + 1.0) * detail::half_ratio(q, static_cast<int>(k));
    const double next = (n + 1.0) * (n + b + 1.0) / (2.0 * n + s + 3.0);
    const double above = k + 1 < out.size() ? out[k + 1] : 0.0;
    out[k] = ((a + 1.0) * f.values()[k] + next * above) / keep;
  }
  return {q, std::move(out)};
}

/// Coefficients at (α, β−1): lift_beta solved from the top degree down.
inline CoeffSeq lower_beta(const CoeffSeq& c) {
  const CoeffSeq f = c.materialized();
  const JacobiParams q(f.params().alpha(), f.params().beta() - 1.0);
  const double s = q.alpha() + q.beta();
  std::vector<double> out(f.values().size(), 0.0);
  for (std::size_t k = out.size(); k-- > 0;) {
    const double n = static_cast<double>(k);
    const double keep = detail::half_ratio(q, static_cast<int>(k));
    const double next = (n + 1.0) / (2.0 * n + s + 3.0);
    const double above = k + 1 < out.size() ? out[k + 1] : 0.0;
    out[k] = (f.values()[k] - next * above) / keep;
  }
  return {q, std::move(out)};
}

namespace detail {

/// k ≥ 0 with x = k, if x is a small nonnegative integer.
inline std::optional<int> integer_steps(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-12 || r < 0.0 || r > 1000.0) return std::nullopt;
  return static_cast<int>(r);
}

}  // namespace detail

/// The function Σ a_n R_n^{c.params} expanded at other admissible indices,
/// up to degree N (defaults to the source degree, which loses nothing).
///
/// Integer steps down (or up) in α and β go through the exact connection
/// recurrences; anything else through Gauss–Jacobi quadrature, whose
/// rounding is amplified by P_n(1)²/h_n ~ n^{2α+1} at large α.
inline CoeffSeq reexpand(const CoeffSeq& c, const JacobiParams& target,
                         std::optional<int> max_degree = std::nullopt) {
  const CoeffSeq f = c.materialized();
  const int n_out = max_degree.value_or(f.degree());
  detail::require_degree(n_out);
  if (target == f.params() && n_out == f.degree()) return f;

  const double da = f.params().alpha() - target.alpha();
  const double db = f.params().beta() - target.beta();
  const auto down_a = detail::integer_steps(da), down_b = detail::integer_steps(db);
  const auto up_a = detail::integer_steps(-da), up_b = detail::integer_steps(-db);
  std::optional<CoeffSeq> exact;
  if (down_a && down_b) {
    CoeffSeq g = f;
    for (int i = 0; i < *down_b; ++i) g = lower_beta(g);
    for (int i = 0; i < *down_a; ++i) g = lower_alpha(g);
    exact = g;
  } else if (up_a && up_b) {
    CoeffSeq g = f;
    for (int i = 0; i < *up_a; ++i) g = lift_alpha(g);
    for (int i = 0; i < *up_b; ++i) g = lift_beta(g);
    exact = g;
  }
  if (exact) {
    std::vector<double> v = exact->values();
    v.resize(static_cast<std::size_t>(n_out) + 1, 0.0);
    return {target, std::move(v)};
  }

  const auto rule = gauss_jacobi(target, detail::nodes_for_degree(f.degree() + n_out));
  std::vector<double> samples(rule.nodes.size());
  std::vector<double> r(f.values().size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    detail::fill_normalized(f.params(), rule.nodes[i], r);
    double v = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) v += f.values()[n] * r[n];
    samples[i] = v;
  }
  return {target, detail::project(target, rule, samples, n_out)};
}

struct PdReport {
  bool is_pd = false;
  std::optional<int> first_negative_index;
  double total_mass = 0.0;
};

/// Gangolli's criterion under the normalized basis: every a_n ≥ 0 (strict
/// sign test, no tolerance) and Σ a_n < ∞.
inline PdReport pd_check(const CoeffSeq& c) {
  PdReport r;
  for (std::size_t n = 0; n < c.values().size(); ++n) {
    if (c.values()[n] < 0.0) {
      r.first_negative_index = static_cast<int>(n);
      break;
    }
  }
  if (!r.first_negative_index) {
    if (const auto* g = std::get_if<GeometricTail>(&c.tail()); g != nullptr && g->scale < 0.0) {
      r.first_negative_index = static_cast<int>(c.values().size());
    }
  }
  r.total_mass = c.total_mass();
  r.is_pd = !r.first_negative_index && std::isfinite(r.total_mass);
  return r;
}

/// Elementwise combination x·lhs + y·rhs of sequences at the same indices.
inline CoeffSeq combine(double x, const CoeffSeq& lhs, double y, const CoeffSeq& rhs) {
  if (!(lhs.params() == rhs.params())) throw DomainError("cannot combine sequences at different indices");
  const CoeffSeq l = lhs.materialized();
  const CoeffSeq r = rhs.materialized();
  std::vector<double> v(std::max(l.values().size(), r.values().size()), 0.0);
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = x * l.at(n) + y * r.at(n);
  return {l.params(), std::move(v)};
}

}  // namespace zonalpd
