#pragma once

// The compact two-point homogeneous spaces: spheres, projective spaces over
// ℝ, ℂ, ℍ and the Cayley plane. Each carries its Jacobi indices, a descent
// target (the embedded space whose kernels witness the first derivative),
// its smoothness order and, except for the Cayley plane, a point model.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zonalpd/error.hpp"
#include "zonalpd/jacobi.hpp"

namespace zonalpd {

enum class SpaceKind { Sphere, RealProjective, ComplexProjective, QuaternionicProjective, CayleyPlane };

class Space {
 public:
  /// Throws DomainError unless d is admissible for the family.
  Space(SpaceKind kind, int d, bool half_radius = false) : kind_(kind), d_(d), half_radius_(half_radius) {
    bool ok = false;
    switch (kind) {
      case SpaceKind::Sphere: ok = d >= 1; break;
      case SpaceKind::RealProjective: ok = d >= 2; break;
      case SpaceKind::ComplexProjective: ok = d >= 4 && d % 2 == 0; break;
      case SpaceKind::QuaternionicProjective: ok = d >= 8 && d % 4 == 0; break;
      case SpaceKind::CayleyPlane: ok = d == 16; break;
    }
    if (!ok) throw DomainError("invalid dimension " + std::to_string(d) + " for " + family_name(kind));
    if (half_radius && kind != SpaceKind::Sphere) throw DomainError("only sphere models carry a radius-1/2 flag");
  }

  static Space sphere(int d) { return {SpaceKind::Sphere, d}; }
  static Space real_projective(int d) { return {SpaceKind::RealProjective, d}; }
  static Space complex_projective(int d) { return {SpaceKind::ComplexProjective, d}; }
  static Space quaternionic_projective(int d) { return {SpaceKind::QuaternionicProjective, d}; }
  static Space cayley() { return {SpaceKind::CayleyPlane, 16}; }

  SpaceKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return d_; }

  /// Sphere model of radius 1/2 standing in for P¹(ℝ) or P²(ℂ); the
  /// Fourier–Jacobi coefficients are those of the unit sphere.
  bool half_radius() const noexcept { return half_radius_; }

  static std::string family_name(SpaceKind k) {
    switch (k) {
      case SpaceKind::Sphere: return "sphere";
      case SpaceKind::RealProjective: return "real projective space";
      case SpaceKind::ComplexProjective: return "complex projective space";
      case SpaceKind::QuaternionicProjective: return "quaternionic projective space";
      case SpaceKind::CayleyPlane: return "Cayley plane";
    }
    return "?";
  }

  friend bool operator==(const Space&, const Space&) = default;
  friend auto operator<=>(const Space&, const Space&) = default;

 private:
  SpaceKind kind_;
  int d_;
  bool half_radius_;
};

/// Descriptor string: `sphere:d`, `rp:d`, `cp:d`, `hp:d`, `cayley`.
inline std::string to_string(const Space& s) {
  const std::string d = std::to_string(s.dimension());
  switch (s.kind()) {
    case SpaceKind::Sphere: return "sphere:" + d;
    case SpaceKind::RealProjective: return "rp:" + d;
    case SpaceKind::ComplexProjective: return "cp:" + d;
    case SpaceKind::QuaternionicProjective: return "hp:" + d;
    case SpaceKind::CayleyPlane: return "cayley";
  }
  return {};
}

/// Human-readable form that keeps the radius flag.
inline std::string describe(const Space& s) {
  return s.half_radius() ? to_string(s) + " (radius 1/2)" : to_string(s);
}

inline Space parse_space(std::string_view text) {
  if (text == "cayley") return Space::cayley();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("space descriptor must look like sphere:d, rp:d, cp:d, hp:d or cayley");
  const auto family = text.substr(0, colon);
  const auto digits = text.substr(colon + 1);
  int d = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw DomainError("space dimension is not an integer: " + std::string(digits));
  }
  if (family == "sphere") return Space::sphere(d);
  if (family == "rp") return Space::real_projective(d);
  if (family == "cp") return Space::complex_projective(d);
  if (family == "hp") return Space::quaternionic_projective(d);
  throw DomainError("unknown space family: " + std::string(family));
}

/// α = (d−2)/2 and β = (d−2)/2, −1/2, 0, 1, 3 by family.
inline JacobiParams jacobi_params(const Space& s) {
  const double alpha = (s.dimension() - 2) / 2.0;
  switch (s.kind()) {
    case SpaceKind::Sphere: return {alpha, alpha};
    case SpaceKind::RealProjective: return {alpha, -0.5};
    case SpaceKind::ComplexProjective: return {alpha, 0.0};
    case SpaceKind::QuaternionicProjective: return {alpha, 1.0};
    case SpaceKind::CayleyPlane: return {alpha, 3.0};
  }
  return {alpha, alpha};
}

inline bool can_descend(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Sphere: return s.dimension() >= 3;
    case SpaceKind::RealProjective: return s.dimension() >= 3;
    case SpaceKind::ComplexProjective: return s.dimension() >= 4;
    case SpaceKind::QuaternionicProjective: return s.dimension() >= 8;
    case SpaceKind::CayleyPlane: return true;
  }
  return false;
}

/// The embedded space carrying f₁ and f₂ in (1−t²)K′ = f₁ − f₂.
inline Space descend(const Space& s) {
  if (!can_descend(s)) throw PreconditionError("no descent target for " + describe(s));
  const int d = s.dimension();
  switch (s.kind()) {
    case SpaceKind::Sphere: return {SpaceKind::Sphere, d - 2, s.half_radius()};
    case SpaceKind::RealProjective:
      // P¹(ℝ) is the circle of radius 1/2.
      return d == 3 ? Space{SpaceKind::Sphere, 1, true} : Space::real_projective(d - 2);
    case SpaceKind::ComplexProjective:
      // P²(ℂ) is the 2-sphere of radius 1/2.
      return d == 4 ? Space{SpaceKind::Sphere, 2, true} : Space::complex_projective(d - 2);
    case SpaceKind::QuaternionicProjective: {
      const int target = d % 8 == 0 ? d / 2 - 2 : d / 2;
      return target == 2 ? Space{SpaceKind::Sphere, 2, true} : Space::complex_projective(target);
    }
    // S²_{1/2} ⊂ S⁴_{1/2} ≅ P⁴(ℍ) ⊂ P¹⁶(Cay).
    case SpaceKind::CayleyPlane: return {SpaceKind::Sphere, 2, true};
  }
  return s;
}

/// Largest k with the radial part guaranteed of class C^k on (−1, 1).
inline int smoothness_order(const Space& s) {
  const int d = s.dimension();
  switch (s.kind()) {
    case SpaceKind::Sphere:
    case SpaceKind::RealProjective: return (d - 1) / 2;
    case SpaceKind::ComplexProjective: return (d - 2) / 2;
    case SpaceKind::QuaternionicProjective: return d % 8 == 0 ? (d - 4) / 4 : d / 4;
    case SpaceKind::CayleyPlane: return 1;
  }
  return 0;
}

namespace detail {

/// Direct isometric embeddings out of s (all raise the dimension).
inline std::vector<Space> embedding_successors(const Space& s) {
  std::vector<Space> out;
  const int d = s.dimension();
  switch (s.kind()) {
    case SpaceKind::Sphere:
      out.push_back(Space::sphere(d + 1));
      break;
    case SpaceKind::RealProjective:
      out.push_back(Space::real_projective(d + 1));
      out.push_back(Space::complex_projective(2 * d));
      break;
    case SpaceKind::ComplexProjective:
      out.push_back(Space::complex_projective(d + 2));
      out.push_back(Space::quaternionic_projective(2 * d));
      break;
    case SpaceKind::QuaternionicProjective:
      out.push_back(Space::quaternionic_projective(d + 4));
      if (d == 8) out.push_back(Space::cayley());
      break;
    case SpaceKind::CayleyPlane: break;
  }
  return out;
}

}  // namespace detail

/// Whether a isometrically embeds into b through the catalogued embeddings.
inline bool embeds_in(const Space& a, const Space& b) {
  const Space from{a.kind(), a.dimension()};
  const Space to{b.kind(), b.dimension()};
  if (from == to) return true;
  std::set<Space> seen{from};
  std::queue<Space> frontier;
  frontier.push(from);
  while (!frontier.empty()) {
    const Space cur = frontier.front();
    frontier.pop();
    for (const Space& next : detail::embedding_successors(cur)) {
      if (next == to) return true;
      if (next.dimension() <= to.dimension() && seen.insert(next).second) frontier.push(next);
    }
  }
  return false;
}

/// Unit vector over the base field, flattened to reals: ℂ entries as
/// (re, im) pairs, ℍ entries as (1, i, j, k) quadruples.
struct Point {
  std::vector<double> coords;
};

/// Number of base-field entries and reals per entry of the model.
inline std::pair<int, int> model_shape(const Space& s) {
  const int d = s.dimension();
  switch (s.kind()) {
    case SpaceKind::Sphere: return {d + 1, 1};
    case SpaceKind::RealProjective: return {d + 1, 1};
    case SpaceKind::ComplexProjective: return {d / 2 + 1, 2};
    case SpaceKind::QuaternionicProjective: return {d / 4 + 1, 4};
    case SpaceKind::CayleyPlane: break;
  }
  throw UnsupportedModel("the Cayley plane has no point model");
}

namespace detail {

using Quat = std::array<double, 4>;

inline Quat quat_mul(const Quat& x, const Quat& y) {
  return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
          x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
          x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

inline Quat quat_conj(const Quat& x) { return {x[0], -x[1], -x[2], -x[3]}; }

/// Right-multiplies every entry by a unit scalar so that the first
/// nonzero entry becomes real and positive.
inline void canonical_gauge(std::vector<double>& v, int width) {
  const std::size_t w = static_cast<std::size_t>(width);
  std::size_t lead = 0;
  while (lead < v.size()) {
    double m = 0.0;
    for (std::size_t c = 0; c < w; ++c) m += v[lead + c] * v[lead + c];
    if (m > 0.0) break;
    lead += w;
  }
  if (lead >= v.size()) return;
  double norm = 0.0;
  for (std::size_t c = 0; c < w; ++c) norm += v[lead + c] * v[lead + c];
  norm = std::sqrt(norm);
  Quat u{};
  for (std::size_t c = 0; c < w; ++c) u[c] = (c == 0 ? 1.0 : -1.0) * v[lead + c] / norm;
  for (std::size_t e = 0; e < v.size(); e += w) {
    Quat x{};
    for (std::size_t c = 0; c < w; ++c) x[c] = v[e + c];
    const Quat y = quat_mul(x, u);
    for (std::size_t c = 0; c < w; ++c) v[e + c] = y[c];
  }
  v[lead] = norm;
  for (std::size_t c = 1; c < w; ++c) v[lead + c] = 0.0;
}

}  // namespace detail

/// n points uniform on the model, deterministic in the seed. Projective
/// points are returned in a canonical gauge.
inline std::vector<Point> sample_points(const Space& s, int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("need at least one point");
  const auto [entries, width] = model_shape(s);
  const std::size_t len = static_cast<std::size_t>(entries * width);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(len);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : v) {
        x = normal(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    if (s.kind() != SpaceKind::Sphere) detail::canonical_gauge(v, width);
    pts.push_back({std::move(v)});
  }
  return pts;
}

/// t(x, y) ∈ [−1, 1] with K(x, y) = K_r(t): ⟨x,y⟩ on spheres and
/// 2|⟨x,y⟩|² − 1 on projective spaces.
inline double zonal_argument(const Space& s, const Point& x, const Point& y) {
  const auto [entries, width] = model_shape(s);
  const std::size_t len = static_cast<std::size_t>(entries * width);
  if (x.coords.size() != len || y.coords.size() != len) {
    throw DomainError("point dimension does not match " + describe(s));
  }
  double t = 0.0;
  if (s.kind() == SpaceKind::Sphere) {
    for (std::size_t i = 0; i < len; ++i) t += x.coords[i] * y.coords[i];
  } else {
    detail::Quat acc{};
    const std::size_t w = static_cast<std::size_t>(width);
    for (std::size_t e = 0; e < len; e += w) {
      detail::Quat a{}, b{};
      for (std::size_t c = 0; c < w; ++c) {
        a[c] = x.coords[e + c];
        b[c] = y.coords[e + c];
      }
      const auto prod = detail::quat_mul(detail::quat_conj(a), b);
      for (std::size_t c = 0; c < 4; ++c) acc[c] += prod[c];
    }
    const double mod2 = acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2] + acc[3] * acc[3];
    t = 2.0 * mod2 - 1.0;
  }
  return std::clamp(t, -1.0, 1.0);
}

}  // namespace zonalpd
