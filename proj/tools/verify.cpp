#include "verify.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "zonalpd/io.hpp"
#include "zonalpd/zonalpd.hpp"

namespace zonalpd::cli {
namespace {

using Pairs = std::vector<std::pair<double, double>>;

double chebyshev_node(int i, int n) { return std::cos(std::numbers::pi * (i + 0.5) / n); }

// α ≥ β ≥ −1/2 and a few mixed-sign points, twelve in all.
const Pairs kJacobiPairs = {{0.0, 0.0}, {1.0, 0.0},  {0.5, -0.5}, {-0.5, -0.5}, {2.0, 1.0},  {1.5, 1.5},
                            {3.0, 3.0}, {7.0, 3.0},  {-0.5, 2.0}, {0.5, 0.5},   {2.0, -0.5}, {5.0, 1.0}};

// 2α ≥ α+β ≥ −1, excluding (−1/2, −1/2) where both λ-sequences are constant.
const Pairs kAdmissible = {{0.0, 0.0},  {0.5, 0.5},   {1.0, 1.0},   {1.5, 1.5},   {3.0, 3.0},
                           {0.5, -0.5}, {1.0, -0.5},  {2.0, -0.5},  {1.0, 0.0},   {2.0, 0.0},
                           {2.0, 1.0},  {3.0, 1.0},   {7.0, 3.0},   {0.0, -0.5},  {-0.25, -0.5},
                           {0.25, -0.25}, {4.0, 0.0}, {5.0, 1.0},   {11.0, 1.0},  {0.5, 0.0}};

std::vector<Space> descending_spaces() {
  std::vector<Space> out;
  for (int d = 3; d <= 24; ++d) out.push_back(Space::sphere(d));
  for (int d = 3; d <= 24; ++d) out.push_back(Space::real_projective(d));
  for (int d = 4; d <= 24; d += 2) out.push_back(Space::complex_projective(d));
  for (int d = 8; d <= 24; d += 4) out.push_back(Space::quaternionic_projective(d));
  out.push_back(Space::cayley());
  return out;
}

std::vector<Space> gram_spaces() {
  return {Space::sphere(2),           Space::sphere(3),           Space::sphere(5),
          Space::sphere(7),           Space::real_projective(2),  Space::real_projective(3),
          Space::real_projective(5),  Space::complex_projective(4), Space::complex_projective(6),
          Space::quaternionic_projective(8), Space::quaternionic_projective(12)};
}

std::vector<double> uniform_values(std::mt19937_64& rng, int degree, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(degree) + 1);
  for (double& x : v) x = u(rng);
  return v;
}

double max_abs_diff(const CoeffSeq& a, const CoeffSeq& b) {
  const std::size_t n = std::max(a.values().size(), b.values().size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a.at(k) - b.at(k)));
  return m;
}

// Gauss–Jacobi projection in 50-digit arithmetic: the reference for the
// lift checks. A double rule cannot serve, since projecting onto R_n
// amplifies sample rounding by about n^{α+1/2}.
namespace hp {

using Real = boost::multiprecision::cpp_bin_float_50;

std::vector<Real> r_all(const Real& a, const Real& b, const Real& t, int max_degree) {
  std::vector<Real> out(static_cast<std::size_t>(max_degree) + 1);
  const Real s = a + b;
  out[0] = 1;
  if (max_degree == 0) return out;
  out[1] = 1 + (s + 2) * (t - 1) / (2 * (a + 1));
  for (int k = 2; k <= max_degree; ++k) {
    const Real n = k;
    const Real c2 = 2 * n + s;
    const Real lead = (c2 - 1) * (c2 * (c2 - 2) * t + a * a - b * b);
    const Real back = 2 * (n - 1) * (n + b - 1) * c2;
    out[k] = (lead * out[k - 1] - back * out[k - 2]) / (2 * (n + a) * (n + s) * (c2 - 2));
  }
  return out;
}

/// P_k(1)² / h_k for k = 0..m.
std::vector<Real> factors(const Real& a, const Real& b, int m) {
  using boost::math::tgamma;
  const Real s = a + b;
  std::vector<Real> f(static_cast<std::size_t>(m) + 1);
  Real q = tgamma(a + 1) * tgamma(b + 1) / tgamma(s + 2);
  Real p1 = 1;
  const Real pow2 = pow(Real(2), s + 1);
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      q *= (k + a) * (k + b) / (k * (k + s + 1));
      p1 *= (a + k) / k;
    }
    const Real h = k == 0 ? pow2 * q : pow2 * q * (k + s + 1) / (2 * k + s + 1);
    f[k] = p1 * p1 / h;
  }
  return f;
}

/// Coefficients at (a2, b2), degrees 0..m, of Σ c_n R_n^{c.params}.
std::vector<double> reexpand(const CoeffSeq& c, double a2, double b2, int m) {
  const int nodes = (c.degree() + m) / 2 + 1;
  const Real a = a2, b = b2, a0 = c.params().alpha(), b0 = c.params().beta();
  const auto guess = gauss_jacobi({a2, b2}, nodes);
  const auto fac = factors(a, b, std::max(nodes, m));
  std::vector<Real> acc(static_cast<std::size_t>(m) + 1, Real(0));
  for (double t0 : guess.nodes) {
    Real t = t0;
    for (int it = 0; it < 4; ++it) {
      // R_n' = (n+α+β+1) n / (2(α+1)) · R_{n−1}^{α+1,β+1}
      const Real r = r_all(a, b, t, nodes).back();
      const Real dr = (nodes + a + b + 1) * nodes / (2 * (a + 1)) * r_all(a + 1, b + 1, t, nodes - 1).back();
      t -= r / dr;
    }
    const auto rv = r_all(a, b, t, std::max(nodes - 1, m));
    Real sum = 0;
    for (int k = 0; k < nodes; ++k) sum += fac[k] * rv[k] * rv[k];
    const Real w = 1 / sum;
    const auto src = r_all(a0, b0, t, c.degree());
    Real f = 0;
    for (int k = 0; k <= c.degree(); ++k) f += Real(c.values()[k]) * src[k];
    for (int n = 0; n <= m; ++n) acc[n] += w * f * rv[n];
  }
  std::vector<double> out(acc.size());
  for (std::size_t n = 0; n < acc.size(); ++n) out[n] = static_cast<double>(acc[n] * fac[n]);
  return out;
}

}  // namespace hp

class Report {
 public:
  Report(std::string suite, std::ostream& out) : suite_(std::move(suite)), out_(out) {}

  // measured ≤ tol passes.
  void at_most(const std::string& check, double measured, double tol, std::string note = {}) {
    lines_.push_back({suite_, check, measured, tol, measured <= tol, std::move(note)});
  }
  void at_least(const std::string& check, double measured, double tol, std::string note = {}) {
    lines_.push_back({suite_, check, measured, tol, measured >= tol, std::move(note)});
  }
  void verdict(const std::string& check, double measured, double tol, bool pass, std::string note = {}) {
    lines_.push_back({suite_, check, measured, tol, pass, std::move(note)});
  }
  void info(const std::string& text) { out_ << "INFO " << suite_ << '.' << text << '\n'; }

  std::vector<CheckLine> take() { return std::move(lines_); }

 private:
  std::string suite_;
  std::ostream& out_;
  std::vector<CheckLine> lines_;
};

std::vector<CheckLine> jacobi_suite(std::ostream& out) {
  Report r("jacobi", out);
  double relation = 0.0, unit = 0.0, mass = 0.0, ortho = 0.0;
  for (auto [a, b] : kJacobiPairs) {
    const JacobiParams p(a, b);
    for (int i = 0; i < 50; ++i) {
      const double t = chebyshev_node(i, 50);
      const auto rv = jacobi_r_all(p, 51, t);
      const auto dr = jacobi_dr_all(p, 50, t);
      for (int n = 1; n <= 50; ++n) {
        const auto d = derivative_triple(p, n);
        const double terms = std::abs(d.a * rv[n - 1]) + std::abs(d.b * rv[n]) + std::abs(d.c * rv[n + 1]);
        const double res = (1 - t * t) * dr[n] - (d.a * rv[n - 1] + d.b * rv[n] + d.c * rv[n + 1]);
        relation = std::max(relation, std::abs(res) / std::max(1.0, terms));
      }
    }
    for (int n = 0; n <= 100; ++n) unit = std::max(unit, std::abs(jacobi_r(p, n, 1.0) - 1.0));

    const auto rule = gauss_jacobi(p, 40);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    const double exact = std::pow(2.0, a + b + 1) * std::beta(a + 1, b + 1);
    mass = std::max(mass, std::abs(sum - exact) / exact);

    const int deg = 30;
    std::vector<std::vector<double>> g(deg + 1, std::vector<double>(deg + 1, 0.0));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto rv = jacobi_r_all(p, deg, rule.nodes[i]);
      for (int m = 0; m <= deg; ++m)
        for (int n = 0; n <= deg; ++n) g[m][n] += rule.weights[i] * rv[m] * rv[n];
    }
    for (int m = 0; m <= deg; ++m)
      for (int n = 0; n < m; ++n) ortho = std::max(ortho, std::abs(g[m][n]) / std::sqrt(g[m][m] * g[n][n]));
  }
  r.at_most("derivative_relation", relation, 1e-10, "n<=50 nodes=50 pairs=12");
  r.at_most("unit_at_one", unit, 1e-12, "n<=100");
  r.at_most("quadrature_mass", mass, 1e-12, "nodes=40");
  r.at_most("orthogonality", ortho, 1e-12, "degree<=30 nodes=40");
  return r.take();
}

std::vector<CheckLine> transforms_suite(std::uint64_t seed, std::ostream& out) {
  Report r("transforms", out);
  std::mt19937_64 rng(seed);
  const std::vector<double> grid{-0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
  const int deg = 24;
  double la = 0.0, lb = 0.0, lab = 0.0, comp = 0.0, trip = 0.0, fixed = 0.0, ex = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      const JacobiParams p(a, b);
      const CoeffSeq c(p, uniform_values(rng, deg, 0.0, 1.0));
      auto quad = [&c](double a2, double b2) { return CoeffSeq({a2, b2}, hp::reexpand(c, a2, b2, deg)); };
      la = std::max(la, max_abs_diff(lift_alpha(c), quad(a + 1, b)));
      lb = std::max(lb, max_abs_diff(lift_beta(c), quad(a, b + 1)));
      lab = std::max(lab, max_abs_diff(lift_both(c), quad(a + 1, b + 1)));
      // the double-precision rule, at the same tolerance
      auto f = [&c](double t) { return series_value(c, t); };
      ex = std::max(ex, max_abs_diff(expand(f, {a + 1, b}, deg, deg), quad(a + 1, b)));
      comp = std::max(comp, max_abs_diff(lift_both(c), lift_beta(lift_alpha(c))));
      trip = std::max(trip, max_abs_diff(reexpand(reexpand(c, {a + 0.5, b + 0.5}), p), c));
      const CoeffSeq e0(p, {1.0});
      fixed = std::max({fixed, max_abs_diff(lift_alpha(e0), e0), max_abs_diff(lift_beta(e0), e0),
                        max_abs_diff(lift_both(e0), e0)});
    }
  }
  r.at_most("lift_alpha_vs_quadrature", la, 1e-10, "degree=24 pairs=36");
  r.at_most("lift_beta_vs_quadrature", lb, 1e-10, "degree=24 pairs=36");
  r.at_most("lift_both_vs_quadrature", lab, 1e-10, "degree=24 pairs=36");
  r.info("expand_double_rule max|a_n - reference|=" + format_number(ex) + " degree=24 target=(alpha+1,beta)");
  r.at_most("lift_both_is_composition", comp, 1e-12);
  r.at_most("reexpand_round_trip", trip, 1e-10, "via (alpha+1/2,beta+1/2)");
  r.at_most("unit_fixed_point", fixed, 0.0);
  return r.take();
}

std::vector<CheckLine> decomposition_suite(std::uint64_t seed, std::ostream& out) {
  Report r("decomposition", out);
  for (auto route : {LiftRoute::Alpha, LiftRoute::Both}) {
    const double s = arbitrate_scale(route);
    const std::string name = route == LiftRoute::Alpha ? "alpha" : "both";
    r.info("scale route=" + name + " value=" + format_number(s));
    r.verdict("scale_" + name, s, kDecompositionScale, s == kDecompositionScale, "arbitrated over {1,2}");
  }

  std::mt19937_64 rng(seed);
  const auto spaces = descending_spaces();
  double identity = 0.0, min_coeff = 0.0;
  for (int run = 0; run < 200; ++run) {
    const Space& s = spaces[static_cast<std::size_t>(run) % spaces.size()];
    const int degree = static_cast<int>(rng() % 32);
    const CoeffSeq c(jacobi_params(s), uniform_values(rng, degree, 0.0, 1.0));
    const auto d = chain(c, s, 1).front().decomposition;
    for (double v : d.f1.values()) min_coeff = std::min(min_coeff, v);
    for (double v : d.f2.values()) min_coeff = std::min(min_coeff, v);
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = chebyshev_node(i, 100);
      const double o = oracle_derivative(c, t);
      peak = std::max(peak, std::abs(o));
      worst = std::max(worst, std::abs((1 - t * t) * o - d.scale * (series_value(d.f1, t) - series_value(d.f2, t))));
    }
    identity = std::max(identity, worst / (1.0 + peak));
  }
  r.at_most("identity", identity, 1e-10, "runs=200 support<=32 nodes=100 d<=24");
  r.at_least("nonnegative_parts", min_coeff, -1e-12, "min coefficient of f1,f2");

  long violations = 0;
  double q_min = std::numeric_limits<double>::infinity();
  for (auto [a, b] : kAdmissible) {
    const JacobiParams p(a, b);
    for (long n = 2; n <= 10000; ++n) {
      for (double q : {q_alpha_route(p, n), q_both_route(p, n)}) {
        q_min = std::min(q_min, q);
        if (q < 0.0) ++violations;
      }
    }
  }
  r.verdict("q_nonnegative", static_cast<double>(violations), 0.0, violations == 0,
            "violations over n=2..10000, min Q_n=" + format_number(q_min));
  return r.take();
}

std::vector<CheckLine> gram_suite(std::uint64_t seed, std::ostream& out) {
  Report r("gram", out);
  std::mt19937_64 rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  int failures = 0, runs = 0;
  for (const Space& s : gram_spaces()) {
    for (std::uint64_t k = 0; k < 5; ++k) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> v(13);
      for (double& x : v) x = 1.0 - u(rng);
      const ZonalKernel kernel(s, CoeffSeq(jacobi_params(s), v));
      const auto g = gram(kernel, sample_points(s, 30, seed + k));
      worst = std::min(worst, g.min_eigenvalue / (g.matrix.trace() / 30.0));
      failures += g.psd ? 0 : 1;
      ++runs;
    }
  }
  r.verdict("pd_kernels_psd", worst, -kPsdTolerance, failures == 0,
            "min lambda_min/(trace/n) over " + std::to_string(runs) + " runs, points=30");

  const Space s2 = Space::sphere(2);
  const ZonalKernel negative(s2, CoeffSeq(jacobi_params(s2), {1.0, 0.5, -0.5}));
  double most_negative = 0.0;
  int indefinite = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto g = gram(negative, sample_points(s2, 30, seed + k));
    most_negative = std::min(most_negative, g.min_eigenvalue / (g.matrix.trace() / 30.0));
    indefinite += g.psd ? 0 : 1;
  }
  r.verdict("negative_control_detected", most_negative, -kPsdTolerance, indefinite > 0,
            std::to_string(indefinite) + "/20 indefinite, coeffs=(1,0.5,-0.5) on sphere:2");
  return r.take();
}

std::vector<CheckLine> lambdas_suite(std::ostream& out) {
  Report r("lambdas", out);
  const long horizon = 100000;
  long non_monotone = 0;
  double dev_alpha = 0.0, dev_both = 0.0;
  for (auto [a, b] : kAdmissible) {
    const JacobiParams p(a, b);
    double pa = 0.0, pb = 0.0;
    for (long n = 1; n <= horizon; ++n) {
      const double la = lambda_alpha_route(p, n);
      const double lb = lambda_both_route(p, n);
      if (!(la > pa && la < 1.0)) ++non_monotone;
      if (!(lb > pb && lb < 1.0)) ++non_monotone;
      pa = la;
      pb = lb;
    }
    const double da = std::abs(lambda_power(pa, horizon) - std::exp(-2 * a - 1));
    const double db = std::abs(lambda_power(pb, horizon) - std::exp(-3 * a - b - 2));
    r.info("alpha_route alpha=" + format_number(a) + " beta=" + format_number(b) +
           " |lambda_n^n - e^{-2a-1}|=" + format_number(da) + " n=100000");
    r.info("both_route alpha=" + format_number(a) + " beta=" + format_number(b) +
           " |lambda_n^n - e^{-3a-b-2}|=" + format_number(db) + " n=100000");
    dev_alpha = std::max(dev_alpha, da);
    dev_both = std::max(dev_both, db);
  }
  r.verdict("strictly_increasing", static_cast<double>(non_monotone), 0.0, non_monotone == 0,
            "violations, both routes, n<=100000, 20 admissible pairs");
  r.at_most("alpha_route_limit", dev_alpha, 2e-3, "max |lambda_n^n - e^{-2a-1}|");
  r.at_most("both_route_limit", dev_both, 2e-3, "max |lambda_n^n - e^{-3a-b-2}|");
  return r.take();
}

}  // namespace

std::optional<std::vector<CheckLine>> run_suite(const std::string& name, std::uint64_t seed, std::ostream& out) {
  if (name == "all") {
    std::vector<CheckLine> all;
    for (const auto& s : suite_names()) {
      const auto part = run_suite(s, seed, out);
      all.insert(all.end(), part->begin(), part->end());
    }
    return all;
  }
  if (name == "jacobi") return jacobi_suite(out);
  if (name == "transforms") return transforms_suite(seed, out);
  if (name == "decomposition") return decomposition_suite(seed, out);
  if (name == "gram") return gram_suite(seed, out);
  if (name == "lambdas") return lambdas_suite(out);
  return std::nullopt;
}

}  // namespace zonalpd::cli
