#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "verify.hpp"
#include "zonalpd/io.hpp"
#include "zonalpd/zonalpd.hpp"

namespace zonalpd::cli {
namespace {

struct Options {
  std::string space;
  std::optional<double> alpha, beta;
  std::string coeffs;
  std::optional<int> n;
  std::vector<double> t;
  int points = 30;
  std::uint64_t seed = 0;
  int order = 1;
  std::string format = "text";
  std::string out;
  std::string kind = "alpha";
  std::string suite = "all";
};

const CLI::Validator kSpaceDescriptor(
    [](std::string& s) {
      try {
        parse_space(s);
        return std::string{};
      } catch (const DomainError& e) {
        return std::string(e.what());
      }
    },
    "SPACE", "space descriptor");

std::string header(const std::string& verb, const Options& o, const std::string& extra = {}) {
  std::string h = "# " + verb;
  if (!extra.empty()) h += ' ' + extra;
  return h + " seed=" + std::to_string(o.seed) + '\n';
}

/// A coefficient document, or a kernel document whose space must agree
/// with --space when both are given.
struct Loaded {
  std::optional<Space> space;
  CoeffSeq coeffs;
};

Loaded load_coefficients(const std::string& path) {
  const json j = read_json_file(path);
  if (j.is_object() && j.contains("space")) {
    const ZonalKernel k = kernel_from_json(j);
    return {k.space(), k.coeffs()};
  }
  return {std::nullopt, coeffs_from_json(j)};
}

ZonalKernel load_kernel(const Options& o) {
  if (o.coeffs.empty()) throw PreconditionError("--coeffs is required");
  Loaded l = load_coefficients(o.coeffs);
  std::optional<Space> s = o.space.empty() ? l.space : std::optional<Space>(parse_space(o.space));
  if (!s) throw PreconditionError("--space is required for a bare coefficient document");
  if (l.space && !(*l.space == *s)) {
    throw DomainError("kernel document is for " + describe(*l.space) + ", not " + describe(*s));
  }
  return {*s, std::move(l.coeffs)};
}

JacobiParams target_params(const Options& o) {
  if (!o.space.empty()) {
    if (o.alpha || o.beta) throw PreconditionError("give either --space or --alpha/--beta, not both");
    return jacobi_params(parse_space(o.space));
  }
  if (!o.alpha || !o.beta) throw PreconditionError("--alpha and --beta (or --space) are required");
  return {*o.alpha, *o.beta};
}

void emit_coeffs(std::ostream& os, const CoeffSeq& c, const Options& o, const std::string& verb) {
  if (o.format == "csv") {
    os << header(verb, o,
                 "alpha=" + format_number(c.params().alpha()) + " beta=" + format_number(c.params().beta()));
    os << "n,a_n\n";
    for (std::size_t k = 0; k < c.values().size(); ++k) os << k << ',' << format_number(c.values()[k]) << '\n';
    if (const auto* g = std::get_if<GeometricTail>(&c.tail())) {
      os << "# tail=geometric ratio=" << format_number(g->ratio) << " scale=" << format_number(g->scale) << '\n';
    }
  } else {
    os << to_json(c).dump() << '\n';
  }
}

int jacobi_eval(const Options& o, std::ostream& os) {
  const JacobiParams p(*o.alpha, *o.beta);
  const int n = *o.n;
  const bool csv = o.format == "csv";
  os << header("jacobi-eval", o,
               "alpha=" + format_number(p.alpha()) + " beta=" + format_number(p.beta()) + " n=" + std::to_string(n));
  if (csv) os << "t,R,P,dR\n";
  for (double t : o.t) {
    const double r = jacobi_r(p, n, t);
    const double pv = jacobi_p(p, n, t);
    const bool interior = std::abs(t) < 1.0;
    const std::string dr = interior ? format_number(jacobi_dr(p, n, t)) : "";
    if (csv) {
      os << format_number(t) << ',' << format_number(r) << ',' << format_number(pv) << ',' << dr << '\n';
    } else {
      os << "t=" << format_number(t) << " R=" << format_number(r) << " P=" << format_number(pv);
      if (interior) os << " dR=" << dr;
      os << '\n';
    }
  }
  return 0;
}

int expand_verb(const Options& o, std::ostream& os) {
  if (o.coeffs.empty()) throw PreconditionError("--coeffs is required");
  const CoeffSeq c = load_coefficients(o.coeffs).coeffs;
  emit_coeffs(os, reexpand(c, target_params(o), o.n), o, "expand");
  return 0;
}

int lift_verb(const Options& o, std::ostream& os) {
  if (o.coeffs.empty()) throw PreconditionError("--coeffs is required");
  const CoeffSeq c = load_coefficients(o.coeffs).coeffs;
  const CoeffSeq r = o.kind == "alpha" ? lift_alpha(c) : o.kind == "beta" ? lift_beta(c) : lift_both(c);
  emit_coeffs(os, r, o, "lift");
  return 0;
}

int pd_check_verb(const Options& o, std::ostream& os) {
  if (o.coeffs.empty()) throw PreconditionError("--coeffs is required");
  const auto r = pd_check(load_coefficients(o.coeffs).coeffs);
  if (o.format == "csv") {
    os << "is_pd,index,total_mass\n"
       << (r.is_pd ? "true" : "false") << ','
       << (r.first_negative_index ? std::to_string(*r.first_negative_index) : "") << ','
       << format_number(r.total_mass) << '\n';
  } else {
    os << "is_pd=" << (r.is_pd ? "true" : "false");
    if (r.first_negative_index) os << " index=" << *r.first_negative_index;
    os << " total_mass=" << format_number(r.total_mass) << '\n';
  }
  return 0;
}

int kernel_eval(const Options& o, std::ostream& os) {
  const ZonalKernel k = load_kernel(o);
  const bool csv = o.format == "csv";
  os << header("kernel-eval", o, "space=" + to_string(k.space()));
  if (csv) os << "t,K\n";
  for (double t : o.t) {
    const double v = eval_radial(k, t);
    if (csv) {
      os << format_number(t) << ',' << format_number(v) << '\n';
    } else {
      os << "t=" << format_number(t) << " K=" << format_number(v) << '\n';
    }
  }
  return 0;
}

int gram_verb(const Options& o, std::ostream& os) {
  const ZonalKernel k = load_kernel(o);
  if (o.points < 1) throw PreconditionError("--points must be at least 1");
  const auto g = gram(k, sample_points(k.space(), o.points, o.seed));
  const std::string summary = "space=" + to_string(k.space()) + " points=" + std::to_string(o.points) +
                              " min_eigenvalue=" + format_number(g.min_eigenvalue) +
                              " psd=" + (g.psd ? "true" : "false");
  os << header("gram", o, summary);
  if (o.format == "csv") os << gram_csv(g.matrix);
  return 0;
}

int derive_verb(const Options& o, std::ostream& os) {
  const ZonalKernel k = load_kernel(o);
  const auto d = differentiate(k, o.order);
  std::vector<double> ts = o.t;
  if (ts.empty()) {
    for (int i = 0; i <= 18; ++i) ts.push_back(-0.9 + 0.1 * i);
  }
  const bool csv = o.format == "csv";
  os << header("derive", o, "space=" + to_string(k.space()) + " order=" + std::to_string(o.order));
  for (std::size_t j = 0; j < d.levels.size(); ++j) {
    const auto& l = d.levels[j];
    os << (csv ? "# " : "") << "level=" << j + 1 << " from=" << to_string(l.from) << " to=" << describe(l.to)
       << " route=" << (l.decomposition.route == LiftRoute::Alpha ? "alpha" : "both")
       << " scale=" << format_number(l.decomposition.scale) << '\n';
    if (!csv) {
      os << "f1=" << to_json(l.decomposition.f1).dump() << '\n';
      os << "f2=" << to_json(l.decomposition.f2).dump() << '\n';
    }
  }
  if (csv) {
    os << "t,f";
    for (int j = 1; j <= o.order; ++j) os << ",d" << j;
    os << '\n';
  }
  for (double t : ts) {
    // evaluate every column before printing so a bad t leaves no partial row
    std::vector<double> row;
    for (int j = 0; j <= o.order; ++j) row.push_back(d.evaluator.derivative(j, t));
    if (csv) {
      os << format_number(t);
      for (double v : row) os << ',' << format_number(v);
    } else {
      os << "t=" << format_number(t) << " f=" << format_number(row[0]);
      for (int j = 1; j <= o.order; ++j) os << " d" << j << '=' << format_number(row[static_cast<std::size_t>(j)]);
    }
    os << '\n';
  }
  return 0;
}

int order_verb(const Options& o, std::ostream& os) {
  os << smoothness_order(parse_space(o.space)) << '\n';
  return 0;
}

int verify_verb(const Options& o, std::ostream& os) {
  os << header("verify", o, "suite=" + o.suite);
  const std::vector<std::string> suites = o.suite == "all" ? suite_names() : std::vector<std::string>{o.suite};
  int passed = 0, failed = 0;
  for (const auto& s : suites) {
    const auto lines = run_suite(s, o.seed, os);
    for (const auto& line : *lines) {
      os << (line.pass ? "PASS " : "FAIL ") << line.suite << '.' << line.check
         << " measured=" << format_number(line.measured) << " tol=" << format_number(line.tolerance);
      if (!line.note.empty()) os << " (" << line.note << ')';
      os << '\n';
      (line.pass ? passed : failed) += 1;
    }
  }
  os << "# passed=" << passed << " failed=" << failed << '\n';
  return failed == 0 ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "random seed (echoed in headers)");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "text"}));
  sub->add_option("--out", o.out, "write output to a file");
}

void add_params(CLI::App* sub, Options& o, bool required) {
  auto* a = sub->add_option("--alpha", o.alpha, "Jacobi index alpha");
  auto* b = sub->add_option("--beta", o.beta, "Jacobi index beta");
  if (required) {
    a->required();
    b->required();
  }
}

CLI::Option* add_space(CLI::App* sub, Options& o) {
  return sub->add_option("--space", o.space, "sphere:d, rp:d, cp:d, hp:d or cayley")->check(kSpaceDescriptor);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Positive definite zonal kernels on two-point homogeneous spaces", "zonalpd");
  app.require_subcommand(1);

  auto* je = app.add_subcommand("jacobi-eval", "evaluate R_n, P_n and R_n' at t");
  add_params(je, o, true);
  je->add_option("--n", o.n, "degree")->required()->check(CLI::NonNegativeNumber);
  je->add_option("--t", o.t, "points in [-1,1], comma separated")->required()->delimiter(',');

  auto* ex = app.add_subcommand("expand", "re-expand coefficients at other indices");
  add_params(ex, o, false);
  add_space(ex, o);
  ex->add_option("--coeffs", o.coeffs, "coefficient file")->required();
  ex->add_option("--n", o.n, "output degree")->check(CLI::NonNegativeNumber);

  auto* li = app.add_subcommand("lift", "coefficients at (alpha+1,beta), (alpha,beta+1) or (alpha+1,beta+1)");
  li->add_option("--coeffs", o.coeffs, "coefficient file")->required();
  li->add_option("--kind", o.kind, "alpha, beta or both")->check(CLI::IsMember({"alpha", "beta", "both"}));

  auto* pd = app.add_subcommand("pd-check", "Gangolli test: nonnegative, summable coefficients");
  pd->add_option("--coeffs", o.coeffs, "coefficient file")->required();

  auto* ke = app.add_subcommand("kernel-eval", "evaluate K_r(t)");
  add_space(ke, o);
  ke->add_option("--coeffs", o.coeffs, "coefficient or kernel file")->required();
  ke->add_option("--t", o.t, "points in [-1,1], comma separated")->required()->delimiter(',');

  auto* gr = app.add_subcommand("gram", "Gram matrix on sampled points");
  add_space(gr, o);
  gr->add_option("--coeffs", o.coeffs, "coefficient or kernel file")->required();
  gr->add_option("--points", o.points, "number of sampled points");

  auto* de = app.add_subcommand("derive", "derivative chain of K_r");
  add_space(de, o);
  de->add_option("--coeffs", o.coeffs, "coefficient or kernel file")->required();
  de->add_option("--order", o.order, "derivative order");
  de->add_option("--t", o.t, "points in (-1,1), comma separated")->delimiter(',');

  auto* od = app.add_subcommand("order", "largest k with K_r in C^k for every PD kernel");
  add_space(od, o)->required();

  auto* ve = app.add_subcommand("verify", "run invariant suites");
  ve->add_option("--suite", o.suite, "jacobi, transforms, decomposition, gram, lambdas or all")
      ->check(CLI::IsMember({"jacobi", "transforms", "decomposition", "gram", "lambdas", "all"}));

  for (auto* sub : {je, ex, li, pd, ke, gr, de, od, ve}) add_common(sub, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream buf;
  int code = 0;
  try {
    if (*je) code = jacobi_eval(o, buf);
    else if (*ex) code = expand_verb(o, buf);
    else if (*li) code = lift_verb(o, buf);
    else if (*pd) code = pd_check_verb(o, buf);
    else if (*ke) code = kernel_eval(o, buf);
    else if (*gr) code = gram_verb(o, buf);
    else if (*de) code = derive_verb(o, buf);
    else if (*od) code = order_verb(o, buf);
    else code = verify_verb(o, buf);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << buf.str())) {
      err << "error: cannot write " << o.out << '\n';
      return 1;
    }
  }
  return code;
}

}  // namespace zonalpd::cli
