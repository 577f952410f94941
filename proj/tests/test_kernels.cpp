#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "zonalpd/io.hpp"
#include "zonalpd/kernels.hpp"

using namespace zonalpd;

namespace {

CoeffSeq random_pd(const Space& s, std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(degree) + 1);
  for (double& x : v) x = 1.0 - u(rng);  // (0, 1]
  return {jacobi_params(s), v};
}

}  // namespace

TEST(Kernel, RequiresMatchingIndices) {
  EXPECT_THROW(ZonalKernel(Space::sphere(3), CoeffSeq({0, 0}, {1})), DomainError);
  EXPECT_NO_THROW(ZonalKernel(Space::sphere(2), CoeffSeq({0, 0}, {1})));
}

TEST(Kernel, RadialEvaluation) {
  const ZonalKernel one(Space::sphere(2), CoeffSeq({0, 0}, {1}));
  const ZonalKernel lin(Space::sphere(2), CoeffSeq({0, 0}, {0, 1}));
  for (double t : {-1.0, -0.3, 0.2, 0.8}) {
    EXPECT_EQ(eval_radial(one, t), 1.0);
    EXPECT_NEAR(eval_radial(lin, t), t, 1e-15);
  }
  EXPECT_EQ(eval_radial(ZonalKernel(Space::sphere(2), CoeffSeq({0, 0}, {1, 0.5, 0.25})), 1.0), 1.75);
  EXPECT_THROW(eval_radial(one, -1.0000001), DomainError);
}

TEST(Kernel, RadialMaximumAtOne) {
  std::mt19937_64 rng(1);
  for (const Space& s : {Space::sphere(3), Space::real_projective(5), Space::complex_projective(6),
                         Space::quaternionic_projective(12), Space::cayley()}) {
    const ZonalKernel k(s, random_pd(s, rng, 20));
    const double top = eval_radial(k, 1.0);
    for (int i = 0; i <= 400; ++i) EXPECT_LE(std::abs(eval_radial(k, -1.0 + i / 200.0)), top * (1 + 1e-14));
  }
}

TEST(Kernel, PairEvaluation) {
  const ZonalKernel lin(Space::sphere(2), CoeffSeq({0, 0}, {0, 1}));
  const auto pts = sample_points(Space::sphere(2), 6, 4);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      double ip = 0;
      for (int i = 0; i < 3; ++i) ip += x.coords[i] * y.coords[i];
      EXPECT_NEAR(eval_pair(lin, x, y), ip, 1e-15);
    }
  const ZonalKernel k(Space::sphere(4), CoeffSeq({1, 1}, {1, 0.5, 0.25}));
  const auto q = sample_points(Space::sphere(4), 2, 1);
  EXPECT_NEAR(eval_pair(k, q[0], q[0]), k.coeffs().total_mass(), 1e-14);
  EXPECT_DOUBLE_EQ(eval_pair(k, q[0], q[1]), eval_pair(k, q[1], q[0]));
}

TEST(Kernel, PairEvaluationIsZonal) {
  std::mt19937_64 rng(5);
  const Space s = Space::sphere(5);
  const ZonalKernel k(s, random_pd(s, rng, 10));
  const auto pts = sample_points(s, 8, 9);
  // random orthogonal map from a QR factorization
  Eigen::MatrixXd g(6, 6);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 36; ++i) g(i) = n(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  auto apply = [&](const Point& p) {
    Eigen::VectorXd v = q * Eigen::Map<const Eigen::VectorXd>(p.coords.data(), 6);
    return Point{{v.data(), v.data() + 6}};
  };
  for (const auto& x : pts)
    for (const auto& y : pts) EXPECT_NEAR(eval_pair(k, apply(x), apply(y)), eval_pair(k, x, y), 1e-12);
}

TEST(Kernel, CayleyHasNoPointModel) {
  const ZonalKernel k(Space::cayley(), CoeffSeq({7, 3}, {1}));
  EXPECT_THROW(eval_pair(k, Point{{1}}, Point{{1}}), UnsupportedModel);
}

TEST(Gram, SinglePoint) {
  const ZonalKernel k(Space::sphere(3), CoeffSeq({0.5, 0.5}, {1, 0.5}));
  const auto g = gram(k, sample_points(Space::sphere(3), 1, 0));
  ASSERT_EQ(g.matrix.rows(), 1);
  EXPECT_EQ(g.matrix(0, 0), 1.5);
  EXPECT_TRUE(g.psd);
  EXPECT_THROW(gram(k, std::vector<Point>{}), DomainError);
}

TEST(Gram, PositiveDefiniteKernelsGivePsdMatrices) {
  std::mt19937_64 rng(7);
  for (const Space& s : {Space::sphere(2), Space::sphere(3), Space::real_projective(3), Space::complex_projective(4),
                         Space::complex_projective(8), Space::quaternionic_projective(8),
                         Space::quaternionic_projective(16)}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ZonalKernel k(s, random_pd(s, rng, 12));
      const auto g = gram(k, sample_points(s, 40, seed));
      EXPECT_TRUE(g.psd) << describe(s) << " seed " << seed << " min " << g.min_eigenvalue;
      EXPECT_LE((g.matrix - g.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Gram, NegativeCoefficientIsDetected) {
  const ZonalKernel k(Space::sphere(2), CoeffSeq({0, 0}, {1, 0.5, -0.5}));
  bool indefinite = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) indefinite |= !gram(k, sample_points(Space::sphere(2), 40, seed)).psd;
  EXPECT_TRUE(indefinite);
}

TEST(Differentiate, FirstOrderMatchesFiniteDifferences) {
  std::mt19937_64 rng(12);
  const Space s3 = Space::sphere(3);
  const ZonalKernel k(s3, random_pd(s3, rng, 15));
  const auto d = differentiate(k, 1);
  ASSERT_EQ(d.levels.size(), 1u);
  for (int i = 0; i <= 18; ++i) {
    const double t = -0.9 + 0.1 * i;
    const double fd = (eval_radial(k, t + 1e-5) - eval_radial(k, t - 1e-5)) / 2e-5;
    EXPECT_NEAR(d.evaluator.derivative(1, t), fd, 1e-6) << t;
    EXPECT_NEAR(d.evaluator.derivative(1, t), oracle_derivative(k.coeffs(), t), 1e-9 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Differentiate, LevelOnePartsArePositiveDefiniteBelow) {
  std::mt19937_64 rng(13);
  for (const Space& s : {Space::sphere(3), Space::sphere(7), Space::real_projective(5), Space::complex_projective(6),
                         Space::quaternionic_projective(8), Space::quaternionic_projective(12), Space::cayley()}) {
    const ZonalKernel k(s, random_pd(s, rng, 20));
    const auto d = differentiate(k, 1);
    const auto& level = d.levels[0];
    EXPECT_EQ(level.decomposition.f1.params(), jacobi_params(level.to));
    EXPECT_TRUE(pd_check(level.decomposition.f1).is_pd) << describe(s);
    EXPECT_TRUE(pd_check(level.decomposition.f2).is_pd) << describe(s);
  }
  EXPECT_THROW(differentiate(ZonalKernel(Space::sphere(4), CoeffSeq({1, 1}, {1, -0.1})), 1), PreconditionError);
  EXPECT_THROW(differentiate(ZonalKernel(Space::sphere(4), CoeffSeq({1, 1}, {1, 0.1})), 2), PreconditionError);
}

TEST(Io, NumberFormatRoundTrips) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5e-300), "-2.5e-300");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Io, CoefficientDocumentsRoundTrip) {
  const CoeffSeq c({1.5, -0.5}, {0.1, 1.0 / 3.0, 2e-17}, GeometricTail{0.25, 0.75});
  const auto j = to_json(c);
  EXPECT_EQ(j["tail"]["type"], "geometric");
  EXPECT_EQ(coeffs_from_json(json::parse(j.dump())), c);
  const CoeffSeq z({0, 0}, {1});
  EXPECT_EQ(to_json(z)["tail"]["type"], "zero");
  EXPECT_EQ(coeffs_from_json(json::parse(R"({"alpha":0,"beta":0,"values":[1]})")), z);
  EXPECT_THROW(coeffs_from_json(json::parse(R"({"alpha":0,"values":[1]})")), DomainError);
  EXPECT_THROW(coeffs_from_json(json::parse(R"({"alpha":0,"beta":0,"values":[1],"tail":{"type":"poly"}})")),
               DomainError);
  EXPECT_THROW(coeffs_from_json(json::parse(R"({"alpha":-2,"beta":0,"values":[1]})")), DomainError);
}

TEST(Io, KernelAndDecompositionDocumentsRoundTrip) {
  const ZonalKernel k(Space::quaternionic_projective(12), CoeffSeq({5, 1}, {1, 0.5}));
  const auto back = kernel_from_json(json::parse(to_json(k).dump()));
  EXPECT_EQ(back.space(), k.space());
  EXPECT_EQ(back.coeffs(), k.coeffs());

  const auto d = decompose(CoeffSeq({1, 0}, {1, 0.5, 0.25}), LiftRoute::Alpha);
  const auto e = decomposition_from_json(json::parse(to_json(d).dump()));
  EXPECT_EQ(e.f1, d.f1);
  EXPECT_EQ(e.f2, d.f2);
  EXPECT_EQ(e.scale, d.scale);
  EXPECT_EQ(e.source, d.source);
  EXPECT_EQ(e.route, d.route);
}

TEST(Io, GramCsv) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, 0.5, 1;
  EXPECT_EQ(gram_csv(m), "1,0.5\n0.5,1\n");
}
