#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ahmass/error.hpp"
#include "ahmass/fields.hpp"

using namespace ahmass;

namespace {

constexpr double kPi = std::numbers::pi;

double sum_weights(const SphereGrid& g) {
  double s = 0.0;
  for (double w : g.weights()) s += w;
  return s;
}

}  // namespace

TEST(SphereGrid, NodeCountAndWeights) {
  const GridPtr g = make_grid(16, 32);
  EXPECT_EQ(g->size(), 512u);
  EXPECT_NEAR(sum_weights(*g), 4.0 * kPi, 1e-13);
  for (const auto& x : g->nodes()) EXPECT_NEAR(x.norm(), 1.0, 1e-15);
}

TEST(SphereGrid, RejectsBadSizes) {
  EXPECT_THROW(make_grid(4, 32), ConfigError);
  EXPECT_THROW(make_grid(16, 31), ConfigError);
}

TEST(SphereGrid, QuadratureOfPolynomials) {
  // int x^2 = 4 pi / 3, int x^2 y^2 = 4 pi / 15, int z^4 = 4 pi / 5
  const GridPtr g = make_grid(12, 24);
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    a += g->weight(k) * x[0] * x[0];
    b += g->weight(k) * x[0] * x[0] * x[1] * x[1];
    c += g->weight(k) * std::pow(x[2], 4);
  }
  EXPECT_NEAR(a, 4.0 * kPi / 3.0, 1e-13);
  EXPECT_NEAR(b, 4.0 * kPi / 15.0, 1e-13);
  EXPECT_NEAR(c, 4.0 * kPi / 5.0, 1e-13);
}

TEST(SphereGrid, RoundTripIsExactInBand) {
  const GridPtr g = make_grid(20, 40);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) {
    return 1.0 + x[0] * x[1] * x[2] - 3.0 * std::pow(x[2], 5) + x[0] * std::pow(x[1], 3);
  });
  const auto back = g->synthesize(g->analyze(f.values()));
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(back[k], f[k], 1e-13);
}

TEST(SphereGrid, GradientOfLinearFunctions) {
  // grad of a . x on the unit sphere is a - (a . x) x.
  const GridPtr g = make_grid(16, 32);
  const Vec3 a(0.3, -1.2, 0.7);
  const auto f = ScalarField::from_function(g, [&](const Vec3& x) { return a.dot(x); });
  const auto grad = g->gradient(f.values());
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    EXPECT_LT((grad[k] - (a - a.dot(x) * x)).norm(), 1e-13);
  }
}

TEST(SphereGrid, LaplacianEigenvalues) {
  const GridPtr g = make_grid(16, 32);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) { return x[0] * x[1]; });
  const auto lap = g->synthesize(g->apply_laplacian(g->analyze(f.values())));
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(lap[k], -6.0 * f[k], 1e-12);
}

TEST(SphereGrid, EvaluateOffGrid) {
  const GridPtr g = make_grid(16, 32);
  auto fn = [](const Vec3& x) { return x[2] * x[2] - 0.5 * x[0]; };
  const auto c = g->analyze(ScalarField::from_function(g, fn).values());
  for (const Vec3& p : {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0.6, 0.0, 0.8), Vec3(0, -0.8, 0.6)}) {
    EXPECT_NEAR(g->evaluate(c, p), fn(p), 1e-13);
  }
}

TEST(Sym2Field, RoundFrameAndChartComponents) {
  const GridPtr g = make_grid(12, 24);
  const Sym2Field g0 = Sym2Field::round(g);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_LT((g0.frame(k) - Mat2::Identity()).norm(), 1e-14);
    // Stereographic charts: g0 = 4 / (1 + |y|^2)^2 delta.
    for (Chart c : {Chart::North, Chart::South}) {
      const ChartPoint cp = chart_point(g->node(k), c);
      const double conf = 4.0 / std::pow(1.0 + cp.y.squaredNorm(), 2);
      EXPECT_LT((g0.chart(k, c) - conf * Mat2::Identity()).norm(), 1e-12 * (1.0 + conf));
    }
  }
}

TEST(Sym2Field, ChartsAgreeThroughTransitionMap) {
  // Components in the two charts are related by the Jacobian of the
  // inversion y -> y / |y|^2 composed with the reflection between charts.
  const GridPtr g = make_grid(12, 24);
  const Sym2Field t = Sym2Field::conformal(
      ScalarField::from_function(g, [](const Vec3& x) { return 2.0 + x[0] * x[2]; }));
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    if (std::abs(x[2]) > 0.5) continue;
    const ChartPoint n = chart_point(x, Chart::North);
    // d y_S / d y_N by central differences of the explicit maps.
    Mat2 jac;
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
      Vec2 dy = Vec2::Zero();
      dy[i] = h;
      const Vec2 plus = chart_point(chart_inverse(n.y + dy, Chart::North), Chart::South).y;
      const Vec2 minus = chart_point(chart_inverse(n.y - dy, Chart::North), Chart::South).y;
      jac.col(i) = (plus - minus) / (2.0 * h);
    }
    const Mat2 pulled = jac.transpose() * t.chart(k, Chart::South) * jac;
    EXPECT_LT((pulled - t.chart(k, Chart::North)).norm(), 1e-7) << "node " << k;
  }
}

TEST(Sym2Field, FromAmbientProjectsToTangentPlane) {
  const GridPtr g = make_grid(8, 16);
  const std::vector<Mat3> id(g->size(), Mat3::Identity());
  const Sym2Field t = Sym2Field::from_ambient(g, id);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_LT((t.ambient(k) * g->node(k)).norm(), 1e-15);
    EXPECT_LT((t.frame(k) - Mat2::Identity()).norm(), 1e-15);
  }
}

TEST(UnitVectorField, RejectsNonUnitAndInterpolatesIdentity) {
  const GridPtr g = make_grid(12, 24);
  std::vector<Vec3> bad(g->size(), Vec3(1.0, 0.0, 0.0));
  bad[5] = Vec3(1.0, 1e-5, 0.0);
  EXPECT_THROW(UnitVectorField(g, bad), DomainError);
  const UnitVectorField id = UnitVectorField::identity(g);
  const Vec3 p = Vec3(0.2, -0.4, 0.5).normalized();
  EXPECT_LT((id.interpolate(p) - p).norm(), 1e-13);
}

TEST(Sym2Eigenvalues, MatchesCharacteristicPolynomial) {
  Mat2 m;
  m << 2.0, 0.5, 0.5, -1.0;
  const Vec2 ev = sym2_eigenvalues(m);
  EXPECT_LE(ev[0], ev[1]);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR((m - ev[i] * Mat2::Identity()).determinant(), 0.0, 1e-14);
}
