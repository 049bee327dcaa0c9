#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ahmass/error.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/sphere_calculus.hpp"

using namespace ahmass;

namespace {

constexpr double kPi = std::numbers::pi;

// u = a x3 + b x1 x2 and its round Laplacian, written out by hand.
double u_of(const Vec3& x) { return 0.3 * x[2] + 0.2 * x[0] * x[1]; }
double lap0_u(const Vec3& x) { return -2.0 * 0.3 * x[2] - 6.0 * 0.2 * x[0] * x[1]; }

Sym2Field conformal_metric(const GridPtr& g) {
  return Sym2Field::conformal(
      ScalarField::from_function(g, [](const Vec3& x) { return std::exp(2.0 * u_of(x)); }));
}

}  // namespace

TEST(Curvature, RoundAndScaledSpheres) {
  const GridPtr g = make_grid(24, 48);
  for (double c : {1.0, 0.25, 9.0}) {
    const ScalarField K = gaussian_curvature(Sym2Field::round(g, c));
    for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(K[k], 1.0 / c, 1e-10 / c);
  }
}

TEST(Curvature, ConformalMetricFormula) {
  // K(e^{2u} g0) = e^{-2u} (1 - Lap0 u)
  const GridPtr g = make_grid(32, 64);
  const ScalarField K = gaussian_curvature(conformal_metric(g));
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    EXPECT_NEAR(K[k], std::exp(-2.0 * u_of(x)) * (1.0 - lap0_u(x)), 1e-9);
  }
}

TEST(Curvature, GaussBonnetForGeneralMetric) {
  const GridPtr g = make_grid(32, 64);
  Sym2Field h = sph_harm_tensor(g, random_table(3, 11));
  h *= 0.3 / sup_norm(h);
  const Sym2Field metric = Sym2Field::round(g) + h;
  EXPECT_NEAR(integrate(gaussian_curvature(metric), metric), 4.0 * kPi, 1e-9);
}

TEST(Laplacian, ConformalInvarianceInTwoDimensions) {
  // Lap_{e^{2u} g0} f = e^{-2u} Lap0 f, with Lap0 computed in coefficient
  // space rather than through charts.
  const GridPtr g = make_grid(32, 64);
  const Sym2Field metric = conformal_metric(g);
  const ScalarField f = ScalarField::from_function(
      g, [](const Vec3& x) { return x[0] * x[0] * x[2] - 0.5 * x[1] + x[0] * x[1] * x[2]; });
  const auto lap0 = g->synthesize(g->apply_laplacian(g->analyze(f.values())));
  const ScalarField lap = laplace_beltrami(metric, f);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_NEAR(lap[k], std::exp(-2.0 * u_of(g->node(k))) * lap0[k], 1e-9);
  }
}

TEST(Laplacian, AmbientRouteForGeneralMetric) {
  // The metric is the restriction of a smooth ambient quadratic form G(x).
  // The oracle is Lap f = (1 / sqrt|g|) d_i (sqrt|g| g^ij d_j f) in
  // (theta, phi) coordinates, with the derivatives taken by central
  // differences of closed-form expressions.
  const GridPtr g = make_grid(32, 64);
  auto G = [](const Vec3& x) {
    Mat3 m;
    m << 1.0 + 0.3 * x[2], 0.1 * x[0], 0.05,
         0.1 * x[0], 1.0 - 0.2 * x[1] * x[2], 0.1 * x[1],
         0.05, 0.1 * x[1], 1.0 + 0.25 * x[0];
    return m;
  };
  auto point = [](double th, double ph) {
    return Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  };
  auto metric_at = [&](double th, double ph) {
    const Vec3 xt(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
    const Vec3 xp(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
    const Mat3 m = G(point(th, ph));
    Mat2 out;
    out << xt.dot(m * xt), xt.dot(m * xp), xp.dot(m * xt), xp.dot(m * xp);
    return out;
  };
  auto f_of = [](const Vec3& x) { return x[2] + x[0] * x[1] - 0.5 * x[0] * x[2] * x[2]; };
  auto f_at = [&](double th, double ph) { return f_of(point(th, ph)); };

  std::vector<Mat3> amb(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) amb[k] = G(g->node(k));
  const Sym2Field metric = Sym2Field::from_ambient(g, amb);
  const ScalarField lap = laplace_beltrami(metric, ScalarField::from_function(g, f_of));

  const double h = 1e-4;
  auto flux = [&](double th, double ph, int dir) {
    const Mat2 m = metric_at(th, ph);
    const Vec2 df((f_at(th + h, ph) - f_at(th - h, ph)) / (2 * h),
                  (f_at(th, ph + h) - f_at(th, ph - h)) / (2 * h));
    return std::sqrt(m.determinant()) * (m.inverse() * df)[dir];
  };
  double worst = 0.0;
  int checked = 0;
  for (std::size_t k = 0; k < g->size(); k += 7) {
    const double th = g->theta(g->ring_of(k)), ph = g->phi(g->column_of(k));
    if (std::sin(th) < 0.3) continue;
    const double div = (flux(th + h, ph, 0) - flux(th - h, ph, 0)) / (2 * h) +
                       (flux(th, ph + h, 1) - flux(th, ph - h, 1)) / (2 * h);
    worst = std::max(worst, std::abs(lap[k] - div / std::sqrt(metric_at(th, ph).determinant())));
    ++checked;
  }
  EXPECT_GT(checked, 100);
  EXPECT_LT(worst, 1e-5);
}

TEST(Integrate, RejectsIndefiniteMetric) {
  const GridPtr g = make_grid(12, 24);
  const Sym2Field bad = Sym2Field::round(g, -1.0);
  EXPECT_THROW(integrate(ScalarField(g, 1.0), bad), DomainError);
}

TEST(RoundHessian, OfCoordinateFunction) {
  // Hess x3 = -x3 g0 on the unit sphere.
  const GridPtr g = make_grid(16, 32);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) { return x[2]; });
  const auto hess = round_hessian(*g, f.values());
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    const Mat3 proj = Mat3::Identity() - x * x.transpose();
    EXPECT_LT((hess[k] + x[2] * proj).norm(), 1e-12);
  }
}

TEST(RoundDivergence, OfGradientIsLaplacian) {
  const GridPtr g = make_grid(16, 32);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) { return x[0] * x[2]; });
  const auto div = round_divergence(*g, g->gradient(f.values()));
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_NEAR(div[k], -6.0 * f[k], 1e-11);
}

TEST(RoundLieDerivative, KillingFieldsGiveZero) {
  const GridPtr g = make_grid(16, 32);
  std::vector<Vec3> v(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) v[k] = Vec3(0.2, -1.0, 0.4).cross(g->node(k));
  const Sym2Field l = round_lie_derivative(g, v);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_LT(l.ambient(k).norm(), 1e-12);
}

TEST(Axisymmetry, DetectsRingDependence) {
  const GridPtr g = make_grid(16, 32);
  EXPECT_TRUE(is_axisymmetric(sph_harm_tensor(g, preset_table("conformal-l2")) + Sym2Field::round(g)));
  EXPECT_FALSE(is_axisymmetric(
      sph_harm_tensor(g, {{TensorPart::Electric, 2, 1, 0.3}}) + Sym2Field::round(g)));
}

TEST(GreatCircleDistance, KnownAnglesAndErrors) {
  EXPECT_NEAR(great_circle_distance(Vec3::UnitX(), Vec3::UnitY()), kPi / 2.0, 1e-15);
  EXPECT_NEAR(great_circle_distance(Vec3::UnitZ(), -Vec3::UnitZ()), kPi, 1e-15);
  const Vec3 a = Vec3(1.0, 1e-9, 0.0).normalized();
  EXPECT_NEAR(great_circle_distance(Vec3::UnitX(), a), 1e-9, 1e-20);
  EXPECT_EQ(great_circle_distance(a, a), 0.0);
  EXPECT_THROW(great_circle_distance(Vec3(2.0, 0.0, 0.0), Vec3::UnitX()), DomainError);
}
