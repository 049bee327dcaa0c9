#include <cmath>

#include <gtest/gtest.h>

#include "ahmass/error.hpp"
#include "ahmass/minkowski.hpp"

using namespace ahmass;

TEST(Minkowski, InnerProductSignature) {
  EXPECT_EQ(lorentz_inner(Vec4(1, 0, 0, 0), Vec4(1, 0, 0, 0)), 1.0);
  EXPECT_EQ(lorentz_inner(Vec4(0, 1, 0, 0), Vec4(0, 1, 0, 0)), -1.0);
  EXPECT_EQ(lorentz_inner(Vec4(2, 1, 3, -1), Vec4(1, 1, 1, 1)), 2.0 - 1.0 - 3.0 + 1.0);
}

TEST(Minkowski, CausalClasses) {
  EXPECT_EQ(causal_class(Vec4(2, 1, 0, 0)), CausalClass::FutureTimelike);
  EXPECT_EQ(causal_class(Vec4(-2, 1, 0, 0)), CausalClass::PastTimelike);
  EXPECT_EQ(causal_class(Vec4(1, 0, 1, 0)), CausalClass::FutureNull);
  EXPECT_EQ(causal_class(Vec4(-1, 0, 0, 1)), CausalClass::PastNull);
  EXPECT_EQ(causal_class(Vec4(1, 2, 0, 0)), CausalClass::Spacelike);
  EXPECT_EQ(causal_class(Vec4(0, 0, 0, 0)), CausalClass::Zero);
  EXPECT_EQ(causal_class(Vec4(1e-12, -1e-12, 0, 0)), CausalClass::Zero);
  // Within the relative band of a null vector.
  EXPECT_EQ(causal_class(Vec4(1.0 + 1e-12, 1.0, 0, 0)), CausalClass::FutureNull);
}

TEST(Minkowski, BoostToOriginMapsPointAndPreservesMetric) {
  const Vec4 p = hyperboloid_point(1.3, Vec3(0.2, -0.5, 0.7).normalized());
  const LorentzMap b = boost_to_origin(p);
  const Vec4 o = b.apply(p);
  EXPECT_NEAR(o.t, 1.0, 1e-12);
  EXPECT_LT(o.x.norm(), 1e-12);
  EXPECT_LT(b.defect(), 1e-12);
  const Vec4 u(0.3, 1.0, -2.0, 0.5), v(2.0, 0.1, 0.4, -1.0);
  EXPECT_NEAR(lorentz_inner(b.apply(u), b.apply(v)), lorentz_inner(u, v), 1e-12);
  const Vec4 back = b.inverse().apply(o);
  EXPECT_LT((back - p).max_abs(), 1e-12);
}

TEST(Minkowski, LorentzMapValidation) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(1, 1) = 1.001;
  EXPECT_THROW(LorentzMap{m}, DomainError);
  // Time reversal is a Lorentz transformation but not orthochronous.
  m = Eigen::Matrix4d::Identity();
  m(0, 0) = -1.0;
  EXPECT_THROW(LorentzMap{m}, DomainError);
  Mat3 not_orthogonal = Mat3::Identity();
  not_orthogonal(0, 1) = 0.1;
  EXPECT_THROW(rotation_fixing_o(not_orthogonal), DomainError);
  EXPECT_THROW(boost_to_origin(Vec4(1.0, 1.0, 0, 0)), DomainError);
}

TEST(Minkowski, HyperbolicDistance) {
  const Vec3 n = Vec3(1, 2, 2) / 3.0;
  EXPECT_NEAR(hyperbolic_distance(origin(), hyperboloid_point(2.5, n)), 2.5, 1e-12);
  // Two points on the same geodesic through o, on opposite sides.
  EXPECT_NEAR(hyperbolic_distance(hyperboloid_point(0.7, n), hyperboloid_point(1.1, -n)), 1.8, 1e-12);
  // Law of cosines in H^2 for a right angle at o: cosh c = cosh a cosh b.
  const double a = 0.8, b = 1.7;
  const double c = hyperbolic_distance(hyperboloid_point(a, Vec3::UnitX()), hyperboloid_point(b, Vec3::UnitY()));
  EXPECT_NEAR(std::cosh(c), std::cosh(a) * std::cosh(b), 1e-12);
  // Tiny separations keep full relative accuracy; away from o the inputs
  // themselves carry rounding of order cosh(s) eps.
  EXPECT_NEAR(hyperbolic_distance(origin(), hyperboloid_point(1e-9, n)), 1e-9, 1e-24);
  const Vec4 p = hyperboloid_point(3.0, n);
  const Vec4 q = hyperboloid_point(3.0 + 1e-9, n);
  EXPECT_NEAR(hyperbolic_distance(p, q), 1e-9, 1e-13);
  EXPECT_THROW(hyperbolic_distance(Vec4(0, 1, 0, 0), origin()), DomainError);
}

TEST(Minkowski, CompositionAndRotation) {
  const double t = 0.4;
  Mat3 r;
  r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  const LorentzMap rot = rotation_fixing_o(r);
  const LorentzMap b = boost_to_origin(hyperboloid_point(0.9, Vec3::UnitZ()));
  const LorentzMap c = rot * b;
  const Vec4 p = hyperboloid_point(0.5, Vec3::UnitX());
  EXPECT_LT((c.apply(p) - rot.apply(b.apply(p))).max_abs(), 1e-14);
  EXPECT_TRUE(on_hyperboloid(c.apply(p)));
}
