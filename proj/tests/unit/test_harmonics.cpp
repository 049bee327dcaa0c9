#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ahmass/error.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/sphere_calculus.hpp"

using namespace ahmass;

TEST(SchmidtHarmonics, LowDegreeClosedForms) {
  const GridPtr g = make_grid(12, 24);
  const ScalarField s00 = schmidt_harmonic(g, 0, 0), s10 = schmidt_harmonic(g, 1, 0),
                    s11 = schmidt_harmonic(g, 1, 1), s1m = schmidt_harmonic(g, 1, -1),
                    s20 = schmidt_harmonic(g, 2, 0), s22 = schmidt_harmonic(g, 2, 2),
                    s2m1 = schmidt_harmonic(g, 2, -1);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    EXPECT_NEAR(s00[k], 1.0, 1e-14);
    EXPECT_NEAR(s10[k], x[2], 1e-14);
    EXPECT_NEAR(s11[k], x[0], 1e-14);
    EXPECT_NEAR(s1m[k], x[1], 1e-14);
    EXPECT_NEAR(s20[k], 1.5 * x[2] * x[2] - 0.5, 1e-14);
    EXPECT_NEAR(s22[k], std::sqrt(3.0) / 2.0 * (x[0] * x[0] - x[1] * x[1]), 1e-14);
    EXPECT_NEAR(s2m1[k], std::sqrt(3.0) * x[1] * x[2], 1e-14);
  }
}

TEST(HarmonicTensor, PresetsMatchClosedForms) {
  const GridPtr g = make_grid(16, 32);
  const Sym2Field g0 = sph_harm_tensor(g, preset_table("g0"));
  const Sym2Field x3 = sph_harm_tensor(g, preset_table("x3"));
  const Sym2Field c2 = sph_harm_tensor(g, preset_table("conformal-l2"));
  EXPECT_TRUE(preset_table("zero").empty());
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double z = g->node(k)[2];
    EXPECT_LT((g0.frame(k) - Mat2::Identity()).norm(), 1e-14);
    EXPECT_LT((x3.frame(k) - z * Mat2::Identity()).norm(), 1e-14);
    const double f = 1.0 + 0.25 * z + 0.5 * (1.5 * z * z - 0.5);
    EXPECT_LT((c2.frame(k) - f * Mat2::Identity()).norm(), 1e-14);
  }
  EXPECT_THROW(preset_table("nope"), ConfigError);
}

TEST(HarmonicTensor, ElectricPartIsTraceFreeHessian) {
  // a = x1 x2: Hess a - (1/2) Lap a g0, with Hess from the ambient formula
  // Hess a = P D^2 a P - (x . grad a) P for the degree-2 extension.
  const GridPtr g = make_grid(16, 32);
  const Sym2Field e = sph_harm_tensor(g, {{TensorPart::Electric, 2, -2, 1.0}});
  // S_{2,-2} = sqrt(3) x1 x2
  const double c = std::sqrt(3.0);
  Mat3 d2;
  d2 << 0, c, 0, c, 0, 0, 0, 0, 0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec3& x = g->node(k);
    const Mat3 P = Mat3::Identity() - x * x.transpose();
    const double a = c * x[0] * x[1];
    const Mat3 hess = P * d2 * P - 2.0 * a * P;  // radial derivative of a degree-2 polynomial is 2a
    const Mat3 expected = hess - 0.5 * hess.trace() * P;
    EXPECT_LT((e.ambient(k) - expected).norm(), 1e-12);
  }
}

TEST(HarmonicTensor, MagneticPartDivergence) {
  // V = x cross grad b with Lap b = -l(l+1) b is divergence free and
  // Lap V = (1 - l(l+1)) V, so div((1/2) L_V g0) = (1/2)(2 - l(l+1)) V.
  // S^2 has no trace-free divergence-free tensors; only l = 1 (Killing) vanishes.
  const GridPtr g = make_grid(16, 32);
  for (int l : {1, 2, 3}) {
    const Sym2Field m = sph_harm_tensor(g, {{TensorPart::Magnetic, l, 1, 1.0}});
    const ScalarField b = schmidt_harmonic(g, l, 1);
    const std::vector<Vec3> grad = g->gradient(b.values());
    const auto div = round_divergence(m);
    const double c = 0.5 * (2.0 - l * (l + 1));
    for (std::size_t k = 0; k < g->size(); ++k) {
      EXPECT_NEAR(m.ambient(k).trace(), 0.0, 1e-13);
      const Vec3 v = g->node(k).cross(grad[k]);
      EXPECT_LT((div[k] - c * v).norm(), 1e-10) << "l = " << l;
    }
  }
}

TEST(HarmonicTensor, RejectsOutOfBandTerms) {
  const GridPtr g = make_grid(8, 16);
  EXPECT_THROW(sph_harm_tensor(g, {{TensorPart::Conformal, 7, 0, 1.0}}), ConfigError);
  EXPECT_THROW(sph_harm_tensor(g, {{TensorPart::Conformal, 2, 3, 1.0}}), ConfigError);
  EXPECT_NO_THROW(sph_harm_tensor(g, {{TensorPart::Conformal, 6, 0, 1.0}}));
}

TEST(RandomTable, DeterministicAndComplete) {
  const CoeffTable a = random_table(3, 42), b = random_table(3, 42), c = random_table(3, 43);
  ASSERT_EQ(a.size(), b.size());
  // conformal l = 0..3 (16 terms) plus electric and magnetic l = 2..3 (12 each)
  EXPECT_EQ(a.size(), 40u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_GE(a[i].value, -1.0);
    EXPECT_LE(a[i].value, 1.0);
    differs = differs || a[i].value != c[i].value;
  }
  EXPECT_TRUE(differs);
}

TEST(SupNorm, OfConformalTensor) {
  const GridPtr g = make_grid(16, 32);
  EXPECT_NEAR(sup_norm(Sym2Field::round(g, -2.5)), 2.5, 1e-14);
}

TEST(TensorPart, StringRoundTrip) {
  for (auto p : {TensorPart::Conformal, TensorPart::Electric, TensorPart::Magnetic}) {
    EXPECT_EQ(tensor_part_from_string(to_string(p)), p);
  }
  EXPECT_THROW(tensor_part_from_string("scalar"), ConfigError);
}
