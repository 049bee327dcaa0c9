#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ahmass/error.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/mass_pipeline.hpp"

using namespace ahmass;

TEST(QLMass, VanishesForHyperbolicSpace) {
  const GridPtr g = make_grid(24, 48);
  const AHFamily fam(Sym2Field::zero(g));
  for (double r : {0.3, 0.1}) {
    const MassSample s = ql_mass_vector(fam, r, {});
    EXPECT_LT(s.ql_mass.max_abs(), 1e-9);
    EXPECT_EQ(s.verdict, CausalClass::Zero);
    EXPECT_EQ(s.embed_method, "axisymmetric");
  }
}

TEST(QLMass, ConformalFamilyApproachesHalfWangMass) {
  // h = g0: the limit is 4 pi o; at r = 0.1 the deviation is a few percent.
  const GridPtr g = make_grid(24, 48);
  const AHFamily fam(Sym2Field::round(g));
  const MassSample s = ql_mass_vector(fam, 0.1, {});
  EXPECT_NEAR(s.ql_mass.t, 4.0 * std::numbers::pi, 0.05 * 4.0 * std::numbers::pi);
  EXPECT_LT(s.ql_mass.x.norm(), 1e-6);
  EXPECT_EQ(s.verdict, CausalClass::FutureTimelike);
}

TEST(QLMass, VerifyGeneralAndCompareCenterings) {
  const GridPtr g = make_grid(24, 48);
  const AHFamily fam(sph_harm_tensor(g, preset_table("one-plus-half-x3")));
  PipelineOptions opts;
  opts.verify_general = true;
  opts.compare_centerings = true;
  const SphereAnalysis a = analyze_sphere(fam, 0.3, opts);
  ASSERT_TRUE(a.verification_displacement);
  EXPECT_LT(*a.verification_displacement, 1e-7);
  ASSERT_TRUE(a.centering_delta);
  EXPECT_LT(a.centering_delta->max_abs(), 0.1 * a.ql_mass.max_abs());
}

TEST(QLMass, StageErrors) {
  const GridPtr g = make_grid(12, 24);
  const AHFamily fam(Sym2Field::zero(g));
  try {
    analyze_sphere(fam, 2.5, {});
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "induced_metric");
    EXPECT_FALSE(e.solver_failure());
  }
  PipelineOptions bad;
  bad.embed_tolerance = -1.0;
  EXPECT_THROW(analyze_sphere(fam, 0.2, bad), ConfigError);
}

TEST(PowerFit, RecoversLimitAndExponent) {
  const Vec4 m0(12.0, 0.5, -0.25, 2.0), a(-3.0, 1.0, 0.0, 0.7);
  const std::vector<double> r{0.4, 0.3, 0.2, 0.15, 0.1};
  for (double p : {1.5, 3.0}) {
    std::vector<Vec4> v;
    for (double x : r) v.push_back(m0 + std::pow(x, p) * a);
    const PowerFit f = fit_power_law(r, v);
    ASSERT_EQ(f.status, FitStatus::Ok);
    EXPECT_EQ(f.component, 0);
    EXPECT_NEAR(*f.exponent, p, 1e-6);
    EXPECT_LT((*f.limit - m0).max_abs(), 1e-8);
  }
}

TEST(PowerFit, ConstantAndNoFit) {
  const std::vector<double> r{0.4, 0.3, 0.2};
  const Vec4 c(1.0, 0.0, 0.0, 0.0);
  const PowerFit k = fit_power_law(r, {c, c, c});
  EXPECT_EQ(k.status, FitStatus::Constant);
  EXPECT_FALSE(k.exponent);
  EXPECT_LT((*k.limit - c).max_abs(), 1e-15);

  const PowerFit n = fit_power_law(r, {Vec4(1, 0, 0, 0), Vec4(2, 0, 0, 0), Vec4(1.5, 0, 0, 0)});
  EXPECT_EQ(n.status, FitStatus::NoFit);
  EXPECT_FALSE(n.limit);
  EXPECT_THROW(fit_power_law({0.1, 0.2}, {c, c}), ConfigError);
  EXPECT_EQ(to_string(FitStatus::NoFit), "no-fit");
}

TEST(PowerFit, ScalarHelpers) {
  const std::vector<double> x{0.4, 0.2, 0.1, 0.05};
  std::vector<double> y;
  for (double v : x) y.push_back(2.5 * std::pow(v, 3.0));
  EXPECT_NEAR(loglog_slope(x, y), 3.0, 1e-12);
  EXPECT_NEAR(*fit_exponent(x, y), 3.0, 1e-6);
  EXPECT_FALSE(fit_exponent(x, {1.0, 2.0, 1.0, 3.0}));
}

TEST(Converge, RejectsBadRadiusLists) {
  const GridPtr g = make_grid(12, 24);
  const AHFamily fam(Sym2Field::zero(g));
  EXPECT_THROW(converge(fam, {0.3, 0.2}, {}), ConfigError);
  EXPECT_THROW(converge(fam, {0.3, 0.2, 0.3}, {}), ConfigError);
}

TEST(Converge, SortsRadiiAndReportsWangHalf) {
  const GridPtr g = make_grid(24, 48);
  const AHFamily fam(Sym2Field::round(g), "g0");
  const MassReport rep = converge(fam, {0.1, 0.3, 0.2, 0.15}, {});
  ASSERT_EQ(rep.samples.size(), 4u);
  for (std::size_t i = 1; i < rep.samples.size(); ++i) {
    EXPECT_LT(rep.samples[i].r, rep.samples[i - 1].r);
  }
  EXPECT_EQ(rep.family, "g0");
  EXPECT_NEAR(rep.wang_half.t, 4.0 * std::numbers::pi, 1e-12);
  ASSERT_EQ(rep.fit.status, FitStatus::Ok);
  EXPECT_NEAR(rep.fit.limit->t, 4.0 * std::numbers::pi, 0.02 * 4.0 * std::numbers::pi);
  EXPECT_EQ(rep.limit_verdict, CausalClass::FutureTimelike);
}

TEST(Converge, RotationEquivariance) {
  // (1 + x1/2) g0 is (1 + x3/2) g0 rotated by a quarter turn about x2: the
  // spatial part of the limit rotates with it and the time part is fixed.
  const GridPtr g = make_grid(32, 64);
  const std::vector<double> radii{0.4, 0.3, 0.2, 0.15};
  const AHFamily z(sph_harm_tensor(g, {{TensorPart::Conformal, 0, 0, 1.0}, {TensorPart::Conformal, 1, 0, 0.5}}));
  const AHFamily x(sph_harm_tensor(g, {{TensorPart::Conformal, 0, 0, 1.0}, {TensorPart::Conformal, 1, 1, 0.5}}));
  const MassReport a = converge(z, radii, {}), b = converge(x, radii, {});
  ASSERT_TRUE(a.fit.limit && b.fit.limit);
  const Vec4 la = *a.fit.limit, lb = *b.fit.limit;
  EXPECT_NEAR(lb.t, la.t, 1e-3 * la.t);
  EXPECT_NEAR(lb.x[0], la.x[2], 1e-2 * la.x[2]);
  EXPECT_NEAR(lb.x[2], la.x[0], 1e-2 * la.x[2]);
  EXPECT_LT(std::abs(lb.x[1]), 1e-2 * la.x[2]);
}

TEST(Converge, LinearAtLeadingOrder) {
  const GridPtr g = make_grid(32, 64);
  const std::vector<double> radii{0.4, 0.3, 0.2, 0.15};
  const CoeffTable t1{{TensorPart::Conformal, 0, 0, 0.3}};
  const CoeffTable t2{{TensorPart::Conformal, 1, 0, 0.2}, {TensorPart::Conformal, 2, 0, 0.1}};
  CoeffTable both = t1;
  both.insert(both.end(), t2.begin(), t2.end());
  auto limit = [&](const CoeffTable& t) {
    return *converge(AHFamily(sph_harm_tensor(g, t)), radii, {}).fit.limit;
  };
  const Vec4 sum = limit(t1) + limit(t2), joint = limit(both);
  EXPECT_LT((joint - sum).max_abs(), 0.05 * joint.max_abs());
}

TEST(Normalization, AngularMapConvergesToIdentity) {
  const GridPtr g = make_grid(32, 64);
  Sym2Field h = sph_harm_tensor(g, random_table(3, 4));
  const AHFamily fam((1.0 / sup_norm(h)) * h);
  double prev = 1e300;
  for (double r : {0.4, 0.3, 0.2, 0.15, 0.1}) {
    const double d = angular_deviation(analyze_sphere(fam, r, {}).normalized);
    EXPECT_LT(d, prev) << "r = " << r;
    prev = d;
  }
  EXPECT_LT(prev, 1e-2);
}
