#include <string>

#include <gtest/gtest.h>

#include "ahmass/config.hpp"
#include "ahmass/error.hpp"

using namespace ahmass;

namespace {

std::string error_of(const std::string& toml) {
  try {
    parse_config(toml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, DefaultsAndFullDocument) {
  const RunConfig d = parse_config("");
  EXPECT_EQ(d.n_theta, 48);
  EXPECT_EQ(d.n_phi, 96);
  EXPECT_EQ(d.e_model, EModel::Zero);
  EXPECT_TRUE(d.h.empty());

  const RunConfig c = parse_config(R"(
version = 1
description = "test"
[family]
e_model = "quartic"
[family.h]
terms = [{part = "electric", l = 2, m = -1, value = 0.5}, {l = 0, m = 0, value = 1.0}]
[family.e]
preset = "g0"
scale = 0.25
[grid]
n_theta = 16
n_phi = 32
[solver]
tolerance = 1e-11
gauge = "center-constraint"
centering = "inscribed"
verify_general = true
[sweep]
r_list = [0.3, 0.2, 0.1]
seed = 42
)");
  EXPECT_EQ(c.description, "test");
  ASSERT_EQ(c.h.terms.size(), 2u);
  EXPECT_EQ(c.h.terms[0].part, TensorPart::Electric);
  EXPECT_EQ(c.h.terms[1].part, TensorPart::Conformal);
  EXPECT_EQ(c.e.preset, "g0");
  EXPECT_EQ(c.n_theta, 16);
  EXPECT_EQ(c.pipeline.solver.tolerance, 1e-11);
  EXPECT_EQ(c.pipeline.solver.gauge, Gauge::CenterConstraint);
  EXPECT_EQ(c.pipeline.centering, Centering::Inscribed);
  EXPECT_TRUE(c.pipeline.verify_general);
  EXPECT_EQ(c.r_list, (std::vector<double>{0.3, 0.2, 0.1}));
  EXPECT_EQ(c.seed, 42u);

  const AHFamily fam = build_family(c);
  EXPECT_EQ(fam.grid()->size(), 16u * 32u);
  EXPECT_EQ(fam.e_model(), EModel::Quartic);
  EXPECT_NEAR(sup_norm(fam.e_tensor()), 0.25, 1e-14);
}

TEST(Config, Errors) {
  EXPECT_NE(error_of("[grid]\nn_thta = 8").find("grid.n_thta"), std::string::npos);
  EXPECT_NE(error_of("[solvr]").find("solvr"), std::string::npos);
  EXPECT_NE(error_of("version = 2").find("version"), std::string::npos);
  EXPECT_NE(error_of("[grid]\nn_theta = \"big\"").find("grid.n_theta"), std::string::npos);
  EXPECT_FALSE(error_of("[grid]\nn_phi = 33").empty());
  EXPECT_FALSE(error_of("[grid]\nn_theta = 4").empty());
  EXPECT_FALSE(error_of("[family]\ne_model = \"quartic\"").empty());
  EXPECT_FALSE(error_of("[family.e]\npreset = \"g0\"").empty());
  EXPECT_FALSE(error_of("[family.h]\npreset = \"nope\"\n[sweep]\nr = 0.1").empty() &&
               error_of("[family]\ne_model = \"cubic\"").empty());
  EXPECT_FALSE(error_of("not toml [").empty());
  EXPECT_FALSE(error_of("[solver]\ntolerance = -1.0").empty());
  EXPECT_THROW(load_config("/nonexistent/file.toml"), ConfigError);
}

TEST(Config, UnknownPresetFailsWhenBuilt) {
  const RunConfig c = parse_config("[family.h]\npreset = \"nope\"");
  EXPECT_THROW(build_family(c), ConfigError);
}

TEST(Config, CommandLineHelpers) {
  EXPECT_EQ(parse_grid_spec("24x48"), std::make_pair(24, 48));
  EXPECT_THROW(parse_grid_spec("24*48"), ConfigError);
  EXPECT_THROW(parse_grid_spec("x48"), ConfigError);
  EXPECT_EQ(parse_r_list("0.4, 0.2,0.1"), (std::vector<double>{0.4, 0.2, 0.1}));
  EXPECT_THROW(parse_r_list("0.4,,0.1"), ConfigError);
  EXPECT_THROW(parse_r_list("0.4,abc"), ConfigError);
}

TEST(Config, SupNormRescaling) {
  const GridPtr g = make_grid(16, 32);
  TensorSpec s;
  s.random_lmax = 3;
  s.sup_norm = 1.0;
  s.scale = 0.5;
  EXPECT_NEAR(sup_norm(build_tensor(g, s, 5)), 0.5, 1e-14);
  // Seeded tables are reproducible and the seed matters.
  const Sym2Field a = build_tensor(g, s, 5), b = build_tensor(g, s, 5), c = build_tensor(g, s, 6);
  EXPECT_EQ(a.ambient(17), b.ambient(17));
  EXPECT_NE(a.ambient(17), c.ambient(17));
}

TEST(Config, HashIsStableAndSensitive) {
  const RunConfig a = parse_config("[sweep]\nr = 0.2");
  const RunConfig b = parse_config("[sweep]\nr = 0.2\n");
  const RunConfig c = parse_config("[sweep]\nr = 0.3");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_EQ(to_json(a)["sweep"]["r"], 0.2);
}
