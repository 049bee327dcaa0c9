#include "ahmass/checks.hpp"

#include <cmath>
#include <numbers>

#include "ahmass/error.hpp"
#include "ahmass/sphere_calculus.hpp"

namespace ahmass {

bool CheckSuite::passed() const {
  for (const auto& run : runs) {
    if (!run.error.empty()) return false;
    for (const auto& c : run.checks) {
      if (!c.passed) return false;
    }
  }
  return !runs.empty();
}

namespace {

CheckResult check(std::string name, double value, double limit, std::string note = {}) {
  return {std::move(name), value, limit, value <= limit, std::move(note)};
}

CheckRun run_one(const AHFamily& family, double r, const PipelineOptions& opts,
                 std::uint64_t seed, std::size_t n_pairs) {
  CheckRun run;
  run.r = r;
  const SphereAnalysis a = analyze_sphere(family, r, opts);
  const NormalizedEmbedding& norm = a.normalized;
  const SphereGrid& grid = *norm.emb.grid();
  auto& out = run.checks;

  out.push_back(check("embedding_residual", norm.emb.residual(), opts.embed_tolerance));

  const ScalarField K = gaussian_curvature(a.sphere.gamma);
  out.push_back(check("gauss_bonnet", std::abs(integrate(K, a.sphere.gamma) - 4.0 * std::numbers::pi),
                      1e-8));
  out.push_back(check("gauss_equation", gauss_equation_defect(a.shape, K), 1e-7));
  out.push_back(check("trace_gauss_equation", trace_gauss_defect(a.shape, K), 1e-7));

  double h0sq = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) h0sq = std::max(h0sq, a.shape.H0[k] * a.shape.H0[k]);
  out.push_back(check("li_weinstein", h0sq - li_weinstein_bound(a.sphere), 1e-6,
                      "max H0^2 minus the bound"));

  const BallSandwich& bs = norm.sandwich;
  out.push_back(check("sandwich_inner", -bs.inner_margin(), 1e-7, "rho_in minus the smallest distance"));
  out.push_back(check("sandwich_outer", -bs.outer_margin(), 1e-7, "largest distance minus rho_out"));

  const std::vector<Vec4> pts = norm.emb.points();
  const Vec4 c = opts.centering == Centering::Circumscribed
                     ? chebyshev_center(pts)
                     : inscribed_center(pts, chebyshev_center(pts));
  out.push_back(check("center_at_origin", hyperbolic_distance(c, origin()), 1e-8));

  const UnitVectorField& y = norm.angular_map;
  const Vec3 y1 = y.interpolate(Vec3::UnitX());
  const Vec3 y2 = y.interpolate(Vec3::UnitY());
  const Vec3 y3 = y.interpolate(Vec3::UnitZ());
  out.push_back(check("gauge_e1", (y1 - Vec3::UnitX()).norm(), 1e-8));
  out.push_back(check("gauge_e2_plane", std::abs(y2[2]), 1e-8));
  out.push_back(check("gauge_e2_sign", -y2[1], 0.0, "minus the x2 component of y(e2)"));
  out.push_back(check("gauge_e3_sign", -y3[2], 0.0, "minus the x3 component of y(e3)"));

  // Re-embedding the input and applying the recorded map must give the output.
  const EmbeddingH3 input = norm.emb.transformed(norm.applied.inverse());
  double defect = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    defect = std::max(defect, (norm.applied.apply(input.point(k)) - norm.emb.point(k)).max_abs());
  }
  out.push_back(check("applied_map", defect, 1e-10));

  const NormalizedEmbedding again = normalize(norm.emb, a.shape, opts.centering);
  const Eigen::Matrix4d diff = again.applied.matrix() - Eigen::Matrix4d::Identity();
  out.push_back(check("normalize_idempotent", diff.cwiseAbs().maxCoeff(), 1e-8));

  const auto pairs = random_node_pairs(grid.size(), n_pairs, seed);
  out.push_back(check("distortion", distortion_check(norm, pairs), 2.0 * r,
                      "angular distortion over seeded node pairs"));
  return run;
}

}  // namespace

CheckSuite run_invariant_suite(const AHFamily& family, const std::vector<double>& radii,
                               const PipelineOptions& opts, std::uint64_t seed,
                               std::size_t n_pairs) {
  CheckSuite suite;
  suite.family = family.description();
  suite.seed = seed;
  for (double r : radii) {
    try {
      suite.runs.push_back(run_one(family, r, opts, seed, n_pairs));
    } catch (const Error& e) {
      CheckRun failed;
      failed.r = r;
      failed.error = e.what();
      suite.runs.push_back(std::move(failed));
    }
  }
  return suite;
}

nlohmann::json to_json(const CheckSuite& suite) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : suite.runs) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : run.checks) {
      nlohmann::json j{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"passed", c.passed}};
      if (!c.note.empty()) j["note"] = c.note;
      checks.push_back(std::move(j));
    }
    nlohmann::json j{{"r", run.r}, {"checks", std::move(checks)}};
    if (!run.error.empty()) j["error"] = run.error;
    runs.push_back(std::move(j));
  }
  return {{"family", suite.family}, {"seed", suite.seed}, {"runs", std::move(runs)},
          {"passed", suite.passed()}};
}

}  // namespace ahmass
