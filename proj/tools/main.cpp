// ahmass command line tool.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input or config,
// 3 solver or certificate failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ahmass/checks.hpp"
#include "ahmass/config.hpp"
#include "ahmass/error.hpp"
#include "ahmass/report.hpp"
#include "ahmass/sphere_calculus.hpp"

using namespace ahmass;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::string config;
  std::string grid;
  std::optional<double> r;
  std::string r_list;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::string centering;
  bool verify_general = false;
  bool compare_centerings = false;
  bool fields = false;
};

RunConfig resolve(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (!o.grid.empty()) std::tie(cfg.n_theta, cfg.n_phi) = parse_grid_spec(o.grid);
  if (o.r) cfg.r = *o.r;
  if (!o.r_list.empty()) cfg.r_list = parse_r_list(o.r_list);
  if (o.tol) {
    cfg.pipeline.solver.tolerance = *o.tol;
    cfg.pipeline.embed_tolerance = *o.tol;
  }
  if (o.seed) cfg.seed = *o.seed;
  if (!o.centering.empty()) cfg.pipeline.centering = centering_from_string(o.centering);
  if (o.verify_general) cfg.pipeline.verify_general = true;
  if (o.compare_centerings) cfg.pipeline.compare_centerings = true;
  cfg.validate();
  return cfg;
}

double single_radius(const RunConfig& cfg) {
  if (cfg.r) return *cfg.r;
  if (cfg.r_list.size() == 1) return cfg.r_list.front();
  throw ConfigError("this command needs a radius: pass --r or set sweep.r");
}

std::vector<double> radius_list(const RunConfig& cfg) {
  if (!cfg.r_list.empty()) return cfg.r_list;
  if (cfg.r) return {*cfg.r};
  throw ConfigError("this command needs radii: pass --r-list or set sweep.r_list");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_atomic(o.out, text);
  }
}

nlohmann::json header(const char* command, const RunConfig& cfg) {
  return report_header(command, to_json(cfg), config_hash(cfg));
}

std::string nodal_csv(const SphereGrid& grid, const std::vector<std::string>& names,
                      const std::vector<const ScalarField*>& cols) {
  std::ostringstream os;
  os << "node,x,y,z";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  char buf[64];
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    os << k;
    for (double v : {x[0], x[1], x[2]}) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      os << buf;
    }
    for (const ScalarField* c : cols) {
      std::snprintf(buf, sizeof buf, ",%.17g", (*c)[k]);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

int cmd_curvature(const Options& o) {
  const RunConfig cfg = resolve(o);
  const AHFamily family = build_family(cfg);
  const double r = single_radius(cfg);
  const CoordinateSphere s = induced_metric(family, r);
  const ScalarField K = gaussian_curvature(s.gamma);
  const ScalarField R = scalar_curvature_R(s);
  const ScalarField H = mean_curvature_H(family, r);
  if (o.format == "csv") {
    emit(o, nodal_csv(*family.grid(), {"K", "R", "H"}, {&K, &R, &H}));
    return 0;
  }
  double dr = 0.0, dh = 0.0;
  for (std::size_t k = 0; k < R.size(); ++k) {
    dr = std::max(dr, std::abs(R[k] - 2.0 * std::sinh(r) * std::sinh(r)));
    dh = std::max(dh, std::abs(H[k] - 2.0 * std::cosh(r)));
  }
  nlohmann::json j = header("curvature", cfg);
  j["result"] = {{"r", r},
                 {"max_abs_R_minus_round", dr},
                 {"max_abs_H_minus_round", dh},
                 {"K", K.values()},
                 {"R", R.values()},
                 {"H", H.values()}};
  emit(o, j.dump(2));
  return 0;
}

int cmd_embed(const Options& o) {
  const RunConfig cfg = resolve(o);
  const AHFamily family = build_family(cfg);
  const double r = single_radius(cfg);
  const SphereAnalysis a = analyze_sphere(family, r, cfg.pipeline);
  if (o.format == "csv") {
    const std::vector<Vec4> pts = a.normalized.emb.points();
    ScalarField t(family.grid(), 0.0), x1 = t, x2 = t, x3 = t;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      t[k] = pts[k].t;
      x1[k] = pts[k].x[0];
      x2[k] = pts[k].x[1];
      x3[k] = pts[k].x[2];
    }
    emit(o, nodal_csv(*family.grid(), {"t", "x1", "x2", "x3", "H0"}, {&t, &x1, &x2, &x3, &a.shape.H0}));
    return 0;
  }
  nlohmann::json j = header("embed", cfg);
  j["result"] = to_json(a.normalized);
  j["result"]["r"] = r;
  j["result"]["H0"] = a.shape.H0.values();
  if (a.verification_displacement) {
    j["result"]["verification_displacement"] = *a.verification_displacement;
  }
  emit(o, j.dump(2));
  return 0;
}

int cmd_mass(const Options& o) {
  const RunConfig cfg = resolve(o);
  const AHFamily family = build_family(cfg);
  const MassSample s = ql_mass_vector(family, single_radius(cfg), cfg.pipeline);
  if (o.format == "csv") {
    emit(o, to_csv(s));
    return 0;
  }
  nlohmann::json j = header("mass", cfg);
  j["result"] = to_json(s, o.fields);
  emit(o, j.dump(2));
  return 0;
}

int cmd_converge(const Options& o) {
  const RunConfig cfg = resolve(o);
  const AHFamily family = build_family(cfg);
  const MassReport rep = converge(family, radius_list(cfg), cfg.pipeline);
  if (o.format == "csv") {
    emit(o, to_csv(rep));
    return 0;
  }
  nlohmann::json j = header("converge", cfg);
  j["result"] = to_json(rep, o.fields);
  emit(o, j.dump(2));
  return 0;
}

int cmd_check(const Options& o) {
  const RunConfig cfg = resolve(o);
  const AHFamily family = build_family(cfg);
  std::vector<double> radii;
  if (!cfg.r_list.empty()) {
    radii = cfg.r_list;
  } else if (cfg.r) {
    radii = {*cfg.r};
  } else {
    radii = {0.3, 0.2};
  }
  const CheckSuite suite = run_invariant_suite(family, radii, cfg.pipeline, cfg.seed);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "r,check,value,limit,passed\n";
    for (const auto& run : suite.runs) {
      if (!run.error.empty()) os << run.r << ",pipeline,nan,nan,false\n";
      for (const auto& c : run.checks) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%s\n", run.r, c.name.c_str(),
                      c.value, c.limit, c.passed ? "true" : "false");
        os << buf;
      }
    }
    emit(o, os.str());
  } else {
    nlohmann::json j = header("check", cfg);
    j["result"] = to_json(suite);
    emit(o, j.dump(2));
  }
  for (const auto& run : suite.runs) {
    if (!run.error.empty()) std::cerr << "r = " << run.r << ": " << run.error << '\n';
    for (const auto& c : run.checks) {
      if (!c.passed) {
        std::cerr << "r = " << run.r << ": check " << c.name << " failed (" << c.value << " > "
                  << c.limit << ")\n";
      }
    }
  }
  return suite.passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasilocal mass of coordinate spheres in asymptotically hyperbolic manifolds"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "TOML config file")->check(CLI::ExistingFile);
    sub->add_option("--grid", o.grid, "grid size NTHETAxNPHI (overrides [grid])");
    sub->add_option("--r", o.r, "radius of the coordinate sphere");
    sub->add_option("--r-list", o.r_list, "comma separated radii");
    sub->add_option("--tol", o.tol, "solver and embedding residual tolerance");
    sub->add_option("--out", o.out, "output file (written atomically); stdout when omitted");
    sub->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "seed for random tables and randomized checks");
    sub->add_option("--centering", o.centering, "circumscribed or inscribed")
        ->check(CLI::IsMember({"circumscribed", "inscribed"}));
    sub->add_flag("--verify-general", o.verify_general,
                  "also run the general solver on axisymmetric families");
    sub->add_flag("--compare-centerings", o.compare_centerings,
                  "also evaluate the mass with the other centering");
    sub->add_flag("--fields", o.fields, "include nodal H0 - H in JSON reports");
  };

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Cmd cmds[] = {
      {"curvature", "R, K and H on a coordinate sphere", cmd_curvature},
      {"embed", "isometric embedding of a coordinate sphere into H^3", cmd_embed},
      {"mass", "quasilocal mass vector at one radius", cmd_mass},
      {"converge", "mass vectors over radii and the fitted r -> 0 limit", cmd_converge},
      {"check", "invariant suite on a family", cmd_check},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    return selected(o);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.solver_failure() ? kExitSolver : kExitInvalid;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const GeometryError& e) {
    std::cerr << "certificate failed: " << e.what() << '\n';
    return kExitSolver;
  } catch (const NormalizationError& e) {
    std::cerr << "normalization failed: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
