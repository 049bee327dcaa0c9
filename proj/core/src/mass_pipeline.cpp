#include "ahmass/mass_pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "ahmass/error.hpp"

namespace ahmass {

void PipelineOptions::validate() const {
  solver.validate();
  if (!(embed_tolerance > 0.0)) throw ConfigError("embed tolerance must be positive");
}

namespace {

template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const SolverError& e) {
    throw StageError(stage, e.what(), true);
  } catch (const GeometryError& e) {
    throw StageError(stage, e.what(), true);
  } catch (const NormalizationError& e) {
    throw StageError(stage, e.what(), true);
  } catch (const Error& e) {
    throw StageError(stage, e.what(), false);
  }
}

Centering other(Centering c) {
  return c == Centering::Circumscribed ? Centering::Inscribed : Centering::Circumscribed;
}

}  // namespace

Vec4 ql_integral(const ScalarField& f, const EmbeddingH3& emb, const Sym2Field& gamma) {
  const SphereGrid& grid = *emb.grid();
  Vec4 out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double dmu = std::sqrt(gamma.frame(k).determinant()) * grid.weight(k);
    out += (f[k] * dmu) * emb.point(k);
  }
  return out;
}

SphereAnalysis analyze_sphere(const AHFamily& family, double r, const PipelineOptions& opts) {
  opts.validate();
  CoordinateSphere sphere = run_stage("induced_metric", [&] { return induced_metric(family, r); });
  ScalarField H = run_stage("mean_curvature", [&] { return mean_curvature_H(family, r); });

  std::optional<double> displacement;
  EmbeddingH3 emb = run_stage("embed", [&] {
    if (family.is_axisymmetric()) {
      EmbeddingH3 axi = embed_axisymmetric(sphere.gamma, opts.embed_tolerance);
      if (opts.verify_general) {
        const EmbeddingH3 gen =
            embed_general(sphere.gamma, round_initial_guess(sphere.gamma), opts.solver);
        const NormalizedEmbedding a = normalize(axi), b = normalize(gen);
        double d = 0.0;
        for (std::size_t k = 0; k < axi.grid()->size(); ++k) {
          d = std::max(d, hyperbolic_distance(a.emb.point(k), b.emb.point(k)));
        }
        displacement = d;
      }
      return axi;
    }
    return embed_general(sphere.gamma, round_initial_guess(sphere.gamma), opts.solver);
  });
  if (!(emb.residual() <= opts.embed_tolerance)) {
    std::ostringstream os;
    os << "embedding residual " << emb.residual() << " exceeds tolerance "
       << opts.embed_tolerance;
    throw StageError("embed", os.str(), true);
  }

  ShapeData shape = run_stage("shape", [&] { return shape_operator(emb); });
  NormalizedEmbedding norm =
      run_stage("normalize", [&] { return normalize(emb, shape, opts.centering); });

  ScalarField diff = shape.H0;
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= H[k];
  const Vec4 ql = ql_integral(diff, norm.emb, sphere.gamma);

  std::optional<Vec4> delta;
  if (opts.compare_centerings) {
    const NormalizedEmbedding alt =
        run_stage("normalize", [&] { return normalize(emb, shape, other(opts.centering)); });
    delta = ql_integral(diff, alt.emb, sphere.gamma) - ql;
  }
  return {std::move(sphere), std::move(H),  std::move(shape), std::move(norm),
          ql,                displacement, delta};
}

MassSample ql_mass_vector(const AHFamily& family, double r, const PipelineOptions& opts) {
  SphereAnalysis a = analyze_sphere(family, r, opts);
  MassSample s;
  s.r = r;
  s.ql_mass = a.ql_mass;
  s.h0_minus_h = a.shape.H0;
  for (std::size_t k = 0; k < a.H.size(); ++k) s.h0_minus_h[k] -= a.H[k];
  s.embedding_residual = a.normalized.emb.residual();
  s.embed_method = a.normalized.emb.info().method;
  s.solver_iterations = a.normalized.emb.info().iterations;
  s.rho_in = a.normalized.sandwich.rho_in;
  s.rho_out = a.normalized.sandwich.rho_out;
  s.verdict = causal_class(s.ql_mass);
  s.verification_displacement = a.verification_displacement;
  s.centering_delta = a.centering_delta;
  return s;
}

std::string to_string(FitStatus s) {
  switch (s) {
    case FitStatus::Ok: return "ok";
    case FitStatus::Constant: return "constant";
    case FitStatus::NoFit: return "no-fit";
  }
  return "?";
}

namespace {

struct LinearFit {
  double c = 0.0, a = 0.0, ssr = 0.0;
};

// y = c + a x^p by least squares for fixed p.
LinearFit fit_fixed_p(const std::vector<double>& x, const std::vector<double>& y, double p) {
  const double n = static_cast<double>(x.size());
  double su = 0.0, suu = 0.0, sy = 0.0, suy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::pow(x[i], p);
    su += u;
    suu += u * u;
    sy += y[i];
    suy += u * y[i];
  }
  LinearFit f;
  const double det = n * suu - su * su;
  f.a = (n * suy - su * sy) / det;
  f.c = (sy - f.a * su) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.c - f.a * std::pow(x[i], p);
    f.ssr += e * e;
  }
  return f;
}

bool monotone(const std::vector<double>& y) {
  int sign = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double d = y[i] - y[i - 1];
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0) return false;
    if (sign != 0 && s != sign) return false;
    sign = s;
  }
  return true;
}

// Exponent in [0.25, 8] minimizing the residual: log-spaced scan, then
// golden section around the best scan point.
double best_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  constexpr double lo = 0.25, hi = 8.0;
  constexpr int n = 160;
  auto p_at = [&](int i) { return lo * std::pow(hi / lo, static_cast<double>(i) / n); };
  int best = 0;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double s = fit_fixed_p(x, y, p_at(i)).ssr;
    if (s < best_ssr) {
      best_ssr = s;
      best = i;
    }
  }
  double a = std::log(p_at(std::max(best - 1, 0))), b = std::log(p_at(std::min(best + 1, n)));
  auto cost = [&](double lp) { return fit_fixed_p(x, y, std::exp(lp)).ssr; };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = cost(c), fd = cost(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = cost(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace

std::optional<double> fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw ConfigError("fit_exponent needs 3 or more points");
  if (!monotone(y)) return std::nullopt;
  return best_exponent(x, y);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope needs 2 or more points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PowerFit fit_power_law(const std::vector<double>& r, const std::vector<Vec4>& values) {
  if (r.size() != values.size() || r.size() < 3) {
    throw ConfigError("a power-law fit needs 3 or more samples");
  }
  PowerFit out;
  std::array<std::vector<double>, 4> comp;
  double spread = -1.0, scale = 0.0;
  for (int c = 0; c < 4; ++c) {
    for (const auto& v : values) {
      comp[c].push_back(v[c]);
      scale = std::max(scale, std::abs(v[c]));
    }
    const auto [mn, mx] = std::minmax_element(comp[c].begin(), comp[c].end());
    if (*mx - *mn > spread) {
      spread = *mx - *mn;
      out.component = c;
    }
  }
  if (spread <= 1e-9 * std::max(1.0, scale)) {
    Vec4 mean;
    for (const auto& v : values) mean += v;
    out.status = FitStatus::Constant;
    out.limit = (1.0 / static_cast<double>(values.size())) * mean;
    return out;
  }
  if (!monotone(comp[out.component])) return out;
  const double p = best_exponent(r, comp[out.component]);
  Vec4 limit;
  for (int c = 0; c < 4; ++c) limit[c] = fit_fixed_p(r, comp[c], p).c;
  out.status = FitStatus::Ok;
  out.limit = limit;
  out.exponent = p;
  return out;
}

MassReport converge(const AHFamily& family, std::vector<double> r_list,
                    const PipelineOptions& opts) {
  opts.validate();
  if (r_list.size() < 3) throw ConfigError("converge needs at least 3 radii");
  std::sort(r_list.begin(), r_list.end(), std::greater<>());
  if (std::adjacent_find(r_list.begin(), r_list.end()) != r_list.end()) {
    throw ConfigError("converge: radii must be distinct");
  }
  std::vector<std::future<MassSample>> jobs;
  for (double r : r_list) {
    jobs.push_back(std::async(std::launch::async,
                              [&family, &opts, r] { return ql_mass_vector(family, r, opts); }));
  }
  MassReport report;
  report.family = family.description();
  // get() in order so the first failing radius is the one reported.
  std::exception_ptr first;
  for (auto& j : jobs) {
    try {
      report.samples.push_back(j.get());
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);

  std::vector<Vec4> values;
  for (const auto& s : report.samples) values.push_back(s.ql_mass);
  report.fit = fit_power_law(r_list, values);
  report.wang_half = 0.5 * wang_mass_vector(family);
  if (report.fit.limit) report.limit_verdict = causal_class(*report.fit.limit);
  return report;
}

}  // namespace ahmass
