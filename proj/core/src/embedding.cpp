#include "ahmass/embedding.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ahmass/error.hpp"
#include "ahmass/sphere_calculus.hpp"
#include "gmres.hpp"

namespace ahmass {

namespace {

constexpr std::array<double, 4> kEta{-1.0, 1.0, 1.0, 1.0};

Vec3 unit_or_throw(const Vec3& v, std::size_t k) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    std::ostringstream os;
    os << "embedding: degenerate point at node " << k << " (no angular direction)";
    throw SolverError(os.str());
  }
  return v / n;
}

// Tangential gradients of the four Minkowski components.
std::array<std::vector<Vec3>, 4> component_gradients(const SphereGrid& grid,
                                                     const std::vector<Vec4>& pts) {
  std::array<std::vector<Vec3>, 4> out;
  std::vector<double> c(grid.size());
  for (int mu = 0; mu < 4; ++mu) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = pts[k][mu];
    out[mu] = grid.gradient(c);
  }
  return out;
}

// Gauss-Legendre rule on [0, 1].
struct UnitRule {
  std::vector<double> x, w;
};

UnitRule unit_rule(int n) {
  // Reuse the grid's colatitude rule: cos(theta_i) are Gauss-Legendre nodes.
  const SphereGrid g(n, 4);
  UnitRule r;
  for (int i = 0; i < n; ++i) {
    r.x.push_back(0.5 * (1.0 - g.cos_theta(i)));
    r.w.push_back(0.5 * g.weight(g.index(i, 0)) / (2.0 * std::numbers::pi / 4.0));
  }
  return r;
}

}  // namespace

std::string to_string(Gauge g) {
  return g == Gauge::FixThreePoints ? "fix-three-points" : "center-constraint";
}

Gauge gauge_from_string(const std::string& s) {
  if (s == "fix-three-points") return Gauge::FixThreePoints;
  if (s == "center-constraint") return Gauge::CenterConstraint;
  throw ConfigError("unknown gauge '" + s + "' (expected fix-three-points or center-constraint)");
}

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("solver: tolerance must be > 0");
  if (max_iterations < 1) throw ConfigError("solver: max_iterations must be >= 1");
  if (!(damping >= 0.0)) throw ConfigError("solver: damping must be >= 0");
  if (krylov_restart < 1 || krylov_max_iterations < 1) {
    throw ConfigError("solver: Krylov limits must be >= 1");
  }
}

Sym2Field pullback_metric(const GridPtr& grid, const std::vector<Vec4>& points) {
  const auto grads = component_gradients(*grid, points);
  std::vector<Mat3> p(grid->size(), Mat3::Zero());
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (int mu = 0; mu < 4; ++mu) p[k] += kEta[mu] * grads[mu][k] * grads[mu][k].transpose();
  }
  return Sym2Field::from_ambient(grid, p);
}

double isometry_residual(const Sym2Field& pullback, const Sym2Field& gamma) {
  double out = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const Mat2 g = gamma.frame(k);
    const Eigen::LLT<Mat2> llt(g);
    if (llt.info() != Eigen::Success) {
      std::ostringstream os;
      os << "isometry_residual: target metric is not positive definite at node " << k;
      throw DomainError(os.str());
    }
    const Mat2 linv = llt.matrixL().solve(Mat2::Identity());
    const Mat2 m = linv * (pullback.frame(k) - g) * linv.transpose();
    out = std::max(out, sym2_eigenvalues(m).cwiseAbs().maxCoeff());
  }
  return out;
}

EmbeddingH3::EmbeddingH3(ScalarField sigma, UnitVectorField n,
                         std::shared_ptr<const Sym2Field> target, SolverInfo info)
    : sigma_(std::move(sigma)), n_(std::move(n)), target_(std::move(target)), info_(std::move(info)) {
  if (sigma_.grid() != n_.grid() || sigma_.grid() != target_->grid()) {
    throw DomainError("EmbeddingH3: sigma, directions and target must share a grid");
  }
  residual_ = recompute_residual();
}

EmbeddingH3 EmbeddingH3::from_points(const GridPtr& grid, const std::vector<Vec4>& points,
                                     std::shared_ptr<const Sym2Field> target, SolverInfo info) {
  std::vector<double> sigma(points.size());
  std::vector<Vec3> dirs(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double s = points[k].x.norm();
    sigma[k] = std::asinh(s);
    dirs[k] = unit_or_throw(points[k].x, k);
  }
  return EmbeddingH3(ScalarField(grid, std::move(sigma)), UnitVectorField(grid, std::move(dirs)),
                     std::move(target), std::move(info));
}

double EmbeddingH3::recompute_residual() const {
  return isometry_residual(pullback(), *target_);
}

Vec4 EmbeddingH3::point(std::size_t k) const { return hyperboloid_point(sigma_[k], n_[k]); }

std::vector<Vec4> EmbeddingH3::points() const {
  std::vector<Vec4> out(sigma_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = point(k);
  return out;
}

Sym2Field EmbeddingH3::pullback() const { return pullback_metric(grid(), points()); }

EmbeddingH3 EmbeddingH3::transformed(const LorentzMap& m) const {
  std::vector<Vec4> pts = points();
  for (auto& p : pts) p = m.apply(p);
  return from_points(grid(), pts, target_, info_);
}

EmbeddingH3 embed_round(const GridPtr& grid, double r) {
  if (!(r > 0.0)) throw DomainError("embed_round: r must be positive");
  const double s = std::sinh(r);
  auto target = std::make_shared<const Sym2Field>(Sym2Field::round(grid, 1.0 / (s * s)));
  return EmbeddingH3(ScalarField(grid, std::asinh(1.0 / s)), UnitVectorField::identity(grid),
                     std::move(target), SolverInfo{"round", 0, 0});
}

EmbeddingH3 embed_axisymmetric(const Sym2Field& gamma, double tolerance) {
  const GridPtr& gp = gamma.grid();
  const SphereGrid& grid = *gp;
  if (!is_axisymmetric(gamma, 1e-9)) {
    throw DomainError("embed_axisymmetric: metric is not axisymmetric about the x3 axis");
  }
  if (gaussian_curvature(gamma).min() <= 0.0) {
    throw DomainError("embed_axisymmetric: Gaussian curvature is not positive");
  }

  // Ring values of gamma(e_theta, e_theta) and gamma(e_phi, e_phi).
  const int nt = grid.n_theta(), np = grid.n_phi();
  std::vector<double> E(grid.size()), G(grid.size());
  std::vector<double> e_ring(nt), g_ring(nt);
  for (int i = 0; i < nt; ++i) {
    const Mat2 m = gamma.frame(grid.index(i, 0));
    e_ring[i] = m(0, 0);
    g_ring[i] = m(1, 1);
    for (int j = 0; j < np; ++j) {
      E[grid.index(i, j)] = m(0, 0);
      G[grid.index(i, j)] = m(1, 1);
    }
  }
  const HarmonicCoeffs ce = grid.analyze(E);
  const HarmonicCoeffs cg = grid.analyze(G);

  // Meridian (rho(theta), t(theta)) of a surface of revolution about the
  // geodesic (cosh t, 0, 0, sinh t): the induced metric
  // (rho'^2 + cosh^2 rho t'^2) dtheta^2 + sinh^2 rho dphi^2 matches gamma when
  // sinh rho = psi = sin(theta) sqrt(G) and
  // t' = sqrt(E (1 + psi^2) - psi'^2) / (1 + psi^2).
  auto dt_dtheta = [&](double th) {
    const double Ev = grid.evaluate_zonal(ce, th);
    const double Gv = grid.evaluate_zonal(cg, th);
    const double Gd = grid.evaluate_zonal_dtheta(cg, th);
    const double sg = std::sqrt(Gv);
    const double psi = std::sin(th) * sg;
    const double dpsi = std::cos(th) * sg + std::sin(th) * Gd / (2.0 * sg);
    const double q = 1.0 + psi * psi;
    const double disc = Ev * q - dpsi * dpsi;
    if (disc < -1e-9 * Ev * q) {
      std::ostringstream os;
      os << "embed_axisymmetric: no meridian profile exists at colatitude " << th
         << " (discriminant " << disc << ")";
      throw SolverError(os.str());
    }
    return std::sqrt(std::max(disc, 0.0)) / q;
  };

  static const UnitRule rule = unit_rule(64);
  auto integrate_on = [&](double a, double b) {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      acc += rule.w[q] * dt_dtheta(a + (b - a) * rule.x[q]);
    }
    return acc * (b - a);
  };
  std::vector<double> t_cum(nt);
  double acc = 0.0, prev = 0.0;
  for (int i = 0; i < nt; ++i) {
    acc += integrate_on(prev, grid.theta(i));
    t_cum[i] = acc;
    prev = grid.theta(i);
  }
  const double total = acc + integrate_on(prev, std::numbers::pi);

  std::vector<Vec4> pts(grid.size());
  for (int i = 0; i < nt; ++i) {
    const double psi = grid.sin_theta(i) * std::sqrt(g_ring[i]);
    const double ch = std::sqrt(1.0 + psi * psi);
    const double t = 0.5 * total - t_cum[i];
    for (int j = 0; j < np; ++j) {
      const double ph = grid.phi(j);
      pts[grid.index(i, j)] = Vec4(ch * std::cosh(t), psi * std::cos(ph), psi * std::sin(ph),
                                   ch * std::sinh(t));
    }
  }
  auto target = std::make_shared<const Sym2Field>(gamma);
  EmbeddingH3 emb = EmbeddingH3::from_points(gp, pts, target, SolverInfo{"axisymmetric", 0, 0});
  if (!(emb.residual() <= tolerance)) {
    std::ostringstream os;
    os << "embed_axisymmetric: isometry residual " << emb.residual() << " exceeds tolerance "
       << tolerance;
    throw SolverError(os.str(), emb.residual());
  }
  return emb;
}

EmbeddingH3 round_initial_guess(const Sym2Field& gamma) {
  const GridPtr& grid = gamma.grid();
  const double area = integrate(ScalarField(grid, 1.0), gamma);
  const double sigma0 = std::asinh(std::sqrt(area / (4.0 * std::numbers::pi)));
  return EmbeddingH3(ScalarField(grid, sigma0), UnitVectorField::identity(grid),
                     std::make_shared<const Sym2Field>(gamma), SolverInfo{"round-guess", 0, 0});
}

LorentzMap gauge_map(const EmbeddingH3& emb, Gauge gauge) {
  LorentzMap boost;
  const EmbeddingH3* current = &emb;
  EmbeddingH3 boosted;
  if (gauge == Gauge::CenterConstraint) {
    const SphereGrid& grid = *emb.grid();
    Vec4 mean;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double da = std::sqrt(emb.target().frame(k).determinant()) * grid.weight(k);
      mean += da * emb.point(k);
    }
    const double norm = std::sqrt(lorentz_inner(mean, mean));
    boost = boost_to_origin((1.0 / norm) * mean);
    boosted = emb.transformed(boost);
    current = &boosted;
  }
  const UnitVectorField& n = current->n_dir();
  const Mat3 q = gauge_rotation(n.interpolate(Vec3::UnitX()), n.interpolate(Vec3::UnitY()),
                                n.interpolate(Vec3::UnitZ()));
  return rotation_fixing_o(q) * boost;
}

namespace {

// Newton state for the general solver.
class NewtonProblem {
 public:
  NewtonProblem(const Sym2Field& gamma) : gamma_(gamma), grid_(*gamma.grid()) {
    const std::size_t n = grid_.size();
    double wbar = 0.0;
    for (std::size_t k = 0; k < n; ++k) wbar += grid_.weight(k);
    wbar /= static_cast<double>(n);
    sqrt_w_.resize(n);
    for (std::size_t k = 0; k < n; ++k) sqrt_w_[k] = std::sqrt(grid_.weight(k) / wbar);
    double tr = 0.0;
    for (std::size_t k = 0; k < n; ++k) tr += gamma.frame(k).trace() * grid_.weight(k);
    scale_ = 0.5 * tr / (4.0 * std::numbers::pi);
  }

  std::size_t unknowns() const { return 3 * grid_.size(); }

  // Residual vector of a point set.
  Eigen::VectorXd residual(const std::vector<Vec4>& pts) const {
    const Sym2Field p = pullback_metric(gamma_.grid(), pts);
    Eigen::VectorXd r(unknowns());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      const Mat3 d = p.ambient(k) - gamma_.ambient(k);
      pack(k, d, r);
    }
    return r;
  }

  void set_state(const std::vector<double>& sigma, const std::vector<Vec3>& n) {
    sigma_ = sigma;
    n_ = n;
    std::vector<Vec4> pts(sigma.size());
    for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = hyperboloid_point(sigma[k], n[k]);
    grads_ = component_gradients(grid_, pts);
    double s = 0.0;
    for (double v : sigma) s += v;
    mean_sigma_ = s / static_cast<double>(sigma.size());
  }

  // Linearized residual along d = [u, v_theta, v_phi] per node.
  Eigen::VectorXd apply_jacobian(const Eigen::VectorXd& d) const {
    const std::size_t n = grid_.size();
    std::array<std::vector<double>, 4> dX;
    for (auto& c : dX) c.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = d[3 * k];
      Vec3 v = d[3 * k + 1] * grid_.e_theta(k) + d[3 * k + 2] * grid_.e_phi(k);
      v -= n_[k] * n_[k].dot(v);
      const double sh = std::sinh(sigma_[k]), ch = std::cosh(sigma_[k]);
      dX[0][k] = sh * u;
      const Vec3 sp = ch * u * n_[k] + sh * v;
      for (int a = 0; a < 3; ++a) dX[a + 1][k] = sp[a];
    }
    std::vector<Mat3> dp(n, Mat3::Zero());
    for (int mu = 0; mu < 4; ++mu) {
      const auto g = grid_.gradient(dX[mu]);
      for (std::size_t k = 0; k < n; ++k) {
        const Mat3 outer = g[k] * grads_[mu][k].transpose();
        dp[k] += kEta[mu] * (outer + outer.transpose());
      }
    }
    Eigen::VectorXd out(unknowns());
    for (std::size_t k = 0; k < n; ++k) pack(k, dp[k], out);
    return out;
  }

  // Exact inverse (on degrees >= 2) of the round linearization
  // A0(u, v) = sinh(2s) u g0 + sinh^2(s) L_v g0.
  Eigen::VectorXd apply_preconditioner(const Eigen::VectorXd& y) const {
    const GridPtr& gp = gamma_.grid();
    const std::size_t n = grid_.size();
    std::vector<Mat3> t(n);
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) {
      t[k] = unpack(k, y);
      f[k] = 0.5 * t[k].trace();
      const Vec3& x = grid_.node(k);
      t[k] -= f[k] * (Mat3::Identity() - x * x.transpose());
    }
    const Sym2Field tf = Sym2Field::from_ambient(gp, t);
    const std::vector<Vec3> w = round_divergence(tf);
    std::vector<Vec3> xw(n);
    for (std::size_t k = 0; k < n; ++k) xw[k] = grid_.node(k).cross(w[k]);
    const std::vector<double> p = round_divergence(grid_, w);
    std::vector<double> q = round_divergence(grid_, xw);
    for (double& v : q) v = -v;

    HarmonicCoeffs a = grid_.analyze(p);
    HarmonicCoeffs b = grid_.analyze(q);
    for (int l = 0; l <= grid_.lmax(); ++l) {
      const double lam = -static_cast<double>(l) * (l + 1);
      const double inv = (l >= 2) ? 1.0 / (lam * (lam + 2.0)) : 0.0;
      a.cos_part.row(l) *= inv;
      a.sin_part.row(l) *= inv;
      b.cos_part.row(l) *= inv;
      b.sin_part.row(l) *= inv;
    }
    const std::vector<double> lap_a = grid_.synthesize(grid_.apply_laplacian(a));
    const double s = mean_sigma_;
    const double sh2 = std::sinh(s) * std::sinh(s);
    const double s2 = std::sinh(2.0 * s);
    a *= 1.0 / sh2;
    b *= 1.0 / sh2;
    const auto ga = grid_.synthesize_gradient(a);
    const auto gb = grid_.synthesize_gradient(b);
    Eigen::VectorXd d(unknowns());
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3 v = ga[k] + grid_.node(k).cross(gb[k]);
      d[3 * k] = (f[k] - lap_a[k]) / s2;
      d[3 * k + 1] = v.dot(grid_.e_theta(k));
      d[3 * k + 2] = v.dot(grid_.e_phi(k));
    }
    return d;
  }

  // State after a step of size alpha along d.
  void stepped(const Eigen::VectorXd& d, double alpha, std::vector<double>& sigma,
               std::vector<Vec3>& n) const {
    sigma = sigma_;
    n = n_;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      sigma[k] += alpha * d[3 * k];
      Vec3 v = alpha * (d[3 * k + 1] * grid_.e_theta(k) + d[3 * k + 2] * grid_.e_phi(k));
      v -= n[k] * n[k].dot(v);
      const double len = v.norm();
      if (len > 0.0) n[k] = (std::cos(len) * n[k] + std::sin(len) / len * v).normalized();
    }
  }

 private:
  void pack(std::size_t k, const Mat3& m, Eigen::VectorXd& out) const {
    const Vec3 &et = grid_.e_theta(k), &ep = grid_.e_phi(k);
    const double c = sqrt_w_[k] / scale_;
    out[3 * k] = c * et.dot(m * et);
    out[3 * k + 1] = c * std::numbers::sqrt2 * 0.5 * (et.dot(m * ep) + ep.dot(m * et));
    out[3 * k + 2] = c * ep.dot(m * ep);
  }

  Mat3 unpack(std::size_t k, const Eigen::VectorXd& y) const {
    const Vec3 &et = grid_.e_theta(k), &ep = grid_.e_phi(k);
    const double c = scale_ / sqrt_w_[k];
    const double off = y[3 * k + 1] / std::numbers::sqrt2;
    return c * (y[3 * k] * et * et.transpose() +
                off * (et * ep.transpose() + ep * et.transpose()) +
                y[3 * k + 2] * ep * ep.transpose());
  }

  const Sym2Field& gamma_;
  const SphereGrid& grid_;
  std::vector<double> sqrt_w_;
  double scale_ = 1.0;
  std::vector<double> sigma_;
  std::vector<Vec3> n_;
  std::array<std::vector<Vec3>, 4> grads_;
  double mean_sigma_ = 0.0;
};

}  // namespace

EmbeddingH3 embed_general(const Sym2Field& gamma, const EmbeddingH3& init,
                          const SolverOptions& opts) {
  opts.validate();
  if (init.grid() != gamma.grid()) {
    throw DomainError("embed_general: initial embedding lives on a different grid");
  }
  if (gaussian_curvature(gamma).min() <= 0.0) {
    throw DomainError("embed_general: Gaussian curvature is not positive");
  }
  const GridPtr& grid = gamma.grid();
  auto target = std::make_shared<const Sym2Field>(gamma);
  SolverInfo info{"general", 0, 0};

  EmbeddingH3 current(init.sigma(), init.n_dir(), target, info);
  current = current.transformed(gauge_map(current, opts.gauge));

  NewtonProblem problem(gamma);
  double lambda = opts.damping;
  std::vector<double> sigma_trial;
  std::vector<Vec3> n_trial;
  Eigen::VectorXd F = problem.residual(current.points());
  for (;;) {
    if (current.residual() <= opts.tolerance) break;
    if (info.iterations >= opts.max_iterations) {
      std::ostringstream os;
      os << "embed_general: no convergence after " << info.iterations
         << " iterations (residual " << current.residual() << ")";
      throw SolverError(os.str(), current.residual());
    }
    ++info.iterations;
    problem.set_state(current.sigma().values(), current.n_dir().directions());
    const double rtol = std::clamp(0.1 * current.residual(), 1e-6, 1e-2);
    const auto sol = detail::gmres(
        [&](const Eigen::VectorXd& v) { return problem.apply_jacobian(v); },
        [&](const Eigen::VectorXd& v) { return problem.apply_preconditioner(v); }, -F, rtol,
        opts.krylov_restart, opts.krylov_max_iterations);
    info.krylov_iterations += sol.iterations;
    const Eigen::VectorXd& d = sol.x;

    bool accepted = false;
    for (int attempt = 0; attempt < 12 && !accepted; ++attempt) {
      problem.stepped(d, 1.0 / (1.0 + lambda), sigma_trial, n_trial);
      EmbeddingH3 trial(ScalarField(grid, sigma_trial), UnitVectorField(grid, n_trial), target,
                        info);
      const Eigen::VectorXd F_trial = problem.residual(trial.points());
      if (F_trial.norm() < F.norm()) {
        accepted = true;
        lambda *= 0.5;
        current = trial.transformed(gauge_map(trial, opts.gauge));
        F = problem.residual(current.points());
      } else {
        lambda = std::max(10.0 * lambda, 1e-3);
      }
    }
    if (!accepted) {
      std::ostringstream os;
      os << "embed_general: line search failed at iteration " << info.iterations
         << " (residual " << current.residual() << ")";
      throw SolverError(os.str(), current.residual());
    }
  }
  return EmbeddingH3(current.sigma(), current.n_dir(), target, info);
}

Mat3 gauge_rotation(const Vec3& y1, const Vec3& y2, const Vec3& y3) {
  const Vec3 q1 = y1.normalized();
  Vec3 q2 = y2 - q1 * q1.dot(y2);
  if (q2.norm() < 1e-8) {
    throw NormalizationError("gauge: images of e1 and e2 are (anti)parallel");
  }
  q2.normalize();
  Vec3 q3 = q1.cross(q2);
  if (q3.dot(y3) < 0.0) q3 = -q3;
  Mat3 q;
  q.row(0) = q1.transpose();
  q.row(1) = q2.transpose();
  q.row(2) = q3.transpose();
  return q;
}

}  // namespace ahmass
