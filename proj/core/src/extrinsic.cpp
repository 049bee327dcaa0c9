#include "ahmass/extrinsic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ahmass/error.hpp"
#include "ahmass/sphere_calculus.hpp"

namespace ahmass {

namespace {

using Vector4 = Eigen::Vector4d;

constexpr std::array<double, 4> kEta{-1.0, 1.0, 1.0, 1.0};

// Euclidean vector orthogonal to the three rows.
Vector4 cross4(const Vector4& a, const Vector4& b, const Vector4& c) {
  Eigen::Matrix<double, 3, 4> m;
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  m.row(2) = c.transpose();
  Vector4 out;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix3d minor;
    int col = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      minor.col(col++) = m.col(j);
    }
    out[i] = ((i % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return out;
}

Vector4 eta_times(const Vector4& v) { return {kEta[0] * v[0], v[1], v[2], v[3]}; }

}  // namespace

ShapeData shape_operator(const EmbeddingH3& emb) {
  const GridPtr& gp = emb.grid();
  const SphereGrid& grid = *gp;
  const std::size_t n = grid.size();
  const std::vector<Vec4> pts = emb.points();

  std::array<std::vector<double>, 4> comp;
  std::array<std::vector<Vec3>, 4> grad;
  std::array<std::vector<Mat3>, 4> hess;
  for (int mu = 0; mu < 4; ++mu) {
    comp[mu].resize(n);
    for (std::size_t k = 0; k < n; ++k) comp[mu][k] = pts[k][mu];
    grad[mu] = grid.gradient(comp[mu]);
    hess[mu] = round_hessian(grid, comp[mu]);
  }

  std::vector<Mat3> chi(n, Mat3::Zero()), metric(n, Mat3::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    Vector4 X, tt, tp;
    for (int mu = 0; mu < 4; ++mu) {
      X[mu] = pts[k][mu];
      tt[mu] = grad[mu][k].dot(grid.e_theta(k));
      tp[mu] = grad[mu][k].dot(grid.e_phi(k));
      metric[k] += kEta[mu] * grad[mu][k] * grad[mu][k].transpose();
    }
    Vector4 nu = cross4(eta_times(X), eta_times(tt), eta_times(tp));
    const double q = -nu[0] * nu[0] + nu.tail<3>().squaredNorm();
    if (!(q > 0.0)) {
      std::ostringstream os;
      os << "shape_operator: degenerate tangent plane at node " << k;
      throw DomainError(os.str());
    }
    nu /= std::sqrt(q);
    for (int mu = 0; mu < 4; ++mu) chi[k] -= kEta[mu] * nu[mu] * hess[mu][k];
  }

  ShapeData out{Sym2Field::from_ambient(gp, chi), Sym2Field::from_ambient(gp, metric),
                ScalarField(gp, 0.0), ScalarField(gp, 0.0), ScalarField(gp, 0.0)};
  double mean_h = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::LLT<Mat2> llt(out.metric.frame(k));
    if (llt.info() != Eigen::Success) {
      std::ostringstream os;
      os << "shape_operator: pullback metric is degenerate at node " << k;
      throw DomainError(os.str());
    }
    const Mat2 linv = llt.matrixL().solve(Mat2::Identity());
    const Vec2 lam = sym2_eigenvalues(linv * out.chi.frame(k) * linv.transpose());
    out.lambda_min[k] = lam[0];
    out.lambda_max[k] = lam[1];
    out.H0[k] = lam[0] + lam[1];
    mean_h += out.H0[k] * grid.weight(k);
  }
  // The cross product fixes the normal up to one global sign; choose the
  // one with positive mean curvature.
  if (mean_h < 0.0) {
    out.chi *= -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double lo = out.lambda_min[k];
      out.lambda_min[k] = -out.lambda_max[k];
      out.lambda_max[k] = -lo;
      out.H0[k] = -out.H0[k];
    }
  }
  return out;
}

double gauss_equation_defect(const ShapeData& shape, const ScalarField& K) {
  double out = 0.0;
  for (std::size_t k = 0; k < K.size(); ++k) {
    out = std::max(out, std::abs(K[k] + 1.0 - shape.lambda_min[k] * shape.lambda_max[k]));
  }
  return out;
}

double trace_gauss_defect(const ShapeData& shape, const ScalarField& K) {
  double out = 0.0;
  for (std::size_t k = 0; k < K.size(); ++k) {
    const double l1 = shape.lambda_min[k], l2 = shape.lambda_max[k];
    const double lhs = (l1 + l2) * (l1 + l2) - (l1 * l1 + l2 * l2);
    out = std::max(out, std::abs(lhs - (2.0 * K[k] + 2.0)));
  }
  return out;
}

double li_weinstein_bound(const CoordinateSphere& sphere) {
  const ScalarField R = scalar_curvature_R(sphere);
  for (std::size_t k = 0; k < R.size(); ++k) {
    if (!(R[k] > 0.0)) {
      std::ostringstream os;
      os << "li_weinstein_bound: scalar curvature is not positive at node " << k;
      throw DomainError(os.str());
    }
  }
  const ScalarField lap = laplace_beltrami(sphere.gamma, R);
  double out = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < R.size(); ++k) {
    out = std::max(out, 2.0 * R[k] + 4.0 - lap[k] / R[k]);
  }
  return out;
}

std::string to_string(Centering c) {
  return c == Centering::Circumscribed ? "circumscribed" : "inscribed";
}

Centering centering_from_string(const std::string& s) {
  if (s == "circumscribed") return Centering::Circumscribed;
  if (s == "inscribed") return Centering::Inscribed;
  throw ConfigError("unknown centering '" + s + "' (expected circumscribed or inscribed)");
}

Vec4 chebyshev_center(const std::vector<Vec4>& points) {
  // Work in a frame where the projected Minkowski mean sits at o.
  Vec4 mean;
  for (const auto& p : points) mean += p;
  const LorentzMap to_o = boost_to_origin((1.0 / std::sqrt(lorentz_inner(mean, mean))) * mean);
  std::vector<Vector4> X(points.size());
  double max_x0 = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    X[k] = to_o.apply(points[k]).to_eigen();
    max_x0 = std::max(max_x0, X[k][0]);
  }
  // With u future timelike and <u, X_y> <= 1 for all y, the point u / |u|
  // has max_y cosh d(u / |u|, X_y) <= 1 / |u|, so the Chebyshev center
  // maximizes log<u, u> over that polyhedron: a convex problem, solved by
  // a log-barrier Newton method.
  const Eigen::Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  auto inner = [&](const Vector4& a, const Vector4& b) { return a.dot(eta * b); };
  const double m = static_cast<double>(X.size());
  Vector4 u(0.5 / max_x0, 0.0, 0.0, 0.0);
  // Change of the barrier objective along a step, summed as log1p terms so
  // that it stays accurate when t is large.
  auto change = [&](const Vector4& v, const Vector4& d, double t, double alpha) {
    const double q = inner(v, v);
    const double dq = (2.0 * alpha * inner(v, d) + alpha * alpha * inner(d, d)) / q;
    if (!(v[0] + alpha * d[0] > 0.0) || !(dq > -1.0)) return std::numeric_limits<double>::infinity();
    double f = -t * std::log1p(dq);
    for (const auto& x : X) {
      const double rel = -alpha * inner(d, x) / (1.0 - inner(v, x));
      if (!(rel > -1.0)) return std::numeric_limits<double>::infinity();
      f -= std::log1p(rel);
    }
    return f;
  };
  for (double t = 1.0; m / t > 1e-13; t *= 10.0) {
    for (int it = 0; it < 100; ++it) {
      const double q = inner(u, u);
      const Vector4 eu = eta * u;
      Vector4 g = -2.0 * t * eu / q;
      Eigen::Matrix4d H = -t * (2.0 * eta / q - 4.0 * eu * eu.transpose() / (q * q));
      for (const auto& x : X) {
        const Vector4 ex = eta * x;
        const double s = 1.0 - ex.dot(u);
        g += ex / s;
        H += ex * ex.transpose() / (s * s);
      }
      const Vector4 step = -H.ldlt().solve(g);
      const double decrement = std::max(0.0, -g.dot(step));
      if (0.5 * decrement < 1e-13) break;
      // Backtrack from the full step; the damped step 1 / (1 + lambda) is
      // always feasible and decreasing because both terms are
      // self-concordant.
      const double damped = 1.0 / (1.0 + std::sqrt(decrement));
      double alpha = 1.0;
      while (alpha > damped && change(u, step, t, alpha) > -0.25 * alpha * decrement) alpha *= 0.5;
      u += std::max(alpha, damped) * step;
    }
  }
  const Vec4 c = Vec4::from_eigen(u / std::sqrt(inner(u, u)));
  return to_o.inverse().apply(c);
}

Vec4 inscribed_center(const std::vector<Vec4>& points, const Vec4& seed) {
  // Ascent on a soft minimum of the distances, sharpened in stages. The
  // position is parametrized by exp_c(v) about the current center c.
  Vec4 center = seed;
  for (double beta : {1e2, 1e3, 1e4, 1e5, 1e6, 1e7}) {
    for (int it = 0; it < 200; ++it) {
      const LorentzMap to_o = boost_to_origin(center);
      std::vector<double> d(points.size());
      std::vector<Vec3> xs(points.size());
      double dmin = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < points.size(); ++k) {
        const Vec4 x = to_o.apply(points[k]);
        d[k] = std::acosh(std::max(1.0, x.t));
        xs[k] = x.x;
        dmin = std::min(dmin, d[k]);
      }
      double wsum = 0.0;
      Vec3 grad = Vec3::Zero();
      for (std::size_t k = 0; k < points.size(); ++k) {
        const double w = std::exp(-beta * (d[k] - dmin));
        wsum += w;
        // d/dv of d(exp_o(v), x) at v = 0
        grad -= w * xs[k] / std::sinh(d[k]);
      }
      grad /= wsum;
      const double gnorm = grad.norm();
      if (gnorm < 1e-13) break;
      // Step length bounded by the soft-min sharpness.
      const double len = std::min(0.5 / beta, 0.1 * gnorm);
      const Vec3 v = len * grad / gnorm;
      const Vec4 moved = hyperboloid_point(v.norm(), v.normalized());
      center = to_o.inverse().apply(moved);
      if (len < 1e-14) break;
    }
  }
  return center;
}

BallSandwich ball_sandwich(const EmbeddingH3& emb, const ShapeData& shape, Centering centering,
                           double eps_cert) {
  const double lmin = shape.lambda_min.min();
  const double lmax = shape.lambda_max.max();
  if (!(lmin > 1.0)) {
    std::ostringstream os;
    os << "ball_sandwich: surface is not strictly convex (min lambda = " << lmin << ")";
    throw DomainError(os.str());
  }
  const std::vector<Vec4> pts = emb.points();
  BallSandwich out;
  out.rho_in = std::atanh(1.0 / lmax);
  out.rho_out = std::atanh(1.0 / lmin);
  out.center = chebyshev_center(pts);
  if (centering == Centering::Inscribed) out.center = inscribed_center(pts, out.center);

  out.min_distance = std::numeric_limits<double>::infinity();
  out.max_distance = 0.0;
  std::size_t k_min = 0, k_max = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double d = hyperbolic_distance(out.center, pts[k]);
    if (d < out.min_distance) {
      out.min_distance = d;
      k_min = k;
    }
    if (d > out.max_distance) {
      out.max_distance = d;
      k_max = k;
    }
  }
  if (out.inner_margin() < -eps_cert) {
    std::ostringstream os;
    os << "ball_sandwich: inscribed ball of radius " << out.rho_in
       << " is not contained in the surface (node " << k_min << " at distance "
       << out.min_distance << ")";
    throw GeometryError(os.str(), k_min);
  }
  if (out.outer_margin() < -eps_cert) {
    std::ostringstream os;
    os << "ball_sandwich: circumscribed ball of radius " << out.rho_out
       << " does not contain the surface (node " << k_max << " at distance "
       << out.max_distance << ")";
    throw GeometryError(os.str(), k_max);
  }
  return out;
}

}  // namespace ahmass
