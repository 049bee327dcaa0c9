#include "ahmass/sphere_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ahmass/error.hpp"
#include "jets.hpp"

namespace ahmass {

namespace {

using detail::Jet1;
using detail::Jet2;

// Half-width of the equatorial band on which the two charts are blended.
constexpr double kBlendBand = 0.3;

// Weight of the North chart (projection from the north pole) at height x3.
double north_weight(double x3) {
  const double t = std::clamp(x3 / kBlendBand, -1.0, 1.0);
  return 0.5 * (1.0 - std::sin(0.5 * std::numbers::pi * t));
}

void require_positive(const Sym2Field& metric, const char* op) {
  for (std::size_t k = 0; k < metric.size(); ++k) {
    const Mat2 m = metric.frame(k);
    if (!(m(0, 0) > 0.0 && m.determinant() > 0.0)) {
      std::ostringstream os;
      os << op << ": metric is not positive definite at node " << k;
      throw DomainError(os.str());
    }
  }
}

using JacJet = std::array<std::array<Jet2, 3>, 2>;

struct ChartFrame {
  std::array<Vec3, 2> jac;
  JacJet jac_jet;
};

ChartFrame chart_frame(const Vec3& x, Chart c) {
  const ChartPoint cp = chart_point(x, c);
  ChartFrame cf;
  cf.jac = cp.jac;
  cf.jac_jet = detail::stereo_jacobian(Jet2::variable(cp.y.x(), 0),
                                       Jet2::variable(cp.y.y(), 1), c);
  return cf;
}

// Chart 2-jet of a function from its value and surface derivatives.
Jet2 function_jet(double f, const Vec3& grad, const Mat3& d2, const ChartFrame& cf) {
  Jet2 j(f);
  for (int i = 0; i < 2; ++i) j.d[i] = grad.dot(cf.jac[i]);
  for (int i = 0; i < 2; ++i) {
    for (int jj = 0; jj < 2; ++jj) {
      double v = cf.jac[i].dot(d2 * cf.jac[jj]);
      for (int a = 0; a < 3; ++a) v += grad[a] * cf.jac_jet[i][a].d[jj];
      j.dd(i, jj) = v;
    }
  }
  j.dd = 0.5 * (j.dd + j.dd.transpose()).eval();
  return j;
}

// Surface derivatives of the six packed ambient components of a tensor field.
struct TensorDerivatives {
  std::array<SurfaceDerivatives, 6> comp;
};

TensorDerivatives tensor_derivatives(const Sym2Field& t) {
  static constexpr int kA[6] = {0, 0, 0, 1, 1, 2};
  static constexpr int kB[6] = {0, 1, 2, 1, 2, 2};
  TensorDerivatives out;
  for (int s = 0; s < 6; ++s) {
    const auto values = t.ambient_component(kA[s], kB[s]);
    out.comp[s] = surface_derivatives(*t.grid(), values);
  }
  return out;
}

struct MetricJet {
  std::array<std::array<Jet2, 2>, 2> g;
};

MetricJet metric_jet(const Sym2Field& metric, const TensorDerivatives& td, std::size_t k,
                     const ChartFrame& cf) {
  static constexpr int kSlot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  const auto& packed = metric.packed()[k];
  std::array<Jet2, 6> G;
  for (int s = 0; s < 6; ++s) {
    G[s] = function_jet(packed[s], td.comp[s].grad[k], td.comp[s].d2[k], cf);
  }
  MetricJet mj;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      Jet2 acc;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          acc = acc + cf.jac_jet[i][a] * G[kSlot[a][b]] * cf.jac_jet[j][b];
        }
      }
      mj.g[i][j] = acc;
    }
  }
  mj.g[1][0] = mj.g[0][1];
  return mj;
}

struct Connection {
  std::array<std::array<Jet1, 2>, 2> ginv;
  // gamma[k][i][j] = Gamma^k_ij
  std::array<std::array<std::array<Jet1, 2>, 2>, 2> gamma;
};

Connection connection(const MetricJet& mj) {
  Connection c;
  const Jet1 g00 = mj.g[0][0].truncate();
  const Jet1 g01 = mj.g[0][1].truncate();
  const Jet1 g11 = mj.g[1][1].truncate();
  const Jet1 det = g00 * g11 - g01 * g01;
  c.ginv[0][0] = g11 / det;
  c.ginv[1][1] = g00 / det;
  c.ginv[0][1] = (-1.0) * g01 / det;
  c.ginv[1][0] = c.ginv[0][1];

  // dg[l][i][j] = d_l g_ij
  std::array<std::array<std::array<Jet1, 2>, 2>, 2> dg;
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) dg[l][i][j] = mj.g[i][j].partial(l);
    }
  }
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Jet1 acc;
        for (int l = 0; l < 2; ++l) {
          acc = acc + c.ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        c.gamma[k][i][j] = 0.5 * acc;
      }
    }
  }
  return c;
}

double chart_curvature(const MetricJet& mj) {
  const Connection c = connection(mj);
  const auto& G = c.gamma;
  double scalar = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      double ric = 0.0;
      for (int i = 0; i < 2; ++i) {
        ric += G[i][j][k].d[i] - G[i][i][k].d[j];
        for (int p = 0; p < 2; ++p) {
          ric += G[i][i][p].v * G[p][j][k].v - G[i][j][p].v * G[p][i][k].v;
        }
      }
      scalar += c.ginv[j][k].v * ric;
    }
  }
  return 0.5 * scalar;
}

double chart_laplacian(const MetricJet& mj, const Jet2& f) {
  const Connection c = connection(mj);
  double out = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double v = f.dd(i, j);
      for (int k = 0; k < 2; ++k) v -= c.gamma[k][i][j].v * f.d[k];
      out += c.ginv[i][j].v * v;
    }
  }
  return out;
}

// Evaluates fn(chart) in the chart(s) appropriate for node k and blends.
template <typename Fn>
double blended(const Vec3& x, Fn&& fn) {
  const double wn = north_weight(x.z());
  double out = 0.0;
  if (wn > 0.0) out += wn * fn(Chart::North);
  if (wn < 1.0) out += (1.0 - wn) * fn(Chart::South);
  return out;
}

}  // namespace

SurfaceDerivatives surface_derivatives(const SphereGrid& grid, std::span<const double> f) {
  SurfaceDerivatives out;
  out.grad = grid.gradient(f);
  out.d2.assign(grid.size(), Mat3::Zero());
  std::vector<double> comp(grid.size());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = out.grad[k][a];
    const auto g2 = grid.gradient(comp);
    for (std::size_t k = 0; k < comp.size(); ++k) out.d2[k].row(a) = g2[k].transpose();
  }
  return out;
}

double integrate(const ScalarField& f, const Sym2Field& area_form) {
  if (f.grid() != area_form.grid()) {
    throw DomainError("integrate: field and area form live on different grids");
  }
  const SphereGrid& grid = *f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Mat2 m = area_form.frame(k);
    const double det = m.determinant();
    if (!(m(0, 0) > 0.0 && det > 0.0)) {
      std::ostringstream os;
      os << "integrate: area form is not positive definite at node " << k;
      throw DomainError(os.str());
    }
    sum += f[k] * std::sqrt(det) * grid.weight(k);
  }
  return sum;
}

double integrate_round(const SphereGrid& grid, std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) sum += f[k] * grid.weight(k);
  return sum;
}

ScalarField gaussian_curvature(const Sym2Field& metric) {
  require_positive(metric, "gaussian_curvature");
  const SphereGrid& grid = *metric.grid();
  const TensorDerivatives td = tensor_derivatives(metric);
  std::vector<double> K(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    K[k] = blended(x, [&](Chart c) {
      return chart_curvature(metric_jet(metric, td, k, chart_frame(x, c)));
    });
  }
  return ScalarField(metric.grid(), std::move(K));
}

ScalarField laplace_beltrami(const Sym2Field& metric, const ScalarField& f) {
  if (f.grid() != metric.grid()) {
    throw DomainError("laplace_beltrami: metric and function live on different grids");
  }
  require_positive(metric, "laplace_beltrami");
  const SphereGrid& grid = *metric.grid();
  const TensorDerivatives td = tensor_derivatives(metric);
  const SurfaceDerivatives fd = surface_derivatives(grid, f.values());
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    out[k] = blended(x, [&](Chart c) {
      const ChartFrame cf = chart_frame(x, c);
      return chart_laplacian(metric_jet(metric, td, k, cf),
                             function_jet(f[k], fd.grad[k], fd.d2[k], cf));
    });
  }
  return ScalarField(metric.grid(), std::move(out));
}

std::vector<Mat3> round_hessian(const SphereGrid& grid, std::span<const double> f) {
  const SurfaceDerivatives sd = surface_derivatives(grid, f);
  std::vector<Mat3> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    const Mat3 proj = Mat3::Identity() - x * x.transpose();
    const Mat3 m = proj * sd.d2[k] * proj;
    out[k] = 0.5 * (m + m.transpose());
  }
  return out;
}

std::vector<double> round_divergence(const SphereGrid& grid, std::span<const Vec3> v) {
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> comp(grid.size());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = v[k][a];
    const auto g = grid.gradient(comp);
    for (std::size_t k = 0; k < comp.size(); ++k) out[k] += g[k][a];
  }
  return out;
}

std::vector<Vec3> round_divergence(const Sym2Field& t) {
  const SphereGrid& grid = *t.grid();
  std::vector<Vec3> out(grid.size(), Vec3::Zero());
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto g = grid.gradient(t.ambient_component(a, b));
      for (std::size_t k = 0; k < grid.size(); ++k) out[k][b] += g[k][a];
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3& x = grid.node(k);
    out[k] -= x * x.dot(out[k]);
  }
  return out;
}

Sym2Field round_lie_derivative(const GridPtr& gp, std::span<const Vec3> v) {
  const SphereGrid& grid = *gp;
  std::vector<Mat3> d(grid.size(), Mat3::Zero());
  std::vector<double> comp(grid.size());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = v[k][a];
    const auto g = grid.gradient(comp);
    for (std::size_t k = 0; k < comp.size(); ++k) d[k].row(a) = g[k].transpose();
  }
  for (auto& m : d) m = (m + m.transpose()).eval();
  return Sym2Field::from_ambient(gp, d);
}

bool is_axisymmetric(const Sym2Field& metric, double tol) {
  const SphereGrid& grid = *metric.grid();
  double scale = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) scale = std::max(scale, metric.frame(k).cwiseAbs().maxCoeff());
  const double bound = tol * std::max(scale, 1e-300);
  for (int i = 0; i < grid.n_theta(); ++i) {
    const Mat2 ref = metric.frame(grid.index(i, 0));
    for (int j = 0; j < grid.n_phi(); ++j) {
      const Mat2 m = metric.frame(grid.index(i, j));
      if (std::abs(m(0, 1)) > bound) return false;
      if ((m - ref).cwiseAbs().maxCoeff() > bound) return false;
    }
  }
  return true;
}

double great_circle_distance(const Vec3& x1, const Vec3& x2) {
  for (const Vec3* x : {&x1, &x2}) {
    if (!std::isfinite(x->squaredNorm()) || std::abs(x->squaredNorm() - 1.0) > 1e-10) {
      throw DomainError("great_circle_distance: input is not a unit vector");
    }
  }
  // atan2 form of arccos(x1 . x2); stays accurate for nearly equal or
  // nearly antipodal points.
  return std::atan2(x1.cross(x2).norm(), x1.dot(x2));
}

}  // namespace ahmass
