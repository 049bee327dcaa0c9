#include "ahmass/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ahmass/error.hpp"

namespace ahmass {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussLegendre {
  std::vector<double> x;  // descending, so theta = acos(x) ascends
  std::vector<double> w;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.x[i] = x;
    gl.x[n - 1 - i] = -x;
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  return gl;
}

double longitude_norm(int m) {
  return m == 0 ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
}

}  // namespace

HarmonicCoeffs& HarmonicCoeffs::operator+=(const HarmonicCoeffs& other) {
  cos_part += other.cos_part;
  sin_part += other.sin_part;
  return *this;
}

HarmonicCoeffs& HarmonicCoeffs::operator*=(double s) {
  cos_part *= s;
  sin_part *= s;
  return *this;
}

void normalized_legendre(int lmax, int m, double x, double s,
                         std::span<double> out) {
  // out[l] for l in [m, lmax]; entries below m are left untouched.
  double pmm = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= m; ++k) {
    pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  }
  if (m > lmax) return;
  out[m] = pmm;
  if (m + 1 > lmax) return;
  out[m + 1] = std::sqrt(2.0 * m + 3.0) * x * pmm;
  for (int l = m + 2; l <= lmax; ++l) {
    const double ll = static_cast<double>(l) * l;
    const double mm = static_cast<double>(m) * m;
    const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
    const double lm1 = static_cast<double>(l - 1);
    const double b = std::sqrt((lm1 * lm1 - mm) / (4.0 * lm1 * lm1 - 1.0));
    out[l] = a * (x * out[l - 1] - b * out[l - 2]);
  }
}

SphereGrid::SphereGrid(int n_theta, int n_phi)
    : n_theta_(n_theta), n_phi_(n_phi) {
  lmax_ = n_theta - 1;
  mmax_ = std::min(lmax_, n_phi / 2 - 1);

  const GaussLegendre gl = gauss_legendre(n_theta);
  theta_.resize(n_theta);
  cos_theta_ = gl.x;
  sin_theta_.resize(n_theta);
  gl_weights_ = gl.w;
  for (int i = 0; i < n_theta; ++i) {
    theta_[i] = std::acos(gl.x[i]);
    sin_theta_[i] = std::sqrt((1.0 - gl.x[i]) * (1.0 + gl.x[i]));
  }
  phi_.resize(n_phi);
  const double dphi = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) phi_[j] = j * dphi;

  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  nodes_.resize(n);
  e_theta_.resize(n);
  e_phi_.resize(n);
  weights_.resize(n);
  for (int i = 0; i < n_theta; ++i) {
    const double ct = cos_theta_[i], st = sin_theta_[i];
    for (int j = 0; j < n_phi; ++j) {
      const double cp = std::cos(phi_[j]), sp = std::sin(phi_[j]);
      const std::size_t k = index(i, j);
      nodes_[k] = Vec3(st * cp, st * sp, ct);
      e_theta_[k] = Vec3(ct * cp, ct * sp, -st);
      e_phi_[k] = Vec3(-sp, cp, 0.0);
      weights_[k] = gl_weights_[i] * dphi;
    }
  }

  const int nl = lmax_ + 1;
  leg_.assign(mmax_ + 1, Eigen::MatrixXd::Zero(n_theta, nl));
  dleg_.assign(mmax_ + 1, Eigen::MatrixXd::Zero(n_theta, nl));
  mleg_.assign(mmax_ + 1, Eigen::MatrixXd::Zero(n_theta, nl));
  leg_analysis_.assign(mmax_ + 1, Eigen::MatrixXd::Zero(nl, n_theta));
  // Values, theta derivatives and value / sin(theta) are all run through the
  // same three-term recurrence, so nothing is divided by sin(theta) and the
  // tables stay accurate next to the poles.
  std::vector<double> p(nl), dp(nl), q(nl);
  for (int m = 0; m <= mmax_; ++m) {
    const double norm = longitude_norm(m);
    for (int i = 0; i < n_theta; ++i) {
      const double x = cos_theta_[i], s = sin_theta_[i];
      double qmm = 1.0 / std::sqrt(2.0);
      for (int k = 1; k < m; ++k) qmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
      if (m >= 1) qmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      p[m] = (m == 0) ? qmm : qmm * s;
      q[m] = (m == 0) ? 0.0 : qmm;
      dp[m] = m * x * q[m];
      if (m + 1 <= lmax_) {
        const double a = std::sqrt(2.0 * m + 3.0);
        p[m + 1] = a * x * p[m];
        q[m + 1] = a * x * q[m];
        dp[m + 1] = a * (x * dp[m] - s * p[m]);
      }
      for (int l = m + 2; l <= lmax_; ++l) {
        const double ll = static_cast<double>(l) * l;
        const double mm = static_cast<double>(m) * m;
        const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
        const double lm1 = static_cast<double>(l - 1);
        const double b = std::sqrt((lm1 * lm1 - mm) / (4.0 * lm1 * lm1 - 1.0));
        p[l] = a * (x * p[l - 1] - b * p[l - 2]);
        q[l] = a * (x * q[l - 1] - b * q[l - 2]);
        dp[l] = a * (x * dp[l - 1] - s * p[l - 1] - b * dp[l - 2]);
      }
      for (int l = m; l <= lmax_; ++l) {
        leg_[m](i, l) = norm * p[l];
        dleg_[m](i, l) = norm * dp[l];
        mleg_[m](i, l) = norm * m * q[l];
        leg_analysis_[m](l, i) = norm * p[l] * gl_weights_[i];
      }
    }
  }

  cos_analysis_.resize(n_phi, mmax_ + 1);
  sin_analysis_.resize(n_phi, mmax_ + 1);
  cos_synthesis_.resize(mmax_ + 1, n_phi);
  sin_synthesis_.resize(mmax_ + 1, n_phi);
  for (int j = 0; j < n_phi; ++j) {
    for (int m = 0; m <= mmax_; ++m) {
      // Reduce m * j modulo n_phi so every table entry is a correctly
      // rounded value of one of n_phi exact angles.
      const double ang = 2.0 * kPi * static_cast<double>((m * j) % n_phi) / n_phi;
      const double c = std::cos(ang), s = std::sin(ang);
      cos_analysis_(j, m) = c * dphi;
      sin_analysis_(j, m) = s * dphi;
      cos_synthesis_(m, j) = c;
      sin_synthesis_(m, j) = s;
    }
  }
}

GridPtr make_grid(int n_theta, int n_phi) {
  if (n_theta < 8) {
    throw ConfigError("grid: n_theta must be >= 8, got " + std::to_string(n_theta));
  }
  if (n_phi <= 0 || n_phi % 2 != 0) {
    throw ConfigError("grid: n_phi must be positive and even, got " +
                      std::to_string(n_phi));
  }
  if (n_phi < 4) {
    throw ConfigError("grid: n_phi must be >= 4, got " + std::to_string(n_phi));
  }
  return std::make_shared<const SphereGrid>(n_theta, n_phi);
}

HarmonicCoeffs SphereGrid::zero_coeffs() const {
  return {Eigen::MatrixXd::Zero(lmax_ + 1, mmax_ + 1),
          Eigen::MatrixXd::Zero(lmax_ + 1, mmax_ + 1)};
}

HarmonicCoeffs SphereGrid::analyze(std::span<const double> values) const {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> v(values.data(), n_theta_, n_phi_);
  const Eigen::MatrixXd fc = v * cos_analysis_;
  const Eigen::MatrixXd fs = v * sin_analysis_;
  HarmonicCoeffs out = zero_coeffs();
  for (int m = 0; m <= mmax_; ++m) {
    out.cos_part.col(m) = leg_analysis_[m] * fc.col(m);
    if (m > 0) out.sin_part.col(m) = leg_analysis_[m] * fs.col(m);
  }
  return out;
}

std::vector<double> SphereGrid::synthesize(const HarmonicCoeffs& c) const {
  Eigen::MatrixXd gc(n_theta_, mmax_ + 1), gs(n_theta_, mmax_ + 1);
  for (int m = 0; m <= mmax_; ++m) {
    gc.col(m) = leg_[m] * c.cos_part.col(m);
    gs.col(m) = leg_[m] * c.sin_part.col(m);
  }
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  std::vector<double> out(size());
  Eigen::Map<RowMat> v(out.data(), n_theta_, n_phi_);
  v.noalias() = gc * cos_synthesis_ + gs * sin_synthesis_;
  return out;
}

std::vector<Vec3> SphereGrid::synthesize_gradient(const HarmonicCoeffs& c) const {
  Eigen::MatrixXd tc(n_theta_, mmax_ + 1), ts(n_theta_, mmax_ + 1);
  Eigen::MatrixXd pc(n_theta_, mmax_ + 1), ps(n_theta_, mmax_ + 1);
  for (int m = 0; m <= mmax_; ++m) {
    tc.col(m) = dleg_[m] * c.cos_part.col(m);
    ts.col(m) = dleg_[m] * c.sin_part.col(m);
    // d/dphi of cos(m p) is -m sin(m p); of sin(m p) is m cos(m p).
    pc.col(m) = mleg_[m] * c.sin_part.col(m);
    ps.col(m) = -(mleg_[m] * c.cos_part.col(m));
  }
  const Eigen::MatrixXd dth = tc * cos_synthesis_ + ts * sin_synthesis_;
  const Eigen::MatrixXd dph = pc * cos_synthesis_ + ps * sin_synthesis_;
  std::vector<Vec3> out(size());
  for (int i = 0; i < n_theta_; ++i) {
    for (int j = 0; j < n_phi_; ++j) {
      const std::size_t k = index(i, j);
      out[k] = dth(i, j) * e_theta_[k] + dph(i, j) * e_phi_[k];
    }
  }
  return out;
}

std::vector<Vec3> SphereGrid::gradient(std::span<const double> values) const {
  return synthesize_gradient(analyze(values));
}

double SphereGrid::evaluate(const HarmonicCoeffs& c, const Vec3& point) const {
  const double r = point.norm();
  const double x = std::clamp(point.z() / r, -1.0, 1.0);
  const double s = std::hypot(point.x(), point.y()) / r;
  const double ph = std::atan2(point.y(), point.x());
  std::vector<double> p(lmax_ + 1);
  double acc = 0.0;
  for (int m = 0; m <= mmax_; ++m) {
    normalized_legendre(lmax_, m, x, s, p);
    const double norm = longitude_norm(m);
    const double cm = std::cos(m * ph), sm = std::sin(m * ph);
    for (int l = m; l <= lmax_; ++l) {
      acc += norm * p[l] * (c.cos_part(l, m) * cm + c.sin_part(l, m) * sm);
    }
  }
  return acc;
}

HarmonicCoeffs SphereGrid::apply_laplacian(const HarmonicCoeffs& c) const {
  HarmonicCoeffs out = c;
  for (int l = 0; l <= lmax_; ++l) {
    const double lam = -static_cast<double>(l) * (l + 1);
    out.cos_part.row(l) *= lam;
    out.sin_part.row(l) *= lam;
  }
  return out;
}

double SphereGrid::evaluate_zonal(const HarmonicCoeffs& c, double theta) const {
  std::vector<double> p(lmax_ + 1);
  normalized_legendre(lmax_, 0, std::cos(theta), std::abs(std::sin(theta)), p);
  double acc = 0.0;
  for (int l = 0; l <= lmax_; ++l) acc += p[l] * c.cos_part(l, 0);
  return acc * longitude_norm(0);
}

double SphereGrid::evaluate_zonal_dtheta(const HarmonicCoeffs& c, double theta) const {
  // d Pbar_l0 / d theta = -sqrt(l (l + 1)) Pbar_l1, which stays well
  // conditioned at the poles.
  std::vector<double> p(lmax_ + 1);
  const double s = std::sin(theta);
  normalized_legendre(lmax_, 1, std::cos(theta), s, p);
  double acc = 0.0;
  for (int l = 1; l <= lmax_; ++l) {
    acc -= std::sqrt(static_cast<double>(l) * (l + 1)) * p[l] * c.cos_part(l, 0);
  }
  return acc * longitude_norm(0);
}

}  // namespace ahmass
