#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ahmass {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Real spherical-harmonic coefficients in the orthonormal convention
/// (Y00 = 1/sqrt(4 pi)). cos_part(l, m) multiplies Pbar_lm(cos t) cos(m p),
/// sin_part(l, m) multiplies Pbar_lm(cos t) sin(m p); entries with l < m
/// are unused and kept at zero.
struct HarmonicCoeffs {
  Eigen::MatrixXd cos_part;
  Eigen::MatrixXd sin_part;

  HarmonicCoeffs& operator+=(const HarmonicCoeffs& other);
  HarmonicCoeffs& operator*=(double s);
};

/// Gauss-Legendre (colatitude) x uniform (longitude) grid on the unit
/// sphere, together with the tables of its spherical-harmonic transform.
///
/// Nodes are stored colatitude-major: node(i * n_phi + j) sits at
/// (theta_i, phi_j), theta increasing from the north pole. No node lies on a
/// pole, so 1/sin(theta) is finite everywhere on the grid.
///
/// The transform is band-limited to l <= lmax() = n_theta - 1 and
/// |m| <= mmax() = min(lmax, n_phi/2 - 1); within that band analysis
/// followed by synthesis is exact.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return nodes_.size(); }
  int lmax() const { return lmax_; }
  int mmax() const { return mmax_; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_phi_) +
           static_cast<std::size_t>(j);
  }
  int ring_of(std::size_t k) const { return static_cast<int>(k / n_phi_); }
  int column_of(std::size_t k) const { return static_cast<int>(k % n_phi_); }

  const Vec3& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  /// Quadrature weight (steradians) of node k.
  double weight(std::size_t k) const { return weights_[k]; }
  const std::vector<double>& weights() const { return weights_; }
  /// Unit tangent vectors d/dtheta and (1/sin theta) d/dphi at node k.
  const Vec3& e_theta(std::size_t k) const { return e_theta_[k]; }
  const Vec3& e_phi(std::size_t k) const { return e_phi_[k]; }

  double theta(int i) const { return theta_[i]; }
  double phi(int j) const { return phi_[j]; }
  double cos_theta(int i) const { return cos_theta_[i]; }
  double sin_theta(int i) const { return sin_theta_[i]; }

  HarmonicCoeffs zero_coeffs() const;

  HarmonicCoeffs analyze(std::span<const double> values) const;
  std::vector<double> synthesize(const HarmonicCoeffs& c) const;
  /// Tangential (surface) gradient of the band-limited function with the
  /// given coefficients, as ambient R^3 vectors at every node.
  std::vector<Vec3> synthesize_gradient(const HarmonicCoeffs& c) const;
  /// Tangential gradient of nodal values (analysis then gradient synthesis).
  std::vector<Vec3> gradient(std::span<const double> values) const;
  /// Evaluates the expansion at an arbitrary point of the unit sphere.
  double evaluate(const HarmonicCoeffs& c, const Vec3& point) const;
  /// Multiplies every degree-l block by -l(l+1), i.e. applies the round
  /// Laplacian in coefficient space.
  HarmonicCoeffs apply_laplacian(const HarmonicCoeffs& c) const;

  /// Zonal (m = 0) part of an expansion and its colatitude derivative at an
  /// arbitrary colatitude, poles included.
  double evaluate_zonal(const HarmonicCoeffs& c, double theta) const;
  double evaluate_zonal_dtheta(const HarmonicCoeffs& c, double theta) const;

 private:
  int n_theta_;
  int n_phi_;
  int lmax_;
  int mmax_;
  std::vector<double> theta_, cos_theta_, sin_theta_, gl_weights_;
  std::vector<double> phi_;
  std::vector<Vec3> nodes_, e_theta_, e_phi_;
  std::vector<double> weights_;

  // Per order m: n_theta x (lmax+1) tables of normalized Legendre values,
  // their theta derivatives and m * value / sin(theta), each including the
  // 1/sqrt(2 pi) (m = 0) or 1/sqrt(pi) (m > 0) longitude normalization.
  std::vector<Eigen::MatrixXd> leg_, dleg_, mleg_;
  // Weighted Legendre tables for analysis: (lmax+1) x n_theta.
  std::vector<Eigen::MatrixXd> leg_analysis_;
  // Longitude tables: n_phi x (mmax+1) with the 2 pi / n_phi factor for
  // analysis, (mmax+1) x n_phi for synthesis.
  Eigen::MatrixXd cos_analysis_, sin_analysis_;
  Eigen::MatrixXd cos_synthesis_, sin_synthesis_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Builds a grid; n_theta >= 8, n_phi even and positive.
/// Throws ConfigError for invalid sizes.
GridPtr make_grid(int n_theta, int n_phi);

/// Orthonormal associated Legendre values Pbar_lm(x), l = m..lmax, at
/// x = cos(theta) with s = sin(theta) (no Condon-Shortley phase).
void normalized_legendre(int lmax, int m, double x, double s,
                         std::span<double> out);

}  // namespace ahmass
