#pragma once

#include <string>

#include <Eigen/Dense>

#include "ahmass/sphere_grid.hpp"

namespace ahmass {

/// Vector in Minkowski space R^{3,1}, signature (+, -, -, -).
struct Vec4 {
  double t = 0.0;
  Vec3 x = Vec3::Zero();

  Vec4() = default;
  Vec4(double t_, const Vec3& x_) : t(t_), x(x_) {}
  Vec4(double t_, double x1, double x2, double x3) : t(t_), x(x1, x2, x3) {}
  static Vec4 from_eigen(const Eigen::Vector4d& v) { return {v[0], v.tail<3>()}; }

  Eigen::Vector4d to_eigen() const {
    Eigen::Vector4d v;
    v << t, x;
    return v;
  }
  double operator[](int i) const { return i == 0 ? t : x[i - 1]; }
  double& operator[](int i) { return i == 0 ? t : x[i - 1]; }
  double max_abs() const { return std::max(std::abs(t), x.cwiseAbs().maxCoeff()); }

  Vec4& operator+=(const Vec4& o) {
    t += o.t;
    x += o.x;
    return *this;
  }
  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(const Vec4& a, const Vec4& b) { return {a.t - b.t, a.x - b.x}; }
  friend Vec4 operator*(double s, const Vec4& a) { return {s * a.t, s * a.x}; }
};

/// u0 v0 - u . v
inline double lorentz_inner(const Vec4& u, const Vec4& v) { return u.t * v.t - u.x.dot(v.x); }

enum class CausalClass { FutureTimelike, PastTimelike, FutureNull, PastNull, Spacelike, Zero };
std::string to_string(CausalClass c);

/// Classifies v with tolerance tau = tau_scale * (|v|_inf + 1): |v|_inf <= tau
/// is zero, otherwise <v,v> is compared with the band +-tau |v|_inf.
CausalClass causal_class(const Vec4& v, double tau_scale = 1e-9);

/// Orthochronous Lorentz transformation (preserves the upper hyperboloid).
class LorentzMap {
 public:
  LorentzMap() : m_(Eigen::Matrix4d::Identity()) {}
  /// Throws DomainError unless m^T eta m = eta (relative tolerance 1e-12)
  /// and m(0,0) > 0.
  explicit LorentzMap(const Eigen::Matrix4d& m);

  const Eigen::Matrix4d& matrix() const { return m_; }
  Vec4 apply(const Vec4& v) const { return Vec4::from_eigen(m_ * v.to_eigen()); }
  /// eta m^T eta, exact up to rounding.
  LorentzMap inverse() const;
  /// Deviation max|m^T eta m - eta|.
  double defect() const;

  friend LorentzMap operator*(const LorentzMap& a, const LorentzMap& b);

 private:
  struct Unchecked {};
  LorentzMap(const Eigen::Matrix4d& m, Unchecked) : m_(m) {}
  Eigen::Matrix4d m_;
};

/// The origin o = (1, 0, 0, 0) of the hyperboloid model.
inline Vec4 origin() { return {1.0, 0.0, 0.0, 0.0}; }
/// (cosh s, sinh s n) for a unit direction n.
inline Vec4 hyperboloid_point(double sigma, const Vec3& n) {
  return {std::cosh(sigma), std::sinh(sigma) * n};
}
/// |<p,p> - 1| <= tol max(1, p0^2) and p0 > 0.
bool on_hyperboloid(const Vec4& p, double tol = 1e-8);

/// Boost translating p to o along the geodesic through them. Throws
/// DomainError when p is not on the upper hyperboloid.
LorentzMap boost_to_origin(const Vec4& p);
/// diag(1, R) for R in O(3). Throws DomainError when R^T R != I.
LorentzMap rotation_fixing_o(const Mat3& R);

/// Geodesic distance on the hyperboloid. Throws DomainError for points off
/// the upper hyperboloid.
double hyperbolic_distance(const Vec4& p, const Vec4& q);

}  // namespace ahmass
