#pragma once

// Forward-mode second-order jets in two variables, used for chart-wise
// differential geometry on the sphere.

#include <array>

#include <Eigen/Dense>

#include "ahmass/fields.hpp"

namespace ahmass::detail {

/// Value and gradient of a function of (y1, y2).
struct Jet1 {
  double v = 0.0;
  Eigen::Vector2d d = Eigen::Vector2d::Zero();
};

/// Value, gradient and Hessian of a function of (y1, y2).
struct Jet2 {
  double v = 0.0;
  Eigen::Vector2d d = Eigen::Vector2d::Zero();
  Eigen::Matrix2d dd = Eigen::Matrix2d::Zero();

  Jet2() = default;
  explicit Jet2(double c) : v(c) {}
  Jet2(double value, const Eigen::Vector2d& grad, const Eigen::Matrix2d& hess)
      : v(value), d(grad), dd(hess) {}

  static Jet2 variable(double value, int i) {
    Jet2 j(value);
    j.d[i] = 1.0;
    return j;
  }
  Jet1 truncate() const { return Jet1{v, d}; }
  /// d/dy^i as a first-order jet.
  Jet1 partial(int i) const { return Jet1{d[i], dd.col(i)}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.d + b.d, a.dd + b.dd};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.d - b.d, a.dd - b.dd};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d, -a.dd}; }
inline Jet2 operator*(double s, const Jet2& a) { return {s * a.v, s * a.d, s * a.dd}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.v * b.d + b.v * a.d,
          a.v * b.dd + b.v * a.dd + a.d * b.d.transpose() + b.d * a.d.transpose()};
}
inline Jet2 reciprocal(const Jet2& a) {
  const double inv = 1.0 / a.v;
  const double inv2 = inv * inv;
  return {inv, -inv2 * a.d, -inv2 * a.dd + 2.0 * inv2 * inv * a.d * a.d.transpose()};
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.d + b.d}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.d - b.d}; }
inline Jet1 operator*(double s, const Jet1& a) { return {s * a.v, s * a.d}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  return {a.v * b.v, a.v * b.d + b.v * a.d};
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  const double inv = 1.0 / b.v;
  return {a.v * inv, (a.d - a.v * inv * b.d) * inv};
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }

/// Jacobian columns dx/dy^i of the inverse stereographic map, evaluated in
/// any arithmetic type (double or Jet2). Returns jac[i][a] = d x_a / d y^i.
template <typename T>
std::array<std::array<T, 3>, 2> stereo_jacobian(const T& y1, const T& y2, Chart c) {
  const T rho = T(1.0) + y1 * y1 + y2 * y2;
  const T inv = T(1.0) / rho;
  const T inv2 = inv * inv;
  const double sgn = (c == Chart::North) ? 1.0 : -1.0;
  std::array<std::array<T, 3>, 2> jac;
  const std::array<const T*, 2> y{&y1, &y2};
  for (int i = 0; i < 2; ++i) {
    for (int a = 0; a < 2; ++a) {
      T term = T(-4.0) * (*y[a]) * (*y[i]) * inv2;
      if (a == i) term = term + T(2.0) * inv;
      jac[i][a] = term;
    }
    jac[i][2] = T(4.0 * sgn) * (*y[i]) * inv2;
  }
  return jac;
}

}  // namespace ahmass::detail
