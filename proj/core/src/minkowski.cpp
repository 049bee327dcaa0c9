#include "ahmass/minkowski.hpp"

#include <cmath>

#include "ahmass/error.hpp"

namespace ahmass {

namespace {

const Eigen::Matrix4d& eta() {
  static const Eigen::Matrix4d e = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return e;
}

void require_hyperboloid(const Vec4& p, const char* op) {
  if (!on_hyperboloid(p)) {
    throw DomainError(std::string(op) + ": point is not on the upper hyperboloid");
  }
}

}  // namespace

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::FutureTimelike: return "future-timelike";
    case CausalClass::PastTimelike: return "past-timelike";
    case CausalClass::FutureNull: return "future-null";
    case CausalClass::PastNull: return "past-null";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Zero: return "zero";
  }
  return "zero";
}

CausalClass causal_class(const Vec4& v, double tau_scale) {
  const double norm = v.max_abs();
  const double tau = tau_scale * (norm + 1.0);
  if (norm <= tau) return CausalClass::Zero;
  const double q = lorentz_inner(v, v);
  const double band = tau * norm;
  if (q < -band) return CausalClass::Spacelike;
  const bool future = v.t > 0.0;
  if (q > band) return future ? CausalClass::FutureTimelike : CausalClass::PastTimelike;
  return future ? CausalClass::FutureNull : CausalClass::PastNull;
}

LorentzMap::LorentzMap(const Eigen::Matrix4d& m) : m_(m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!(defect() <= 1e-12 * scale * scale)) {
    throw DomainError("LorentzMap: matrix does not preserve the Minkowski form");
  }
  if (!(m(0, 0) > 0.0)) throw DomainError("LorentzMap: matrix is not orthochronous");
}

LorentzMap LorentzMap::inverse() const {
  return LorentzMap(eta() * m_.transpose() * eta(), Unchecked{});
}

double LorentzMap::defect() const {
  return (m_.transpose() * eta() * m_ - eta()).cwiseAbs().maxCoeff();
}

LorentzMap operator*(const LorentzMap& a, const LorentzMap& b) {
  return LorentzMap(a.m_ * b.m_, LorentzMap::Unchecked{});
}

bool on_hyperboloid(const Vec4& p, double tol) {
  if (!(p.t > 0.0) || !std::isfinite(p.t) || !p.x.allFinite()) return false;
  return std::abs(lorentz_inner(p, p) - 1.0) <= tol * std::max(1.0, p.t * p.t);
}

LorentzMap boost_to_origin(const Vec4& p) {
  require_hyperboloid(p, "boost_to_origin");
  // Recompute p0 from the spatial part so the result is Lorentz to rounding.
  const Vec3& v = p.x;
  const double p0 = std::sqrt(1.0 + v.squaredNorm());
  Eigen::Matrix4d m;
  m(0, 0) = p0;
  m.block<1, 3>(0, 1) = -v.transpose();
  m.block<3, 1>(1, 0) = -v;
  m.block<3, 3>(1, 1) = Mat3::Identity() + v * v.transpose() / (1.0 + p0);
  return LorentzMap(m);
}

LorentzMap rotation_fixing_o(const Mat3& R) {
  if (!((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-10)) {
    throw DomainError("rotation_fixing_o: matrix is not orthogonal");
  }
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.block<3, 3>(1, 1) = R;
  return LorentzMap(m);
}

double hyperbolic_distance(const Vec4& p, const Vec4& q) {
  require_hyperboloid(p, "hyperbolic_distance");
  require_hyperboloid(q, "hyperbolic_distance");
  // <p-q, p-q> = -4 sinh^2(d/2); accurate for nearby points, unlike acosh.
  const double s = -lorentz_inner(p - q, p - q);
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(s, 0.0)));
}

}  // namespace ahmass
