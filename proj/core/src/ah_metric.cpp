#include "ahmass/ah_metric.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ahmass/error.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/sphere_calculus.hpp"

namespace ahmass {

std::string to_string(EModel m) { return m == EModel::Zero ? "zero" : "quartic"; }

EModel e_model_from_string(const std::string& s) {
  if (s == "zero") return EModel::Zero;
  if (s == "quartic") return EModel::Quartic;
  throw ConfigError("unknown e model '" + s + "' (expected zero or quartic)");
}

AHFamily::AHFamily(Sym2Field h, EModel model, Sym2Field e_tensor, std::string description)
    : h_(std::move(h)),
      model_(model),
      e_tensor_(std::move(e_tensor)),
      description_(std::move(description)) {
  if (e_tensor_.grid() != h_.grid()) {
    throw ConfigError("AHFamily: h and the e tensor must share a grid");
  }
  // Scan for the first sign change of the smallest eigenvalue, then bisect.
  constexpr double step = 0.01;
  double lo = 0.0, hi = kRMaxCap;
  bool crossed = false;
  const int n_steps = static_cast<int>(std::lround(kRMaxCap / step));
  for (int i = 1; i <= n_steps; ++i) {
    const double r = i * step;
    if (min_eigenvalue(r) <= 0.0) {
      hi = r;
      crossed = true;
      break;
    }
    lo = r;
  }
  if (crossed) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (min_eigenvalue(mid) > 0.0 ? lo : hi) = mid;
    }
  }
  r_max_ = crossed ? lo : kRMaxCap;
}

AHFamily::AHFamily(Sym2Field h, std::string description)
    : AHFamily(h, EModel::Zero, Sym2Field::zero(h.grid()), std::move(description)) {}

Sym2Field AHFamily::e(double r) const {
  if (model_ == EModel::Zero) return Sym2Field::zero(grid());
  return std::pow(r, 4) * e_tensor_;
}

Sym2Field AHFamily::de_dr(double r) const {
  if (model_ == EModel::Zero) return Sym2Field::zero(grid());
  return 4.0 * std::pow(r, 3) * e_tensor_;
}

Sym2Field AHFamily::g(double r) const {
  return Sym2Field::round(grid()) + (r * r * r / 3.0) * h_ + e(r);
}

Sym2Field AHFamily::dg_dr(double r) const { return (r * r) * h_ + de_dr(r); }

double AHFamily::min_eigenvalue(double r) const {
  const Sym2Field gr = g(r);
  double out = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < gr.size(); ++k) out = std::min(out, sym2_eigenvalues(gr.frame(k))[0]);
  return out;
}

double AHFamily::order_constant() const {
  return model_ == EModel::Zero ? 0.0 : 4.0 * sup_norm(e_tensor_);
}

bool AHFamily::satisfies_assumption_a(std::span<const double> radii) const {
  const double c = order_constant();
  for (double r : radii) {
    if (r <= 0.0 || r > 1.0) continue;
    const double bound = c * r * r * r * (1.0 + 1e-12);
    if (sup_norm(e(r)) > bound || sup_norm(de_dr(r)) > bound) return false;
  }
  return true;
}

bool AHFamily::is_axisymmetric() const {
  const Sym2Field round = Sym2Field::round(grid());
  return ahmass::is_axisymmetric(round + h_) && ahmass::is_axisymmetric(round + e_tensor_);
}

CoordinateSphere induced_metric(const AHFamily& family, double r) {
  if (!(r > 0.0 && r < family.r_max())) {
    std::ostringstream os;
    os << "induced_metric: r = " << r << " is outside (0, " << family.r_max() << ")";
    throw DomainError(os.str());
  }
  const double s = std::sinh(r);
  return {r, (1.0 / (s * s)) * family.g(r)};
}

ScalarField mean_curvature_H(const AHFamily& family, double r) {
  if (!(r > 0.0 && r < family.r_max())) {
    std::ostringstream os;
    os << "mean_curvature_H: r = " << r << " is outside (0, " << family.r_max() << ")";
    throw DomainError(os.str());
  }
  const Sym2Field g = family.g(r);
  const Sym2Field dg = family.dg_dr(r);
  std::vector<double> H(g.size());
  const double c = 2.0 * std::cosh(r), s = 0.5 * std::sinh(r);
  for (std::size_t k = 0; k < H.size(); ++k) {
    const Mat2 gk = g.frame(k);
    H[k] = c - s * gk.ldlt().solve(dg.frame(k)).trace();
  }
  return ScalarField(family.grid(), std::move(H));
}

ScalarField scalar_curvature_R(const CoordinateSphere& sphere) {
  ScalarField K = gaussian_curvature(sphere.gamma);
  for (double& v : K.values()) v *= 2.0;
  return K;
}

Vec4 wang_mass_vector(const AHFamily& family) {
  const SphereGrid& grid = *family.grid();
  const ScalarField tr = family.h().trace();
  Vec4 out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = tr[k] * grid.weight(k);
    out.t += w;
    out.x += w * grid.node(k);
  }
  return out;
}

}  // namespace ahmass
