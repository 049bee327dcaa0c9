#pragma once

#include <span>
#include <string>

#include "ahmass/fields.hpp"
#include "ahmass/minkowski.hpp"

namespace ahmass {

/// Model of the remainder e(r) in g_r = g0 + (r^3/3) h + e(r).
enum class EModel {
  Zero,     ///< e = 0
  Quartic,  ///< e = r^4 E for a fixed tensor E
};
std::string to_string(EModel m);
EModel e_model_from_string(const std::string& s);

/// AH metric data near conformal infinity in the collar form
/// g = sinh^-2(r) (dr^2 + g_r), with n = 3.
class AHFamily {
 public:
  AHFamily(Sym2Field h, EModel model, Sym2Field e_tensor, std::string description = {});
  /// Family with e = 0.
  explicit AHFamily(Sym2Field h, std::string description = {});

  const GridPtr& grid() const { return h_.grid(); }
  const Sym2Field& h() const { return h_; }
  EModel e_model() const { return model_; }
  const Sym2Field& e_tensor() const { return e_tensor_; }
  const std::string& description() const { return description_; }

  Sym2Field e(double r) const;
  Sym2Field de_dr(double r) const;
  Sym2Field g(double r) const;
  Sym2Field dg_dr(double r) const;

  /// Largest radius below which g_r stays positive definite, capped at
  /// kRMaxCap. Found by a scan followed by bisection on the smallest
  /// eigenvalue of g_r over the nodes.
  double r_max() const { return r_max_; }
  static constexpr double kRMaxCap = 2.0;

  /// Declared constant C with |e(r)|, |de/dr| <= C r^3 for r <= 1.
  double order_constant() const;
  /// Checks the declared bound at the given radii.
  bool satisfies_assumption_a(std::span<const double> radii) const;

  /// True when h and e are invariant under rotations about the x3 axis.
  bool is_axisymmetric() const;

 private:
  double min_eigenvalue(double r) const;

  Sym2Field h_;
  EModel model_;
  Sym2Field e_tensor_;
  std::string description_;
  double r_max_ = 0.0;
};

/// The coordinate sphere S_r with its induced metric sinh^-2(r) g_r.
struct CoordinateSphere {
  double r = 0.0;
  Sym2Field gamma;
};

/// Throws DomainError unless 0 < r < r_max.
CoordinateSphere induced_metric(const AHFamily& family, double r);

/// Mean curvature of S_r in the AH metric, exact:
/// H = 2 cosh r - (sinh r / 2) tr(g_r^-1 d_r g_r).
ScalarField mean_curvature_H(const AHFamily& family, double r);

/// Scalar curvature 2K of the induced metric.
ScalarField scalar_curvature_R(const CoordinateSphere& sphere);

/// (int tr h, int tr h x) over the round sphere.
Vec4 wang_mass_vector(const AHFamily& family);

}  // namespace ahmass
