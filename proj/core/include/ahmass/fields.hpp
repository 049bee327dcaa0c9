#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "ahmass/sphere_grid.hpp"

namespace ahmass {

/// One real value per grid node.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(GridPtr grid, std::vector<double> values);
  /// Constant field.
  ScalarField(GridPtr grid, double value);
  static ScalarField from_function(GridPtr grid,
                                   const std::function<double(const Vec3&)>& f);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double max() const;
  double min() const;
  double max_abs() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Which stereographic chart a 2x2 coordinate representation refers to.
/// North: projection from the north pole (good on the southern hemisphere);
/// South: projection from the south pole.
enum class Chart { North, South };

/// Symmetric 2-tensor field on S^2.
///
/// Stored per node as an ambient 3x3 symmetric matrix T with T x = 0 (a
/// tangential tensor); the six independent entries are kept in the order
/// xx, xy, xz, yy, yz, zz. Coordinate representations in the orthonormal
/// (e_theta, e_phi) frame or in either stereographic chart are derived on
/// demand, which makes the two chart representations agree on their overlap
/// by construction.
class Sym2Field {
 public:
  using Packed = std::array<double, 6>;

  Sym2Field() = default;
  Sym2Field(GridPtr grid, std::vector<Packed> components);
  /// Projects arbitrary symmetric 3x3 matrices onto the tangent planes.
  static Sym2Field from_ambient(GridPtr grid, const std::vector<Mat3>& tensors);
  /// c * g0, the round metric scaled by c.
  static Sym2Field round(GridPtr grid, double c = 1.0);
  /// f * g0 for a pointwise conformal factor.
  static Sym2Field conformal(const ScalarField& f);
  static Sym2Field zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return comps_.size(); }

  Mat3 ambient(std::size_t k) const;
  /// Entry (a, b) of the ambient tensor at node k, as a nodal field.
  std::vector<double> ambient_component(int a, int b) const;
  /// Components in the orthonormal (e_theta, e_phi) frame at node k.
  Mat2 frame(std::size_t k) const;
  /// Components g(d/dy^i, d/dy^j) in a stereographic chart. Exactly
  /// symmetric.
  Mat2 chart(std::size_t k, Chart c) const;

  /// Trace with respect to g0.
  ScalarField trace() const;

  Sym2Field& operator+=(const Sym2Field& o);
  Sym2Field& operator*=(double s);
  /// Pointwise scaling by a scalar field.
  Sym2Field scaled(const ScalarField& f) const;

  const std::vector<Packed>& packed() const { return comps_; }

 private:
  GridPtr grid_;
  std::vector<Packed> comps_;
};

Sym2Field operator+(Sym2Field a, const Sym2Field& b);
Sym2Field operator*(double s, Sym2Field a);

/// One unit 3-vector per node; |v|^2 = 1 within 1e-12 is enforced.
class UnitVectorField {
 public:
  UnitVectorField() = default;
  /// Throws DomainError when a direction is not unit length.
  UnitVectorField(GridPtr grid, std::vector<Vec3> directions);
  /// The identity map x -> x.
  static UnitVectorField identity(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return dirs_.size(); }
  const Vec3& operator[](std::size_t k) const { return dirs_[k]; }
  const std::vector<Vec3>& directions() const { return dirs_; }
  /// Spectral interpolation at an arbitrary point, renormalized.
  Vec3 interpolate(const Vec3& point) const;

 private:
  GridPtr grid_;
  std::vector<Vec3> dirs_;
};

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
Vec2 sym2_eigenvalues(const Mat2& m);

/// Tangential stereographic chart data at a point: coordinates y and the
/// Jacobian columns dx/dy^i.
struct ChartPoint {
  Vec2 y;
  std::array<Vec3, 2> jac;
};
ChartPoint chart_point(const Vec3& x, Chart c);
/// Inverse stereographic map.
Vec3 chart_inverse(const Vec2& y, Chart c);

}  // namespace ahmass
