#pragma once

#include <span>
#include <vector>

#include "ahmass/fields.hpp"

namespace ahmass {

/// Tangential gradient and second tangential derivatives of a nodal
/// function: grad[k] = T f, d2[k](a, b) = (T (T f)_a)_b at node k, where T is
/// the surface gradient on the unit sphere.
struct SurfaceDerivatives {
  std::vector<Vec3> grad;
  std::vector<Mat3> d2;
};
SurfaceDerivatives surface_derivatives(const SphereGrid& grid, std::span<const double> f);

/// Integral of f against the area form of a positive-definite metric.
/// Throws DomainError naming the first node where the metric is not positive
/// definite.
double integrate(const ScalarField& f, const Sym2Field& area_form);
/// Integral against the round area form.
double integrate_round(const SphereGrid& grid, std::span<const double> f);

ScalarField gaussian_curvature(const Sym2Field& metric);
ScalarField laplace_beltrami(const Sym2Field& metric, const ScalarField& f);

/// Round-sphere Hessian of f as tangential ambient tensors.
std::vector<Mat3> round_hessian(const SphereGrid& grid, std::span<const double> f);
/// Round-sphere divergence of a tangent vector field.
std::vector<double> round_divergence(const SphereGrid& grid, std::span<const Vec3> v);
/// Round-sphere divergence of a symmetric tangential tensor field.
std::vector<Vec3> round_divergence(const Sym2Field& t);
/// Lie derivative L_v g0 = 2 sym(grad v) of the round metric along a
/// tangent vector field.
Sym2Field round_lie_derivative(const GridPtr& grid, std::span<const Vec3> v);

/// True when the metric is invariant under rotations about the x3 axis:
/// frame components constant along every latitude ring and the mixed
/// component zero, to within tol (relative to the largest entry).
bool is_axisymmetric(const Sym2Field& metric, double tol = 1e-10);

/// Geodesic distance between unit vectors. Throws DomainError for
/// non-unit input.
double great_circle_distance(const Vec3& x1, const Vec3& x2);

}  // namespace ahmass
