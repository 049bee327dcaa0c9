#pragma once

#include "ahmass/ah_metric.hpp"
#include "ahmass/embedding.hpp"

namespace ahmass {

/// Second fundamental form and principal curvatures of an embedded sphere,
/// signed so that a geodesic sphere of radius s has lambda = coth s.
struct ShapeData {
  Sym2Field chi;
  Sym2Field metric;  ///< pullback metric the eigenvalues refer to
  ScalarField lambda_min;
  ScalarField lambda_max;
  ScalarField H0;
};

/// Throws DomainError when the pullback metric is degenerate.
ShapeData shape_operator(const EmbeddingH3& emb);

/// max |K + 1 - lambda_1 lambda_2| for the given intrinsic curvature.
double gauss_equation_defect(const ShapeData& shape, const ScalarField& K);
/// max |H0^2 - |chi|^2 - (R + 2)| with R = 2K.
double trace_gauss_defect(const ShapeData& shape, const ScalarField& K);

/// max over nodes of 2R + 4 - (Lap R) / R on a coordinate sphere, computed
/// intrinsically. Throws DomainError where R <= 0.
double li_weinstein_bound(const CoordinateSphere& sphere);

enum class Centering {
  Circumscribed,  ///< Chebyshev center: minimizes the largest distance to the surface
  Inscribed,      ///< maximizes the smallest distance to the surface
};
std::string to_string(Centering c);
Centering centering_from_string(const std::string& s);

struct BallSandwich {
  Vec4 center;
  double rho_in = 0.0;   ///< acoth(max lambda)
  double rho_out = 0.0;  ///< acoth(min lambda)
  double min_distance = 0.0;  ///< smallest node distance from the center
  double max_distance = 0.0;  ///< largest node distance from the center
  /// min_distance - rho_in and rho_out - max_distance.
  double inner_margin() const { return min_distance - rho_in; }
  double outer_margin() const { return rho_out - max_distance; }
};

/// Concentric inscribed/circumscribed geodesic balls. Throws DomainError
/// when min lambda <= 1 and GeometryError (with the worst node) when a
/// containment certificate fails by more than eps_cert.
BallSandwich ball_sandwich(const EmbeddingH3& emb, const ShapeData& shape,
                           Centering centering = Centering::Circumscribed,
                           double eps_cert = 1e-7);

/// Chebyshev center of a point set on the hyperboloid.
Vec4 chebyshev_center(const std::vector<Vec4>& points);
/// Center maximizing the smallest distance to a closed convex surface
/// sampled by the given points, started from a seed inside it.
Vec4 inscribed_center(const std::vector<Vec4>& points, const Vec4& seed);

}  // namespace ahmass
