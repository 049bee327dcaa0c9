#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ahmass/fields.hpp"
#include "ahmass/minkowski.hpp"

namespace ahmass {

enum class Gauge {
  FixThreePoints,    ///< rotate so that y(e1) = e1 and y(e2) lies in {x3 = 0, x2 >= 0}
  CenterConstraint,  ///< boost the area-weighted Minkowski mean to o, then rotate as above
};
std::string to_string(Gauge g);
Gauge gauge_from_string(const std::string& s);

struct SolverOptions {
  int max_iterations = 30;
  double tolerance = 1e-10;
  /// Initial Levenberg parameter; x0.5 on accepted steps, x10 on rejected ones.
  double damping = 1e-3;
  Gauge gauge = Gauge::FixThreePoints;
  /// Inner GMRES controls.
  int krylov_restart = 30;
  int krylov_max_iterations = 60;

  /// Throws ConfigError for tolerance <= 0 or max_iterations < 1.
  void validate() const;
};

struct SolverInfo {
  std::string method;
  int iterations = 0;
  int krylov_iterations = 0;
};

/// Map S^2 -> H^3 in geodesic polar form X = (cosh sigma, sinh sigma n).
class EmbeddingH3 {
 public:
  EmbeddingH3() = default;
  /// Computes and stores the residual against target.
  EmbeddingH3(ScalarField sigma, UnitVectorField n, std::shared_ptr<const Sym2Field> target,
              SolverInfo info = {});
  /// Rebuilds (sigma, n) from Minkowski points on the hyperboloid.
  static EmbeddingH3 from_points(const GridPtr& grid, const std::vector<Vec4>& points,
                                 std::shared_ptr<const Sym2Field> target, SolverInfo info = {});

  const GridPtr& grid() const { return sigma_.grid(); }
  const ScalarField& sigma() const { return sigma_; }
  const UnitVectorField& n_dir() const { return n_; }
  const Sym2Field& target() const { return *target_; }
  const std::shared_ptr<const Sym2Field>& target_ptr() const { return target_; }
  const SolverInfo& info() const { return info_; }

  /// Stored sup-norm isometry defect (see isometry_residual).
  double residual() const { return residual_; }
  double recompute_residual() const;

  Vec4 point(std::size_t k) const;
  std::vector<Vec4> points() const;
  Sym2Field pullback() const;

  /// Image under an isometry of H^3.
  EmbeddingH3 transformed(const LorentzMap& m) const;

 private:
  ScalarField sigma_;
  UnitVectorField n_;
  std::shared_ptr<const Sym2Field> target_;
  SolverInfo info_;
  double residual_ = 0.0;
};

/// Pullback of the hyperboloid metric along nodal Minkowski points,
/// computed with spectral tangential gradients.
Sym2Field pullback_metric(const GridPtr& grid, const std::vector<Vec4>& points);

/// Relative isometry defect: max over nodes of the operator norm of
/// gamma^-1/2 (P - gamma) gamma^-1/2.
double isometry_residual(const Sym2Field& pullback, const Sym2Field& gamma);

/// Geodesic sphere of radius asinh(1 / sinh r) about o; isometric to
/// sinh^-2(r) g0.
EmbeddingH3 embed_round(const GridPtr& grid, double r);

/// Embedding of an axisymmetric metric as a surface of revolution about
/// the geodesic through o in the x3 direction. The meridian is obtained by
/// quadrature of the closed-form profile equation. Throws DomainError for
/// non-axisymmetric input or K <= 0, SolverError when the profile does not
/// exist or the residual exceeds tolerance.
EmbeddingH3 embed_axisymmetric(const Sym2Field& gamma, double tolerance = 1e-9);

/// Damped Newton iteration on the pullback residual with GMRES inner
/// solves preconditioned by the exact inverse of the round linearization.
/// Throws DomainError when K <= 0 somewhere, SolverError when the
/// iteration cap is reached.
EmbeddingH3 embed_general(const Sym2Field& gamma, const EmbeddingH3& init,
                          const SolverOptions& opts);

/// Round initial guess with the same area as gamma.
EmbeddingH3 round_initial_guess(const Sym2Field& gamma);

/// Rotation Q with Q y1 = e1, Q y2 in {x3 = 0, x2 >= 0} and (Q y3)_3 >= 0,
/// built by Gram-Schmidt on y1, y2. Throws NormalizationError when y1 and y2
/// are (anti)parallel.
Mat3 gauge_rotation(const Vec3& y1, const Vec3& y2, const Vec3& y3);

/// Isometry fixing the gauge of the given embedding (see Gauge).
LorentzMap gauge_map(const EmbeddingH3& emb, Gauge gauge);

}  // namespace ahmass
