#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ahmass/ah_metric.hpp"
#include "ahmass/embedding.hpp"
#include "ahmass/extrinsic.hpp"
#include "ahmass/normalization.hpp"

namespace ahmass {

struct PipelineOptions {
  SolverOptions solver;
  /// Samples whose embedding residual exceeds this are rejected.
  double embed_tolerance = 1e-9;
  Centering centering = Centering::Circumscribed;
  /// For axisymmetric families also run the general solver and record its
  /// distance from the axisymmetric embedding.
  bool verify_general = false;
  /// Also evaluate the mass vector with the other centering.
  bool compare_centerings = false;

  /// Throws ConfigError for invalid settings.
  void validate() const;
};

/// Everything computed on one coordinate sphere.
struct SphereAnalysis {
  CoordinateSphere sphere;
  ScalarField H;
  ShapeData shape;
  NormalizedEmbedding normalized;
  Vec4 ql_mass;
  std::optional<double> verification_displacement;
  std::optional<Vec4> centering_delta;
};

/// Runs induced metric, embedding, shape operator, normalization and the
/// mass integral. Failures are rethrown as StageError tagged with the stage.
SphereAnalysis analyze_sphere(const AHFamily& family, double r, const PipelineOptions& opts);

/// Integral of f X over the embedded sphere against the area form of gamma.
Vec4 ql_integral(const ScalarField& f, const EmbeddingH3& emb, const Sym2Field& gamma);

struct MassSample {
  double r = 0.0;
  Vec4 ql_mass;  ///< integral of (H0 - H) X
  ScalarField h0_minus_h;
  double embedding_residual = 0.0;
  std::string embed_method;
  int solver_iterations = 0;
  double rho_in = 0.0;
  double rho_out = 0.0;
  CausalClass verdict = CausalClass::Zero;
  std::optional<double> verification_displacement;
  std::optional<Vec4> centering_delta;
};

MassSample ql_mass_vector(const AHFamily& family, double r, const PipelineOptions& opts);

enum class FitStatus {
  Ok,
  Constant,  ///< samples agree to rounding; the limit is their mean
  NoFit,     ///< the dominant component is not monotone in r
};
std::string to_string(FitStatus s);

struct PowerFit {
  FitStatus status = FitStatus::NoFit;
  std::optional<Vec4> limit;
  std::optional<double> exponent;
  int component = 0;  ///< index of the component the exponent was fitted on
};

/// Fits M(r) = M0 + A r^p with p shared across components, chosen on the
/// component with the largest spread. Needs at least 3 samples.
PowerFit fit_power_law(const std::vector<double>& r, const std::vector<Vec4>& values);

/// Fits y = c + a x^p for one scalar series and returns p, or nullopt when
/// the series is not monotone. Used for order estimates.
std::optional<double> fit_exponent(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct MassReport {
  std::string family;
  std::vector<MassSample> samples;  ///< strictly decreasing r
  PowerFit fit;
  Vec4 wang_half;
  std::optional<CausalClass> limit_verdict;
};

/// Runs the samples concurrently and fits the limit. Throws ConfigError
/// for fewer than 3 radii or repeated radii.
MassReport converge(const AHFamily& family, std::vector<double> r_list,
                    const PipelineOptions& opts);

}  // namespace ahmass
