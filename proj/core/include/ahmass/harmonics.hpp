#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahmass/fields.hpp"

namespace ahmass {

/// Which tensor built from a scalar expansion a term contributes to.
///   conformal: f * g0
///   electric:  Hess a - (1/2) (Lap a) g0          (trace free)
///   magnetic:  (1/2) L_{x cross grad b} g0        (trace free)
enum class TensorPart { Conformal, Electric, Magnetic };

/// One entry of a coefficient table. Harmonics use the Schmidt
/// semi-normalized real convention, so that S00 = 1, S10 = x3, S11 = x1,
/// S1,-1 = x2 and S_l0 is the Legendre polynomial P_l(x3). Negative m selects
/// the sin(|m| phi) harmonic.
struct HarmonicTerm {
  TensorPart part = TensorPart::Conformal;
  int l = 0;
  int m = 0;
  double value = 0.0;
};
using CoeffTable = std::vector<HarmonicTerm>;

/// Nodal values of the Schmidt-normalized real harmonic S_lm.
ScalarField schmidt_harmonic(const GridPtr& grid, int l, int m);
/// Nodal values of sum value * S_lm over the terms of the given part.
ScalarField harmonic_scalar(const GridPtr& grid, const CoeffTable& table, TensorPart part);

/// Builds the symmetric tensor described by the table. An empty table gives
/// the zero tensor. Throws ConfigError when l > n_theta - 2 or |m| > l.
Sym2Field sph_harm_tensor(const GridPtr& grid, const CoeffTable& table);

/// Random table with every (part, l, m), l <= l_max, drawn uniformly from
/// [-1, 1] with a portable generator (bit-identical across platforms).
/// Electric and magnetic terms start at l = 2.
CoeffTable random_table(int l_max, std::uint64_t seed);
/// Largest pointwise g0-operator norm of h.
double sup_norm(const Sym2Field& h);

/// Named tables: zero, g0, x3, one-plus-half-x3, conformal-l2. Throws
/// ConfigError for an unknown name.
CoeffTable preset_table(const std::string& name);
std::vector<std::string> preset_names();

std::string to_string(TensorPart part);
TensorPart tensor_part_from_string(const std::string& s);

}  // namespace ahmass
