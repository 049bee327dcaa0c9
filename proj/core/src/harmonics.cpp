#include "ahmass/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ahmass/error.hpp"
#include "ahmass/sphere_calculus.hpp"

namespace ahmass {

namespace {

void check_term(const SphereGrid& grid, const HarmonicTerm& t) {
  if (t.l < 0 || std::abs(t.m) > t.l) {
    throw ConfigError("harmonic term (" + std::to_string(t.l) + ", " + std::to_string(t.m) +
                      ") is not a valid degree/order pair");
  }
  if (t.l > grid.n_theta() - 2 || std::abs(t.m) > grid.mmax()) {
    throw ConfigError("harmonic degree " + std::to_string(t.l) +
                      " is beyond the grid resolution (n_theta = " +
                      std::to_string(grid.n_theta()) + ")");
  }
}

HarmonicCoeffs table_coeffs(const SphereGrid& grid, const CoeffTable& table, TensorPart part) {
  HarmonicCoeffs c = grid.zero_coeffs();
  for (const auto& t : table) {
    check_term(grid, t);
    if (t.part != part) continue;
    const double scale = std::sqrt(4.0 * std::numbers::pi / (2.0 * t.l + 1.0));
    if (t.m >= 0) {
      c.cos_part(t.l, t.m) += scale * t.value;
    } else {
      c.sin_part(t.l, -t.m) += scale * t.value;
    }
  }
  return c;
}

bool has_part(const CoeffTable& table, TensorPart part) {
  for (const auto& t : table) {
    if (t.part == part) return true;
  }
  return false;
}

}  // namespace

ScalarField schmidt_harmonic(const GridPtr& grid, int l, int m) {
  return harmonic_scalar(grid, {HarmonicTerm{TensorPart::Conformal, l, m, 1.0}},
                         TensorPart::Conformal);
}

ScalarField harmonic_scalar(const GridPtr& grid, const CoeffTable& table, TensorPart part) {
  return ScalarField(grid, grid->synthesize(table_coeffs(*grid, table, part)));
}

Sym2Field sph_harm_tensor(const GridPtr& grid, const CoeffTable& table) {
  for (const auto& t : table) check_term(*grid, t);
  Sym2Field out = Sym2Field::zero(grid);
  if (has_part(table, TensorPart::Conformal)) {
    out += Sym2Field::conformal(harmonic_scalar(grid, table, TensorPart::Conformal));
  }
  if (has_part(table, TensorPart::Electric)) {
    const ScalarField a = harmonic_scalar(grid, table, TensorPart::Electric);
    std::vector<Mat3> hess = round_hessian(*grid, a.values());
    for (std::size_t k = 0; k < hess.size(); ++k) {
      const Vec3& x = grid->node(k);
      hess[k] -= 0.5 * hess[k].trace() * (Mat3::Identity() - x * x.transpose());
    }
    out += Sym2Field::from_ambient(grid, hess);
  }
  if (has_part(table, TensorPart::Magnetic)) {
    const ScalarField b = harmonic_scalar(grid, table, TensorPart::Magnetic);
    std::vector<Vec3> v = grid->gradient(b.values());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = grid->node(k).cross(v[k]);
    out += 0.5 * round_lie_derivative(grid, v);
  }
  return out;
}

CoeffTable random_table(int l_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // 53 random mantissa bits; std::uniform_real_distribution is not
  // specified bit-for-bit across standard libraries.
  auto uniform = [&rng] {
    return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  };
  CoeffTable table;
  for (TensorPart part : {TensorPart::Conformal, TensorPart::Electric, TensorPart::Magnetic}) {
    const int l_min = (part == TensorPart::Conformal) ? 0 : 2;
    for (int l = l_min; l <= l_max; ++l) {
      for (int m = -l; m <= l; ++m) table.push_back({part, l, m, uniform()});
    }
  }
  return table;
}

double sup_norm(const Sym2Field& h) {
  double out = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    out = std::max(out, sym2_eigenvalues(h.frame(k)).cwiseAbs().maxCoeff());
  }
  return out;
}

CoeffTable preset_table(const std::string& name) {
  using P = TensorPart;
  if (name == "zero") return {};
  if (name == "g0") return {{P::Conformal, 0, 0, 1.0}};
  if (name == "x3") return {{P::Conformal, 1, 0, 1.0}};
  if (name == "one-plus-half-x3") return {{P::Conformal, 0, 0, 1.0}, {P::Conformal, 1, 0, 0.5}};
  // (1 + x3/4 + P2(x3)/2) g0: axisymmetric with a degree-2 part.
  if (name == "conformal-l2") {
    return {{P::Conformal, 0, 0, 1.0}, {P::Conformal, 1, 0, 0.25}, {P::Conformal, 2, 0, 0.5}};
  }
  throw ConfigError("unknown h preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"zero", "g0", "x3", "one-plus-half-x3", "conformal-l2"};
}

std::string to_string(TensorPart part) {
  switch (part) {
    case TensorPart::Conformal: return "conformal";
    case TensorPart::Electric: return "electric";
    case TensorPart::Magnetic: return "magnetic";
  }
  return "conformal";
}

TensorPart tensor_part_from_string(const std::string& s) {
  if (s == "conformal") return TensorPart::Conformal;
  if (s == "electric") return TensorPart::Electric;
  if (s == "magnetic") return TensorPart::Magnetic;
  throw ConfigError("unknown tensor part '" + s + "' (expected conformal, electric or magnetic)");
}

}  // namespace ahmass
