#include "ahmass/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ahmass/sphere_calculus.hpp"

namespace ahmass {

NormalizedEmbedding normalize(const EmbeddingH3& emb, const ShapeData& shape,
                              Centering centering) {
  const BallSandwich sandwich = ball_sandwich(emb, shape, centering);
  const LorentzMap boost = boost_to_origin(sandwich.center);
  const EmbeddingH3 centered = emb.transformed(boost);
  const UnitVectorField& n = centered.n_dir();
  const Mat3 q = gauge_rotation(n.interpolate(Vec3::UnitX()), n.interpolate(Vec3::UnitY()),
                                n.interpolate(Vec3::UnitZ()));
  const LorentzMap total = rotation_fixing_o(q) * boost;
  EmbeddingH3 out = emb.transformed(total);
  UnitVectorField y = out.n_dir();
  return {std::move(out), total, std::move(y), sandwich};
}

NormalizedEmbedding normalize(const EmbeddingH3& emb, Centering centering) {
  return normalize(emb, shape_operator(emb), centering);
}

std::vector<NodePair> random_node_pairs(std::size_t n_nodes, std::size_t count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodePair> out(count);
  // Modulo keeps the draw identical across standard libraries; the bias is
  // negligible for grid sizes.
  for (auto& p : out) {
    p.first = static_cast<std::size_t>(rng() % n_nodes);
    p.second = static_cast<std::size_t>(rng() % n_nodes);
  }
  return out;
}

double distortion_check(const NormalizedEmbedding& norm, const std::vector<NodePair>& pairs) {
  const SphereGrid& grid = *norm.emb.grid();
  const UnitVectorField& y = norm.angular_map;
  double out = 0.0;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    const double d0 = great_circle_distance(grid.node(a), grid.node(b));
    const double d1 = great_circle_distance(y[a], y[b]);
    out = std::max(out, std::abs(d0 - d1));
  }
  return out;
}

double angular_deviation(const NormalizedEmbedding& norm) {
  const SphereGrid& grid = *norm.emb.grid();
  double out = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out = std::max(out, great_circle_distance(norm.angular_map[k], grid.node(k)));
  }
  return out;
}

}  // namespace ahmass
