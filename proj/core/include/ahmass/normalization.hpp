#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ahmass/embedding.hpp"
#include "ahmass/extrinsic.hpp"

namespace ahmass {

struct NormalizedEmbedding {
  EmbeddingH3 emb;
  LorentzMap applied;           ///< emb = applied(input)
  UnitVectorField angular_map;  ///< y(x): direction of the image of x seen from o
  BallSandwich sandwich;        ///< balls of the input; radii and distances are invariant
};

/// Moves the ball center to o, then rotates so that y(e1) = e1,
/// y(e2) lies in {x3 = 0, x2 >= 0} and y(e3) has x3 >= 0. Errors from
/// ball_sandwich propagate; a degenerate gauge throws NormalizationError.
NormalizedEmbedding normalize(const EmbeddingH3& emb, const ShapeData& shape,
                              Centering centering = Centering::Circumscribed);
NormalizedEmbedding normalize(const EmbeddingH3& emb,
                              Centering centering = Centering::Circumscribed);

using NodePair = std::pair<std::size_t, std::size_t>;

/// Uniformly drawn node pairs; deterministic for a given seed.
std::vector<NodePair> random_node_pairs(std::size_t n_nodes, std::size_t count,
                                        std::uint64_t seed);

/// max over pairs of |d(x1, x2) - d(y(x1), y(x2))| in the round distance.
double distortion_check(const NormalizedEmbedding& norm, const std::vector<NodePair>& pairs);

/// max over nodes of d(y(x), x).
double angular_deviation(const NormalizedEmbedding& norm);

}  // namespace ahmass
