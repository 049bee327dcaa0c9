#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "ahmass/normalization.hpp"

using namespace ahmass;

namespace {

Mat3 rotation(double a, double b) {
  return (Eigen::AngleAxisd(a, Vec3::UnitZ()) * Eigen::AngleAxisd(b, Vec3(1, 1, 0).normalized()))
      .toRotationMatrix();
}

}  // namespace

TEST(Normalize, RoundSphereIsFixed) {
  const GridPtr g = make_grid(16, 32);
  const EmbeddingH3 e = embed_round(g, 0.3);
  const NormalizedEmbedding n = normalize(e);
  EXPECT_LT((n.applied.matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-8);
  EXPECT_LT(angular_deviation(n), 1e-8);
}

TEST(Normalize, UndoesIsometry) {
  // A moved and rotated round sphere normalizes back to the original
  // parametrization, node by node.
  const GridPtr g = make_grid(16, 32);
  const EmbeddingH3 e = embed_round(g, 0.3);
  const LorentzMap m = boost_to_origin(hyperboloid_point(0.7, Vec3(0.6, 0, 0.8))).inverse() *
                       rotation_fixing_o(rotation(0.4, 1.1));
  const NormalizedEmbedding n = normalize(e.transformed(m));
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_LT((n.emb.point(k) - e.point(k)).max_abs(), 1e-7);
  }
  EXPECT_LT(angular_deviation(n), 1e-7);
  // emb = applied(input)
  const EmbeddingH3 moved = e.transformed(m);
  for (std::size_t k = 0; k < g->size(); k += 5) {
    EXPECT_LT((n.applied.apply(moved.point(k)) - n.emb.point(k)).max_abs(), 1e-10);
  }
}

TEST(Normalize, Idempotent) {
  const GridPtr g = make_grid(16, 32);
  const EmbeddingH3 e = embed_round(g, 0.3)
                            .transformed(rotation_fixing_o(rotation(-0.3, 0.5)));
  const NormalizedEmbedding once = normalize(e);
  const NormalizedEmbedding twice = normalize(once.emb);
  EXPECT_LT((twice.applied.matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-8);
}

TEST(NodePairs, DeterministicAndInRange) {
  const auto a = random_node_pairs(100, 50, 9);
  const auto b = random_node_pairs(100, 50, 9);
  const auto c = random_node_pairs(100, 50, 10);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  ASSERT_EQ(a.size(), 50u);
  for (const auto& [i, j] : a) {
    EXPECT_LT(i, 100u);
    EXPECT_LT(j, 100u);
  }
}

TEST(Distortion, ZeroForIdentityMapAndIdenticalPairs) {
  const GridPtr g = make_grid(12, 24);
  const NormalizedEmbedding n = normalize(embed_round(g, 0.2));
  EXPECT_LT(distortion_check(n, random_node_pairs(g->size(), 200, 1)), 1e-8);
  EXPECT_EQ(distortion_check(n, {{3, 3}, {7, 7}}), 0.0);
}
