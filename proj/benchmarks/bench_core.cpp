#include <benchmark/benchmark.h>

#include "ahmass/ah_metric.hpp"
#include "ahmass/embedding.hpp"
#include "ahmass/extrinsic.hpp"
#include "ahmass/harmonics.hpp"
#include "ahmass/mass_pipeline.hpp"
#include "ahmass/sphere_calculus.hpp"

using namespace ahmass;

namespace {

GridPtr grid_for(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return make_grid(n, 2 * n);
}

AHFamily random_family(const GridPtr& g) {
  Sym2Field h = sph_harm_tensor(g, random_table(3, 1));
  return AHFamily((1.0 / sup_norm(h)) * h, EModel::Quartic, Sym2Field::round(g, 0.5));
}

}  // namespace

static void BM_AnalyzeSynthesize(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const ScalarField f = harmonic_scalar(g, random_table(6, 2), TensorPart::Conformal);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g->synthesize(g->analyze(f.values())));
  }
}
BENCHMARK(BM_AnalyzeSynthesize)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMicrosecond);

static void BM_GaussianCurvature(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const CoordinateSphere s = induced_metric(random_family(g), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_curvature(s.gamma));
}
BENCHMARK(BM_GaussianCurvature)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_EmbedAxisymmetric(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const CoordinateSphere s = induced_metric(AHFamily(sph_harm_tensor(g, preset_table("conformal-l2"))), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(embed_axisymmetric(s.gamma));
}
BENCHMARK(BM_EmbedAxisymmetric)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_EmbedGeneral(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const CoordinateSphere s = induced_metric(random_family(g), 0.2);
  const EmbeddingH3 init = round_initial_guess(s.gamma);
  for (auto _ : state) benchmark::DoNotOptimize(embed_general(s.gamma, init, SolverOptions{}));
}
BENCHMARK(BM_EmbedGeneral)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_ChebyshevCenter(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const CoordinateSphere s = induced_metric(random_family(g), 0.2);
  const std::vector<Vec4> pts =
      embed_general(s.gamma, round_initial_guess(s.gamma), SolverOptions{}).points();
  for (auto _ : state) benchmark::DoNotOptimize(chebyshev_center(pts));
}
BENCHMARK(BM_ChebyshevCenter)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_MassSample(benchmark::State& state) {
  const GridPtr g = grid_for(state);
  const AHFamily fam = random_family(g);
  for (auto _ : state) benchmark::DoNotOptimize(ql_mass_vector(fam, 0.2, {}));
}
BENCHMARK(BM_MassSample)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
