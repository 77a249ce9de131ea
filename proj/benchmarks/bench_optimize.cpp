#include <benchmark/benchmark.h>

#include "landscape/certify.hpp"
#include "landscape/experiment.hpp"
#include "landscape/generate.hpp"
#include "landscape/objectives.hpp"
#include "landscape/optimize.hpp"

using namespace landscape;

static void PerturbedDescentPca(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = d;
  spec.seed = 21;
  spec.spectrum.resize(d);
  double v = 2.0;
  for (int i = 0; i < d; ++i, v *= 0.9) spec.spectrum[i] = v;
  const PcaInstance inst = gen_pca(spec);
  const auto obj = pca_objective(inst);
  PerturbedGdConfig cfg;
  cfg.base = GdConfig{default_pca_step(inst), 100000, 1e-9};
  RngStream rng(22);
  const Eigen::VectorXd x0 = rng.uniform_on_sphere(d);

  for (auto _ : state) {
    OptimizerTrace trace = perturbed_gradient_descent(*obj, x0, cfg, 23);
    benchmark::DoNotOptimize(trace.final_value);
  }
}
BENCHMARK(PerturbedDescentPca)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

static void RiemannianAscentTensor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = d;
  spec.n_components = d;
  spec.seed = 24;
  const auto obj = tensor_ambient(gen_tensor(spec));
  GdConfig cfg{default_tensor_ascent_step(), 100000, 1e-7};
  RngStream rng(25);
  const SpherePoint x0(rng.uniform_on_sphere(d));

  for (auto _ : state) {
    OptimizerTrace trace = riemannian_ascent(*obj, x0, cfg);
    benchmark::DoNotOptimize(trace.final_value);
  }
}
BENCHMARK(RiemannianAscentTensor)->Arg(6)->Arg(20)->Unit(benchmark::kMillisecond);

static void ConcentrationProbe(benchmark::State& state) {
  GeneratorSpec spec;
  spec.family = "mc";
  spec.d = static_cast<int>(state.range(0));
  spec.seed = 26;
  spec.epsilon = 0.05;
  spec.sampling_constant = 0.001;
  const McInstance inst = gen_mc(spec);

  for (auto _ : state) {
    McConcentrationResult result = mc_concentration_probe(inst, 100, 27);
    benchmark::DoNotOptimize(result.quantile_99);
  }
}
BENCHMARK(ConcentrationProbe)->Arg(200)->Arg(300)->Unit(benchmark::kMillisecond);

static void ClassifyPointPca(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = d;
  spec.seed = 28;
  spec.spectrum.resize(d);
  double v = 2.0;
  for (int i = 0; i < d; ++i, v *= 0.9) spec.spectrum[i] = v;
  const auto obj = pca_objective(gen_pca(spec));
  const ClassifierThresholds thr;
  RngStream rng(29);
  const Eigen::VectorXd x = rng.uniform_in_ball(d, 2.0);

  for (auto _ : state) {
    PointClassification cls = classify_point(*obj, x, thr);
    benchmark::DoNotOptimize(cls.hess_min_eig);
  }
}
BENCHMARK(ClassifyPointPca)->Arg(20)->Arg(100)->Arg(300);

BENCHMARK_MAIN();
