#include <benchmark/benchmark.h>

#include "landscape/fd_check.hpp"
#include "landscape/generate.hpp"
#include "landscape/objectives.hpp"
#include "landscape/rng.hpp"

using namespace landscape;

namespace {

std::unique_ptr<Objective> make_pca(int d) {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = d;
  spec.seed = 1;
  spec.spectrum.resize(d);
  double v = 2.0;
  for (int i = 0; i < d; ++i, v *= 0.9) spec.spectrum[i] = v;
  return pca_objective(gen_pca(spec));
}

std::unique_ptr<Objective> make_mc(int d) {
  GeneratorSpec spec;
  spec.family = "mc";
  spec.d = d;
  spec.seed = 2;
  spec.epsilon = 0.05;
  spec.sampling_constant = 0.001;
  return mc_objective(gen_mc(spec));
}

std::unique_ptr<Objective> make_glm(int d, int n) {
  GeneratorSpec spec;
  spec.family = "glm";
  spec.d = d;
  spec.n = n;
  spec.seed = 3;
  spec.noise_bound = 0.1;
  return glm_empirical(gen_glm(spec));
}

std::unique_ptr<Objective> make_tensor(int d) {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = d;
  spec.n_components = d;
  spec.seed = 4;
  return tensor_ambient(gen_tensor(spec));
}

void bench_gradient(benchmark::State& state, const Objective& obj,
                    const Eigen::VectorXd& x) {
  for (auto _ : state) {
    Eigen::VectorXd g = obj.gradient(x);
    benchmark::DoNotOptimize(g.data());
  }
}

void bench_hessian(benchmark::State& state, const Objective& obj,
                   const Eigen::VectorXd& x) {
  for (auto _ : state) {
    Eigen::MatrixXd h = obj.hessian(x);
    benchmark::DoNotOptimize(h.data());
  }
}

}  // namespace

static void PcaGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto obj = make_pca(d);
  RngStream rng(10);
  bench_gradient(state, *obj, rng.uniform_in_ball(d, 2.0));
}
BENCHMARK(PcaGradient)->Arg(20)->Arg(100)->Arg(300);

static void PcaHessian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto obj = make_pca(d);
  RngStream rng(10);
  bench_hessian(state, *obj, rng.uniform_in_ball(d, 2.0));
}
BENCHMARK(PcaHessian)->Arg(20)->Arg(100)->Arg(300);

static void McGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto obj = make_mc(d);
  RngStream rng(11);
  const Eigen::VectorXd x = rng.uniform_in_cube(d, 0.9 / std::sqrt(double(d)));
  bench_gradient(state, *obj, x);
}
BENCHMARK(McGradient)->Arg(200)->Arg(300);

static void GlmGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto obj = make_glm(10, n);
  RngStream rng(12);
  bench_gradient(state, *obj, rng.uniform_in_ball(10, 2.0));
}
BENCHMARK(GlmGradient)->Arg(1000)->Arg(10000)->Arg(40000);

static void TensorGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto obj = make_tensor(d);
  RngStream rng(13);
  bench_gradient(state, *obj, rng.uniform_on_sphere(d));
}
BENCHMARK(TensorGradient)->Arg(6)->Arg(50)->Arg(200);

static void FdHessianPca(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto obj = make_pca(d);
  RngStream rng(14);
  const Eigen::VectorXd x = rng.uniform_in_ball(d, 2.0);
  const ScalarField f = [&](const Eigen::VectorXd& p) { return obj->value(p); };
  for (auto _ : state) {
    Eigen::MatrixXd h = fd_hessian(f, x);
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(FdHessianPca)->Arg(10)->Arg(30);

BENCHMARK_MAIN();
