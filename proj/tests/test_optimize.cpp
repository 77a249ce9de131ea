#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "landscape/certify.hpp"
#include "landscape/experiment.hpp"
#include "landscape/generate.hpp"
#include "landscape/objectives.hpp"
#include "landscape/optimize.hpp"

using namespace landscape;

namespace {

PcaInstance gapped_pca(int d, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = d;
  spec.seed = seed;
  spec.spectrum.resize(d);
  spec.spectrum[0] = 2.0;
  double v = 1.0;
  for (int i = 1; i < d; ++i, v *= 0.9) spec.spectrum[i] = v;
  return gen_pca(spec);
}

std::unique_ptr<Objective> quartic_1d() {
  return std::make_unique<FunctionObjective>(
      1, [](const Eigen::VectorXd& x) { return std::pow(x[0], 4); },
      [](const Eigen::VectorXd& x) {
        return Eigen::VectorXd::Constant(1, 4.0 * std::pow(x[0], 3));
      },
      [](const Eigen::VectorXd& x) {
        return Eigen::MatrixXd::Constant(1, 1, 12.0 * x[0] * x[0]);
      });
}

}  // namespace

TEST_CASE("gradient descent on the isotropic quadratic decays exactly") {
  const QuadraticObjective obj(Eigen::MatrixXd::Identity(10, 10));
  GdConfig cfg{0.5, 1000, 1e-9};
  const OptimizerTrace trace =
      gradient_descent(obj, Eigen::VectorXd::Ones(10), cfg);

  CHECK(trace.termination == Termination::GradTol);
  CHECK(trace.final_point.norm() <= 1e-9);
  // x_{k+1} = (1 - step) x_k, so the error contracts by (1 - step)^2 = 0.25
  // per iteration, exactly in floating point for step = 0.5.
  for (std::size_t i = 1; i < trace.values.size(); ++i)
    CHECK(trace.values[i] == 0.25 * trace.values[i - 1]);
}

TEST_CASE("gradient descent values never increase for step <= 1/(2L)") {
  RngStream rng(51);
  const Eigen::MatrixXd a =
      testing::random_spd(testing::linspace_spectrum(8, 4.0, 0.5), rng);
  const QuadraticObjective obj(a);
  GdConfig cfg{1.0 / (2.0 * 4.0), 500, 1e-12};
  const OptimizerTrace trace = gradient_descent(obj, rng.gaussian_vector(8), cfg);
  for (std::size_t i = 1; i < trace.values.size(); ++i)
    CHECK(trace.values[i] <= trace.values[i - 1]);
}

TEST_CASE("gradient descent finds the top eigendirection of a PCA instance") {
  const PcaInstance inst = gapped_pca(10, 52);
  const auto obj = pca_objective(inst);
  RngStream rng(53);
  Eigen::VectorXd x0 = rng.uniform_on_sphere(10);
  // Generic starts overlap the top eigenvector; GD then cannot stall.
  REQUIRE(std::abs(x0.dot(inst.eigvecs.col(0))) > 1e-3);

  GdConfig cfg{1.0 / (8.0 * inst.eigvals[0]), 20000, 1e-10};
  const OptimizerTrace trace = gradient_descent(*obj, x0, cfg);
  CHECK(trace.termination == Termination::GradTol);
  const Eigen::VectorXd top = std::sqrt(inst.eigvals[0]) * inst.eigvecs.col(0);
  const double dist = std::min((trace.final_point - top).norm(),
                               (trace.final_point + top).norm());
  CHECK(dist <= 1e-5);
}

TEST_CASE("gradient descent stalls at an exact saddle") {
  const PcaInstance inst = gapped_pca(10, 54);
  const auto obj = pca_objective(inst);
  const Eigen::VectorXd saddle =
      std::sqrt(inst.eigvals[1]) * inst.eigvecs.col(1);
  GdConfig cfg{default_pca_step(inst), 1000, 1e-8};
  const OptimizerTrace trace = gradient_descent(*obj, saddle, cfg);
  CHECK(trace.termination == Termination::GradTol);
  CHECK(trace.total_iters == 0);
  CHECK((trace.final_point - saddle).norm() == 0.0);
}

TEST_CASE("gradient descent reports divergence with the iteration index") {
  const QuadraticObjective obj(4.0 * Eigen::MatrixXd::Identity(3, 3));
  GdConfig cfg{10.0, 100000, 1e-9};  // far beyond 2/L
  CHECK_THROWS_AS(gradient_descent(obj, Eigen::VectorXd::Ones(3), cfg),
                  std::runtime_error);
}

TEST_CASE("perturbed gradient descent escapes the PCA saddle") {
  const PcaInstance inst = gapped_pca(10, 55);
  const auto obj = pca_objective(inst);
  const Eigen::VectorXd saddle =
      std::sqrt(inst.eigvals[1]) * inst.eigvecs.col(1);

  PerturbedGdConfig cfg;
  cfg.base = GdConfig{default_pca_step(inst), 100000, 1e-9};
  cfg.perturb_radius = 1e-3;
  const OptimizerTrace trace = perturbed_gradient_descent(*obj, saddle, cfg, 7);

  CHECK(trace.termination == Termination::GradTol);
  CHECK(!trace.perturbation_events.empty());
  CHECK(trace.final_value - pca_global_min_value(inst) <= 1e-8);
}

TEST_CASE("perturbed and plain descent agree on a convex quadratic") {
  RngStream rng(56);
  const Eigen::MatrixXd a =
      testing::random_spd(testing::linspace_spectrum(6, 2.0, 0.8), rng);
  const QuadraticObjective obj(a);
  const Eigen::VectorXd x0 = rng.gaussian_vector(6);

  GdConfig gd{0.2, 100000, 1e-10};
  PerturbedGdConfig pgd;
  pgd.base = gd;
  pgd.perturb_radius = 1e-3;

  const OptimizerTrace plain = gradient_descent(obj, x0, gd);
  const OptimizerTrace kicked = perturbed_gradient_descent(obj, x0, pgd, 8);
  CHECK(plain.termination == Termination::GradTol);
  CHECK(kicked.termination == Termination::GradTol);
  // The unique minimum is 0; both endpoints sit within grad_tol scale of it.
  CHECK((plain.final_point - kicked.final_point).norm() <= 10.0 * gd.grad_tol);
}

TEST_CASE("perturbed descent localizes a small completion instance") {
  GeneratorSpec spec;
  spec.family = "mc";
  spec.d = 80;
  spec.seed = 57;
  spec.epsilon = 0.25;
  spec.sampling_constant = 0.04;
  const McInstance inst = gen_mc(spec);
  REQUIRE(inst.p < 1.0);
  const auto obj = mc_objective(inst);
  const double cap = 2.0 * inst.mu / std::sqrt(double(inst.dim()));

  PerturbedGdConfig cfg;
  cfg.base = GdConfig{default_mc_step(inst), 100000, 1e-9};
  cfg.perturb_radius = 1e-3;

  RngStream rng(58);
  for (int run = 0; run < 2; ++run) {
    const Eigen::VectorXd x0 = rng.uniform_in_cube(inst.dim(), 0.45 * cap);
    const OptimizerTrace trace =
        perturbed_gradient_descent(*obj, x0, cfg, 59 + run);
    CHECK(trace.termination == Termination::GradTol);
    CHECK(trace.final_point.lpNorm<Eigen::Infinity>() < cap);
    const double dist = std::min((trace.final_point - inst.z).norm(),
                                 (trace.final_point + inst.z).norm());
    CHECK(dist <= 5.0 * std::sqrt(inst.epsilon));
  }
}

TEST_CASE("riemannian ascent terminates at a component immediately") {
  TensorInstance inst;
  inst.components = Eigen::MatrixXd::Identity(5, 5);
  const auto obj = tensor_ambient(inst);
  GdConfig cfg{default_tensor_ascent_step(), 1000, 1e-9};
  const SpherePoint a1(Eigen::VectorXd::Unit(5, 0));
  const OptimizerTrace trace = riemannian_ascent(*obj, a1, cfg);
  CHECK(trace.total_iters == 0);
  CHECK(trace.final_value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("riemannian ascent recovers a component from random starts") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 6;
  spec.n_components = 6;
  spec.seed = 60;
  const TensorInstance inst = gen_tensor(spec);
  const auto obj = tensor_ambient(inst);
  GdConfig cfg{default_tensor_ascent_step(), 20000, 1e-7};

  RngStream rng(61);
  for (int run = 0; run < 10; ++run) {
    const SpherePoint x0(rng.uniform_on_sphere(6));
    const OptimizerTrace trace = riemannian_ascent(*obj, x0, cfg);
    CHECK(trace.termination == Termination::GradTol);
    const double overlap =
        (inst.components * trace.final_point).cwiseAbs().maxCoeff();
    CHECK(overlap >= 1.0 - 1e-6);
  }
}

TEST_CASE("riemannian ascent stalls on a pattern point until jittered") {
  TensorInstance inst;
  inst.components = Eigen::MatrixXd::Identity(6, 6);
  const auto obj = tensor_ambient(inst);
  GdConfig cfg{default_tensor_ascent_step(), 20000, 1e-9};

  Eigen::VectorXd coords = Eigen::VectorXd::Zero(6);
  coords[0] = coords[1] = 1.0 / std::sqrt(2.0);
  const SpherePoint pattern(coords);

  const OptimizerTrace stalled = riemannian_ascent(*obj, pattern, cfg);
  CHECK(stalled.total_iters == 0);
  CHECK(stalled.final_value == doctest::Approx(0.5).epsilon(1e-12));

  Eigen::VectorXd jitter = Eigen::VectorXd::Zero(6);
  jitter[0] = 1e-6;
  jitter[1] = -1e-6;  // tangent at the pattern point
  const OptimizerTrace escaped =
      riemannian_ascent(*obj, retract(pattern, jitter), cfg);
  CHECK(escaped.termination == Termination::GradTol);
  CHECK(escaped.final_point.cwiseAbs().maxCoeff() >= 1.0 - 1e-6);
}

TEST_CASE("riemannian ascent iterates stay on the sphere") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 5;
  spec.n_components = 4;
  spec.seed = 62;
  const auto obj = tensor_ambient(gen_tensor(spec));
  GdConfig cfg{default_tensor_ascent_step(), 5000, 1e-8};
  RngStream rng(63);
  const OptimizerTrace trace =
      riemannian_ascent(*obj, SpherePoint(rng.uniform_on_sphere(5)), cfg);
  for (const Eigen::VectorXd& p : trace.points)
    CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
}

TEST_CASE("geometric decay check on a strongly convex quadratic") {
  RngStream rng(64);
  const Eigen::MatrixXd a =
      testing::random_spd(testing::linspace_spectrum(6, 3.0, 1.0), rng);
  const QuadraticObjective obj(a);
  GdConfig cfg{1.0 / (2.0 * 3.0), 5000, 1e-12};
  const OptimizerTrace trace = gradient_descent(obj, rng.gaussian_vector(6), cfg);
  const DecayCheck decay = geometric_decay_check(trace, 0.0);
  CHECK(decay.is_geometric);
  CHECK(decay.r_squared >= 0.99);
  CHECK(decay.rate < 1.0);
}

TEST_CASE("quartic decay is sub-geometric") {
  const auto obj = quartic_1d();
  GdConfig cfg{0.01, 3000, 1e-14};
  const OptimizerTrace trace =
      gradient_descent(*obj, Eigen::VectorXd::Ones(1), cfg);
  const DecayCheck decay = geometric_decay_check(trace, 0.0);
  CHECK_FALSE(decay.is_geometric);
  CHECK(decay.r_squared < 0.99);
}

TEST_CASE("decay check rejects traces that start at the optimum") {
  const QuadraticObjective obj(Eigen::MatrixXd::Identity(3, 3));
  GdConfig cfg{0.5, 100, 1e-9};
  const OptimizerTrace trace =
      gradient_descent(obj, Eigen::VectorXd::Zero(3), cfg);
  CHECK_THROWS_AS(geometric_decay_check(trace, 0.0), std::invalid_argument);
}

TEST_CASE("trace CSV has the documented columns and flags kicks") {
  const PcaInstance inst = gapped_pca(6, 65);
  const auto obj = pca_objective(inst);
  PerturbedGdConfig cfg;
  cfg.base = GdConfig{default_pca_step(inst), 50000, 1e-9};
  RngStream rng(66);
  const OptimizerTrace trace =
      perturbed_gradient_descent(*obj, rng.uniform_on_sphere(6), cfg, 9);
  REQUIRE(!trace.perturbation_events.empty());

  std::ostringstream os;
  trace_to_csv(trace, os);
  const std::string csv = os.str();
  CHECK(csv.rfind("iter,value,grad_norm,perturbed_flag\n", 0) == 0);
  CHECK(csv.find(",1\n") != std::string::npos);  // at least one kick recorded
}

TEST_CASE("optimizer configs validate their fields") {
  CHECK_THROWS_AS((GdConfig{-1.0, 10, 1e-9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GdConfig{0.1, 0, 1e-9}.validate()), std::invalid_argument);
  PerturbedGdConfig bad;
  bad.base = GdConfig{0.1, 10, 1e-9};
  bad.perturb_radius = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("certified PL instances decay geometrically under descent") {
  // The probe and the decay check agree: a quadratic that passes the PL
  // probe with mu = 2 l_min also shows geometric decay in the trace.
  RngStream rng(67);
  const double l_min = 0.8;
  const Eigen::MatrixXd a =
      testing::random_spd(testing::linspace_spectrum(5, 2.5, l_min), rng);
  const QuadraticObjective obj(a);

  const DomainSampler sampler = [](RngStream& r) {
    return r.uniform(0.0, 2.0) * r.uniform_on_sphere(5);
  };
  const ConditionProbeReport probe =
      probe_condition(obj, Eigen::VectorXd::Zero(5), Condition::PL,
                      2.0 * l_min, sampler, 200, 68);
  REQUIRE(probe.n_violations == 0);

  GdConfig cfg{1.0 / (2.0 * 2.5), 5000, 1e-12};
  const OptimizerTrace trace = gradient_descent(obj, rng.gaussian_vector(5), cfg);
  CHECK(geometric_decay_check(trace, 0.0).is_geometric);
}
