#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "landscape/fd_check.hpp"
#include "landscape/generate.hpp"
#include "landscape/objectives.hpp"

using namespace landscape;

namespace {

GlmInstance small_glm(int d, int n, double noise, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.family = "glm";
  spec.d = d;
  spec.n = n;
  spec.B = 1.0;
  spec.R = 2.0;
  spec.noise_bound = noise;
  spec.seed = seed;
  return gen_glm(spec);
}

PcaInstance diag_pca(std::vector<double> spectrum) {
  const int d = static_cast<int>(spectrum.size());
  PcaInstance inst;
  inst.eigvals = Eigen::Map<const Eigen::VectorXd>(spectrum.data(), d);
  inst.eigvecs = Eigen::MatrixXd::Identity(d, d);
  inst.M = inst.eigvals.asDiagonal();
  return inst;
}

McInstance full_mc(const Eigen::VectorXd& z) {
  McInstance inst;
  inst.z = z;
  inst.mu = 1.0;
  inst.p = 1.0;
  inst.epsilon = 0.1;
  const int d = static_cast<int>(z.size());
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) inst.omega.emplace_back(i, j);
  return inst;
}

Eigen::VectorXd sign_vector(int d, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) z[i] = rng.sign() / std::sqrt(double(d));
  return z;
}

}  // namespace

TEST_CASE("glm empirical risk vanishes at the ground truth without noise") {
  const GlmInstance inst = small_glm(4, 50, 0.0, 1);
  const auto obj = glm_empirical(inst);
  CHECK(obj->value(inst.w_star) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(obj->gradient(inst.w_star).norm() <= 1e-14);
}

TEST_CASE("glm empirical risk on a single centered point") {
  GlmInstance inst;
  inst.X = Eigen::MatrixXd::Zero(1, 2);
  inst.X(0, 0) = 1.0;
  inst.y = Eigen::VectorXd::Constant(1, 0.5);  // sigma(0)
  inst.w_star = Eigen::VectorXd::Zero(2);
  // w_star = 0 needs no noise: y = sigma(0) exactly.
  inst.B = 1.0;
  inst.R = 1.0;
  inst.gamma = sigmoid_d1(1.0);
  inst.noise_bound = 0.0;
  const auto obj = glm_empirical(inst);
  CHECK(obj->value(Eigen::VectorXd::Zero(2)) == 0.0);
}

TEST_CASE("glm gradient and hessian match finite differences") {
  const auto obj = glm_empirical(small_glm(3, 200, 0.3, 5));
  RngStream rng(6);
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < 20; ++i) points.push_back(rng.uniform_in_ball(3, 2.0));
  CHECK(check_objective_derivatives(*obj, points).passed);
}

TEST_CASE("glm risk is non-negative everywhere") {
  const auto obj = glm_empirical(small_glm(5, 40, 0.5, 9));
  RngStream rng(10);
  for (int i = 0; i < 200; ++i)
    CHECK(obj->value(rng.uniform_in_ball(5, 3.0)) >= 0.0);
}

TEST_CASE("population proxy is minimized at w_star") {
  const GlmInstance inst = small_glm(4, 100, 0.0, 11);
  const auto proxy = glm_population_proxy(inst, 20000, 123);
  const double at_star = proxy->value(inst.w_star);
  CHECK(at_star <= 1e-30);  // exact fit, noise-free
  RngStream rng(12);
  for (int i = 0; i < 50; ++i)
    CHECK(proxy->value(rng.uniform_in_ball(4, inst.R)) >= at_star);
}

TEST_CASE("population proxy agrees across seeds within Monte-Carlo error") {
  const GlmInstance inst = small_glm(4, 100, 0.2, 13);
  RngStream rng(14);
  const Eigen::VectorXd w = rng.uniform_in_ball(4, inst.R);

  const int m = 100000;
  const auto standard_error = [&](std::uint64_t seed) {
    const GlmInstance fresh = glm_fresh_sample(inst, m, seed);
    double mean = 0.0, sq = 0.0;
    for (int i = 0; i < m; ++i) {
      const double r = fresh.y[i] - sigmoid(w.dot(fresh.X.row(i)));
      const double loss = 0.5 * r * r;
      mean += loss;
      sq += loss * loss;
    }
    mean /= m;
    const double var = sq / m - mean * mean;
    return std::pair<double, double>(mean, std::sqrt(var / m));
  };

  const auto [v1, se1] = standard_error(100);
  const auto [v2, se2] = standard_error(200);
  CHECK(std::abs(v1 - v2) <= 3.0 * std::sqrt(se1 * se1 + se2 * se2));

  // The proxy objective reports exactly the frozen-sample mean.
  CHECK(glm_population_proxy(inst, m, 100)->value(w) ==
        doctest::Approx(v1).epsilon(1e-12));
}

TEST_CASE("population proxy warns when undersized") {
  const GlmInstance inst = small_glm(3, 100, 0.0, 15);
  std::string warning;
  glm_population_proxy(inst, 500, 1, &warning);
  CHECK(!warning.empty());
  warning.clear();
  glm_population_proxy(inst, 1000, 1, &warning);
  CHECK(warning.empty());
}

TEST_CASE("pca objective at hand-computable points") {
  const auto obj = pca_objective(diag_pca({2.0, 1.0}));

  SUBCASE("origin is stationary") {
    CHECK(obj->gradient(Eigen::VectorXd::Zero(2)).norm() == 0.0);
  }
  SUBCASE("top eigendirection: value and tangent curvature") {
    Eigen::VectorXd x(2);
    x << std::sqrt(2.0), 0.0;
    CHECK(obj->value(x) == doctest::Approx(0.5).epsilon(1e-14));
    // Tangent direction e2 at the top point has positive curvature
    // 2 l1 - 2 l2 = 2.
    const Eigen::MatrixXd h = obj->hessian(x);
    CHECK(h(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("second eigendirection is a strict saddle") {
    Eigen::VectorXd x(2);
    x << 0.0, 1.0;
    CHECK(obj->gradient(x).norm() <= 1e-12);
    const Eigen::MatrixXd h = obj->hessian(x);
    CHECK(h(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  }
}

TEST_CASE("pca stationary points are exactly the scaled eigenvectors") {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = 8;
  spec.seed = 16;
  spec.spectrum = {2.0, 1.6, 1.3, 1.0, 0.8, 0.6, 0.4, 0.2};
  const PcaInstance inst = gen_pca(spec);
  const auto obj = pca_objective(inst);
  for (int i = 0; i < inst.dim(); ++i) {
    const Eigen::VectorXd x = std::sqrt(inst.eigvals[i]) * inst.eigvecs.col(i);
    CHECK(obj->gradient(x).norm() <= 1e-10);
    CHECK(obj->gradient(-x).norm() <= 1e-10);
  }
}

TEST_CASE("pca global minimum value is the tail energy") {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = 6;
  spec.seed = 17;
  spec.spectrum = {2.0, 1.4, 1.0, 0.7, 0.4, 0.1};
  const PcaInstance inst = gen_pca(spec);
  const auto obj = pca_objective(inst);
  const Eigen::VectorXd top = std::sqrt(inst.eigvals[0]) * inst.eigvecs.col(0);
  const double f_star = pca_global_min_value(inst);
  CHECK(obj->value(top) == doctest::Approx(f_star).epsilon(1e-12));
  RngStream rng(18);
  for (int i = 0; i < 300; ++i)
    CHECK(obj->value(rng.uniform_in_ball(6, 2.0 * std::sqrt(2.0))) >=
          f_star - 1e-12);
}

TEST_CASE("fully observed completion coincides with pca on z z^T") {
  const int d = 12;
  const Eigen::VectorXd z = sign_vector(d, 19);
  const auto mc = mc_objective(full_mc(z));

  PcaInstance rank1;
  rank1.M = z * z.transpose();
  rank1.eigvals = Eigen::VectorXd::Zero(d);
  rank1.eigvals[0] = 1.0;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(d, d);
  basis.col(0) = z;
  // Gram-Schmidt against z to get a valid eigvec set for validation.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.col(0).dot(z) < 0.0) q.col(0) = -q.col(0);
  rank1.eigvecs = q;
  const auto pca = pca_objective(rank1);

  RngStream rng(20);
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x = rng.uniform_in_ball(d, 1.5);
    CHECK(std::abs(mc->value(x) - pca->value(x)) <= 1e-12);
    CHECK((mc->gradient(x) - pca->gradient(x)).norm() <= 1e-12);
    CHECK((mc->hessian(x) - pca->hessian(x)).norm() <= 1e-11);
  }
}

TEST_CASE("completion objective vanishes at the ground truth") {
  GeneratorSpec spec;
  spec.family = "mc";
  spec.d = 40;
  spec.seed = 21;
  spec.epsilon = 0.3;
  spec.sampling_constant = 0.05;  // keeps p below 1 at this scale
  const McInstance inst = gen_mc(spec);
  REQUIRE(inst.p < 1.0);
  const auto obj = mc_objective(inst);
  CHECK(obj->value(inst.z) == 0.0);
  CHECK(obj->gradient(inst.z).norm() == 0.0);
}

TEST_CASE("completion derivatives match finite differences") {
  GeneratorSpec spec;
  spec.family = "mc";
  spec.seed = 22;
  spec.epsilon = 0.3;

  SUBCASE("fully observed, d=20") {
    spec.d = 20;  // default sampling constant clamps p to 1 at this scale
  }
  SUBCASE("partially observed, d=30") {
    spec.d = 30;
    spec.sampling_constant = 0.06;
  }

  const McInstance inst = gen_mc(spec);
  const auto obj = mc_objective(inst);
  const double half = 0.95 * 2.0 * inst.mu / std::sqrt(double(inst.dim()));
  RngStream rng(23);
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < 20; ++i)
    points.push_back(rng.uniform_in_cube(inst.dim(), half));
  CHECK(check_objective_derivatives(*obj, points).passed);
}

TEST_CASE("tensor objective with standard basis components is the 4-norm") {
  TensorInstance inst;
  inst.components = Eigen::MatrixXd::Identity(5, 5);
  const auto obj = tensor_ambient(inst);
  RngStream rng(24);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd x = rng.uniform_on_sphere(5);
    CHECK(obj->value(x) ==
          doctest::Approx(x.array().pow(4).sum()).epsilon(1e-12));
  }
}

TEST_CASE("tensor objective at and between components") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 6;
  spec.n_components = 4;
  spec.seed = 25;
  const TensorInstance inst = gen_tensor(spec);
  const auto obj = tensor_ambient(inst);

  const Eigen::VectorXd a1 = inst.components.row(0);
  const Eigen::VectorXd a2 = inst.components.row(1);
  CHECK(obj->value(a1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((obj->gradient(a1) - 4.0 * a1).norm() <= 1e-12);

  const Eigen::VectorXd mid = (a1 + a2) / std::sqrt(2.0);
  CHECK(obj->value(mid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tensor value is bounded by the fourth power of the norm") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 7;
  spec.n_components = 7;
  spec.seed = 26;
  const auto obj = tensor_ambient(gen_tensor(spec));
  RngStream rng(27);
  for (int i = 0; i < 300; ++i) {
    const Eigen::VectorXd x = rng.uniform_in_ball(7, 1.5);
    const double v = obj->value(x);
    CHECK(v >= 0.0);
    CHECK(v <= std::pow(x.norm(), 4) + 1e-12);
  }
}

TEST_CASE("tensor derivatives match finite differences") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 6;
  spec.n_components = 5;
  spec.seed = 28;
  const auto obj = tensor_ambient(gen_tensor(spec));
  RngStream rng(29);
  std::vector<Eigen::VectorXd> points;
  for (int i = 0; i < 20; ++i) points.push_back(rng.uniform_on_sphere(6));
  CHECK(check_objective_derivatives(*obj, points).passed);
}

TEST_CASE("hessians are exactly symmetric for all families") {
  RngStream rng(30);

  const auto check_sym = [&](const Objective& obj, const Eigen::VectorXd& x) {
    const Eigen::MatrixXd h = obj.hessian(x);
    CHECK((h - h.transpose()).norm() == 0.0);
  };

  check_sym(*glm_empirical(small_glm(4, 30, 0.1, 31)), rng.gaussian_vector(4));

  GeneratorSpec pca_spec;
  pca_spec.family = "pca";
  pca_spec.d = 5;
  pca_spec.seed = 32;
  pca_spec.spectrum = {1.5, 1.0, 0.7, 0.4, 0.2};
  check_sym(*pca_objective(gen_pca(pca_spec)), rng.gaussian_vector(5));

  check_sym(*mc_objective(full_mc(sign_vector(6, 33))), rng.gaussian_vector(6));

  GeneratorSpec t_spec;
  t_spec.family = "tensor";
  t_spec.d = 5;
  t_spec.n_components = 3;
  t_spec.seed = 34;
  check_sym(*tensor_ambient(gen_tensor(t_spec)), rng.gaussian_vector(5));
}
