#include <doctest.h>

#include <cmath>

#include "landscape/generate.hpp"
#include "landscape/objectives.hpp"

using namespace landscape;

TEST_CASE("generation is bit-identical for a fixed spec and seed") {
  GeneratorSpec glm_spec;
  glm_spec.family = "glm";
  glm_spec.d = 6;
  glm_spec.n = 50;
  glm_spec.noise_bound = 0.3;
  glm_spec.seed = 91;
  CHECK(nlohmann::json(gen_glm(glm_spec)).dump() ==
        nlohmann::json(gen_glm(glm_spec)).dump());

  GeneratorSpec pca_spec;
  pca_spec.family = "pca";
  pca_spec.d = 5;
  pca_spec.seed = 92;
  pca_spec.spectrum = {2.0, 1.0, 0.5, 0.2, 0.1};
  CHECK(nlohmann::json(gen_pca(pca_spec)).dump() ==
        nlohmann::json(gen_pca(pca_spec)).dump());

  GeneratorSpec mc_spec;
  mc_spec.family = "mc";
  mc_spec.d = 40;
  mc_spec.seed = 93;
  mc_spec.epsilon = 0.3;
  mc_spec.sampling_constant = 0.05;
  CHECK(nlohmann::json(gen_mc(mc_spec)).dump() ==
        nlohmann::json(gen_mc(mc_spec)).dump());

  GeneratorSpec t_spec;
  t_spec.family = "tensor";
  t_spec.d = 6;
  t_spec.n_components = 4;
  t_spec.seed = 94;
  CHECK(nlohmann::json(gen_tensor(t_spec)).dump() ==
        nlohmann::json(gen_tensor(t_spec)).dump());
}

TEST_CASE("glm generation honors the regularity assumptions") {
  GeneratorSpec spec;
  spec.family = "glm";
  spec.d = 10;
  spec.n = 10000;
  spec.B = 1.0;
  spec.R = 2.0;
  spec.noise_bound = 0.0;
  spec.seed = 95;
  const GlmInstance inst = gen_glm(spec);

  SUBCASE("noise-free labels live in [0, 1] and w_star fits exactly") {
    for (int i = 0; i < inst.n(); ++i) {
      CHECK(inst.y[i] >= 0.0);
      CHECK(inst.y[i] <= 1.0);
    }
    CHECK(glm_empirical(inst)->value(inst.w_star) <= 1e-30);
  }
  SUBCASE("gamma is the sigmoid slope at the boundary BR = 2") {
    const double s2 = 1.0 / (1.0 + std::exp(-2.0));
    CHECK(inst.gamma == doctest::Approx(s2 * (1.0 - s2)).epsilon(1e-15));
    CHECK(inst.gamma == doctest::Approx(0.105).epsilon(1e-2));
  }
  SUBCASE("empirical covariance floor approaches B^2/d") {
    // Uniform-on-sphere covariance is (B^2/d) I.
    CHECK(inst.lambda_min_cov ==
          doctest::Approx(spec.B * spec.B / spec.d).epsilon(0.2));
  }
}

TEST_CASE("glm generation requires B R >= 1") {
  GeneratorSpec spec;
  spec.family = "glm";
  spec.d = 3;
  spec.B = 0.5;
  spec.R = 1.0;
  spec.seed = 96;
  CHECK_THROWS_AS(gen_glm(spec), std::invalid_argument);
}

TEST_CASE("pca generation produces a faithful eigendecomposition") {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = 8;
  spec.seed = 97;
  spec.spectrum = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const PcaInstance inst = gen_pca(spec);

  SUBCASE("rank-1 spectrum gives a random projector") {
    CHECK((inst.M * inst.M - inst.M).norm() <= 1e-12);
    CHECK(inst.M.trace() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("eigenvectors are orthonormal and reconstruct M") {
    CHECK((inst.eigvecs.transpose() * inst.eigvecs -
           Eigen::MatrixXd::Identity(8, 8))
              .norm() <= 1e-10);
    const Eigen::MatrixXd rebuilt =
        inst.eigvecs * inst.eigvals.asDiagonal() * inst.eigvecs.transpose();
    CHECK((inst.M - rebuilt).norm() <= 1e-12);
  }
}

TEST_CASE("pca generation validates the spectrum") {
  GeneratorSpec spec;
  spec.family = "pca";
  spec.d = 3;
  spec.seed = 98;
  spec.spectrum = {1.0, -0.1, -0.2};
  CHECK_THROWS_AS(gen_pca(spec), std::invalid_argument);
  spec.spectrum = {1.0, 2.0, 0.5};
  CHECK_THROWS_AS(gen_pca(spec), std::invalid_argument);
}

TEST_CASE("mc generation: mask, incoherence, and density") {
  SUBCASE("small epsilon saturates the sampling rate: full observation") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 30;
    spec.seed = 99;
    spec.epsilon = 0.05;
    const McInstance inst = gen_mc(spec);
    CHECK(inst.p == 1.0);
    CHECK(inst.omega.size() == 30 * 31 / 2);
  }
  SUBCASE("sub-unit p: empirical mask density concentrates around p") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 300;
    spec.seed = 100;
    spec.epsilon = 0.05;
    spec.sampling_constant = 0.001;
    const McInstance inst = gen_mc(spec);
    REQUIRE(inst.p < 1.0);
    const double n_pairs = 300.0 * 301.0 / 2.0;
    const double density = inst.omega.size() / n_pairs;
    const double slack = 5.0 * std::sqrt(inst.p * (1.0 - inst.p) / n_pairs);
    CHECK(std::abs(density - inst.p) <= slack);
  }
  SUBCASE("sign ground truth is unit and maximally incoherent") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 200;
    spec.seed = 101;
    spec.epsilon = 0.3;
    const McInstance inst = gen_mc(spec);
    CHECK(std::abs(inst.z.squaredNorm() - 1.0) <= 1e-12);
    CHECK(inst.z.lpNorm<Eigen::Infinity>() ==
          doctest::Approx(1.0 / std::sqrt(200.0)).epsilon(1e-15));
  }
  SUBCASE("mask entries are stored with i <= j (symmetry implicit)") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 50;
    spec.seed = 102;
    spec.epsilon = 0.3;
    spec.sampling_constant = 0.05;
    const McInstance inst = gen_mc(spec);
    for (const auto& [i, j] : inst.omega) CHECK(i <= j);
  }
  SUBCASE("instances expected to be too sparse are rejected") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 30;
    spec.seed = 103;
    spec.epsilon = 0.3;
    spec.sampling_constant = 0.04;
    CHECK_THROWS_AS(gen_mc(spec), std::invalid_argument);
  }
  SUBCASE("gaussian ground truth obeys the incoherence cap") {
    GeneratorSpec spec;
    spec.family = "mc";
    spec.d = 60;
    spec.seed = 104;
    spec.epsilon = 0.3;
    spec.mu = 3.0;
    spec.mc_ground_truth = "gaussian";
    const McInstance inst = gen_mc(spec);
    CHECK(inst.z.lpNorm<Eigen::Infinity>() <= spec.mu / std::sqrt(60.0));
    CHECK(std::abs(inst.z.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("tensor generation produces orthonormal components") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 7;
  spec.n_components = 7;
  spec.seed = 105;
  const TensorInstance inst = gen_tensor(spec);
  CHECK((inst.components * inst.components.transpose() -
         Eigen::MatrixXd::Identity(7, 7))
            .norm() <= 1e-12);
  CHECK(tensor_ambient(inst)->value(inst.components.row(0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  spec.n_components = 9;
  CHECK_THROWS_AS(gen_tensor(spec), std::invalid_argument);
}

TEST_CASE("instances serialize to JSON and back without loss") {
  GeneratorSpec spec;
  spec.family = "glm";
  spec.d = 5;
  spec.n = 20;
  spec.noise_bound = 0.2;
  spec.seed = 106;
  const GlmInstance glm = gen_glm(spec);
  const nlohmann::json j1 = glm;
  const GlmInstance glm2 = j1.get<GlmInstance>();
  CHECK(nlohmann::json(glm2).dump() == j1.dump());
  CHECK(glm2.X == glm.X);
  CHECK(glm2.y == glm.y);
  CHECK(glm2.seed == glm.seed);

  spec.family = "pca";
  spec.spectrum = {1.5, 0.9, 0.4, 0.2, 0.05};
  const PcaInstance pca = gen_pca(spec);
  CHECK(nlohmann::json(nlohmann::json(pca).get<PcaInstance>()).dump() ==
        nlohmann::json(pca).dump());

  spec.family = "mc";
  spec.d = 40;
  spec.epsilon = 0.3;
  spec.sampling_constant = 0.05;
  const McInstance mc = gen_mc(spec);
  const McInstance mc2 = nlohmann::json(mc).get<McInstance>();
  CHECK(mc2.omega == mc.omega);
  CHECK(mc2.z == mc.z);

  spec.family = "tensor";
  spec.d = 5;
  spec.n_components = 3;
  const TensorInstance tensor = gen_tensor(spec);
  CHECK(nlohmann::json(nlohmann::json(tensor).get<TensorInstance>()).dump() ==
        nlohmann::json(tensor).dump());
}

TEST_CASE("generator spec JSON round-trips with defaults") {
  const nlohmann::json j = {{"family", "mc"}, {"d", 25}, {"epsilon", 0.2}};
  const GeneratorSpec spec = j.get<GeneratorSpec>();
  CHECK(spec.family == "mc");
  CHECK(spec.d == 25);
  CHECK(spec.epsilon == 0.2);
  CHECK(spec.mu == 1.0);  // default preserved
  CHECK(spec.sampling_constant == 1.0);
}

TEST_CASE("loaded instances are validated") {
  GeneratorSpec spec;
  spec.family = "tensor";
  spec.d = 4;
  spec.n_components = 3;
  spec.seed = 107;
  nlohmann::json j = gen_tensor(spec);
  j["components"]["data"][0] = 5.0;  // break orthonormality
  CHECK_THROWS_AS(j.get<TensorInstance>(), std::invalid_argument);
}
