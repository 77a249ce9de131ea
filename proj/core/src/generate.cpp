#include "landscape/generate.hpp"

#include <cmath>
#include <stdexcept>

#include "landscape/objectives.hpp"
#include "landscape/rng.hpp"

namespace landscape {

void GeneratorSpec::validate() const {
  if (family != "glm" && family != "pca" && family != "mc" && family != "tensor")
    throw std::invalid_argument("GeneratorSpec: unknown family '" + family + "'");
  if (d < 2) throw std::invalid_argument("GeneratorSpec: d must be >= 2");
}

void to_json(nlohmann::json& j, const GeneratorSpec& spec) {
  j = nlohmann::json{{"family", spec.family},
                     {"d", spec.d},
                     {"seed", spec.seed},
                     {"n", spec.n},
                     {"B", spec.B},
                     {"R", spec.R},
                     {"noise_bound", spec.noise_bound},
                     {"spectrum", spec.spectrum},
                     {"mu", spec.mu},
                     {"epsilon", spec.epsilon},
                     {"sampling_constant", spec.sampling_constant},
                     {"mc_ground_truth", spec.mc_ground_truth},
                     {"n_components", spec.n_components}};
}

// Deserialization fills defaults and leaves validation to the generators,
// so pseudo-families like check-grad's "all" can pass through.
void from_json(const nlohmann::json& j, GeneratorSpec& spec) {
  spec = GeneratorSpec{};
  spec.family = j.at("family").get<std::string>();
  spec.d = j.value("d", spec.d);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.n = j.value("n", spec.n);
  spec.B = j.value("B", spec.B);
  spec.R = j.value("R", spec.R);
  spec.noise_bound = j.value("noise_bound", spec.noise_bound);
  spec.spectrum = j.value("spectrum", spec.spectrum);
  spec.mu = j.value("mu", spec.mu);
  spec.epsilon = j.value("epsilon", spec.epsilon);
  spec.sampling_constant = j.value("sampling_constant", spec.sampling_constant);
  spec.mc_ground_truth = j.value("mc_ground_truth", spec.mc_ground_truth);
  spec.n_components = j.value("n_components", spec.n_components);
}

GlmInstance gen_glm(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.B * spec.R < 1.0)
    throw std::invalid_argument("gen_glm: requires B*R >= 1");
  if (spec.n < 1) throw std::invalid_argument("gen_glm: n must be >= 1");
  if (spec.noise_bound < 0.0 || spec.noise_bound > 1.0)
    throw std::invalid_argument("gen_glm: noise_bound must lie in [0, 1]");

  RngStream rng(spec.seed);
  GlmInstance inst;
  inst.B = spec.B;
  inst.R = spec.R;
  inst.noise_bound = spec.noise_bound;
  inst.seed = spec.seed;
  inst.w_star = rng.uniform_on_sphere(spec.d, spec.R);
  inst.X.resize(spec.n, spec.d);
  inst.y.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    inst.X.row(i) = rng.uniform_on_sphere(spec.d, spec.B);
    const double eps = spec.noise_bound > 0.0
                           ? rng.uniform(-spec.noise_bound, spec.noise_bound)
                           : 0.0;
    inst.y[i] = sigmoid(inst.w_star.dot(inst.X.row(i))) + eps;
  }
  // sigma' is even and decreasing in |t|, so the infimum over [-BR, BR] is
  // attained at the endpoint.
  inst.gamma = sigmoid_d1(spec.B * spec.R);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      inst.X.transpose() * inst.X / spec.n, Eigen::EigenvaluesOnly);
  inst.lambda_min_cov = es.eigenvalues().minCoeff();
  inst.validate();
  return inst;
}

namespace {

// QR with the sign convention diag(R) > 0, making Q Haar-distributed and the
// factorization unique.
Eigen::MatrixXd haar_orthonormal(int rows, int cols, RngStream& rng) {
  Eigen::MatrixXd gauss(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) gauss(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int c = 0; c < cols; ++c)
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  return q;
}

}  // namespace

PcaInstance gen_pca(const GeneratorSpec& spec) {
  spec.validate();
  if (static_cast<int>(spec.spectrum.size()) != spec.d)
    throw std::invalid_argument("gen_pca: spectrum must have d entries");
  for (int i = 0; i < spec.d; ++i) {
    if (spec.spectrum[i] < 0.0)
      throw std::invalid_argument("gen_pca: negative spectrum entry");
    if (i > 0 && spec.spectrum[i] > spec.spectrum[i - 1])
      throw std::invalid_argument("gen_pca: spectrum must be descending");
  }

  RngStream rng(spec.seed);
  PcaInstance inst;
  inst.seed = spec.seed;
  inst.eigvals = Eigen::Map<const Eigen::VectorXd>(spec.spectrum.data(), spec.d);
  inst.eigvecs = haar_orthonormal(spec.d, spec.d, rng);
  inst.M = inst.eigvecs * inst.eigvals.asDiagonal() * inst.eigvecs.transpose();
  inst.M = 0.5 * (inst.M + inst.M.transpose());
  inst.validate();
  return inst;
}

double mc_sampling_rate(int d, double mu, double epsilon, double sampling_constant) {
  const double logd = std::log(static_cast<double>(d));
  return sampling_constant * std::pow(mu, 4) * std::pow(logd, 3) /
         (d * epsilon * epsilon);
}

McInstance gen_mc(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.mu < 1.0) throw std::invalid_argument("gen_mc: mu must be >= 1");
  if (spec.epsilon <= 0.0 || spec.epsilon >= 1.0)
    throw std::invalid_argument("gen_mc: epsilon must lie in (0, 1)");

  const int d = spec.d;
  McInstance inst;
  inst.mu = spec.mu;
  inst.epsilon = spec.epsilon;
  inst.seed = spec.seed;
  inst.p = std::min(1.0, mc_sampling_rate(d, spec.mu, spec.epsilon,
                                          spec.sampling_constant));

  const double expected = inst.p * d * (d + 1) / 2.0;
  if (expected < 10.0 * d)
    throw std::invalid_argument(
        "gen_mc: expected mask size below 10*d; instance too sparse");

  RngStream rng(spec.seed);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  if (spec.mc_ground_truth == "signs") {
    inst.z.resize(d);
    for (int i = 0; i < d; ++i) inst.z[i] = rng.sign() * inv_sqrt_d;
  } else if (spec.mc_ground_truth == "gaussian") {
    // Rejection sampling against the incoherence cap; practical for
    // mu >~ 2.5 at d ~ 300, cheap for larger mu.
    const double cap = spec.mu * inv_sqrt_d;
    bool accepted = false;
    for (int attempt = 0; attempt < 10000 && !accepted; ++attempt) {
      inst.z = rng.uniform_on_sphere(d);
      accepted = inst.z.lpNorm<Eigen::Infinity>() <= cap;
    }
    if (!accepted)
      throw std::runtime_error(
          "gen_mc: rejection sampling failed; mu too tight for a Gaussian z");
  } else {
    throw std::invalid_argument("gen_mc: unknown mc_ground_truth '" +
                                spec.mc_ground_truth + "'");
  }

  inst.omega.clear();
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      if (inst.p >= 1.0 || rng.bernoulli(inst.p)) inst.omega.emplace_back(i, j);

  inst.validate();
  return inst;
}

TensorInstance gen_tensor(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.n_components > 0 ? spec.n_components : spec.d;
  if (n > spec.d)
    throw std::invalid_argument("gen_tensor: n_components must be <= d");

  RngStream rng(spec.seed);
  TensorInstance inst;
  inst.seed = spec.seed;
  inst.components = haar_orthonormal(spec.d, n, rng).transpose();
  inst.validate();
  return inst;
}

}  // namespace landscape
