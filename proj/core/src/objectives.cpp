#include "landscape/objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "landscape/rng.hpp"

namespace landscape {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double sigmoid_d1(double t) {
  const double s = sigmoid(t);
  return s * (1.0 - s);
}

double sigmoid_d2(double t) {
  const double s = sigmoid(t);
  return s * (1.0 - s) * (1.0 - 2.0 * s);
}

namespace {

class GlmEmpiricalObjective final : public Objective {
 public:
  explicit GlmEmpiricalObjective(GlmInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
  }

  int dim() const override { return inst_.dim(); }

  double value(const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd t = inst_.X * w;
    double sum = 0.0;
    for (int i = 0; i < inst_.n(); ++i) {
      const double r = inst_.y[i] - sigmoid(t[i]);
      sum += r * r;
    }
    return sum / (2.0 * inst_.n());
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd t = inst_.X * w;
    Eigen::VectorXd coeff(inst_.n());
    for (int i = 0; i < inst_.n(); ++i)
      coeff[i] = (sigmoid(t[i]) - inst_.y[i]) * sigmoid_d1(t[i]);
    return inst_.X.transpose() * coeff / inst_.n();
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& w) const override {
    const Eigen::VectorXd t = inst_.X * w;
    Eigen::VectorXd coeff(inst_.n());
    for (int i = 0; i < inst_.n(); ++i) {
      const double s1 = sigmoid_d1(t[i]);
      coeff[i] = s1 * s1 + (sigmoid(t[i]) - inst_.y[i]) * sigmoid_d2(t[i]);
    }
    const Eigen::MatrixXd h =
        inst_.X.transpose() * coeff.asDiagonal() * inst_.X / inst_.n();
    return 0.5 * (h + h.transpose());  // exact symmetry
  }

 private:
  GlmInstance inst_;
};

class PcaObjective final : public Objective {
 public:
  explicit PcaObjective(PcaInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
  }

  int dim() const override { return inst_.dim(); }

  double value(const Eigen::VectorXd& x) const override {
    return 0.5 * (inst_.M - x * x.transpose()).squaredNorm();
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return 2.0 * (x.squaredNorm() * x - inst_.M * x);
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    const int d = dim();
    const Eigen::MatrixXd h =
        4.0 * x * x.transpose() +
        2.0 * x.squaredNorm() * Eigen::MatrixXd::Identity(d, d) -
        2.0 * inst_.M;
    return 0.5 * (h + h.transpose());  // exact symmetry even for loaded M
  }

 private:
  PcaInstance inst_;
};

// Observed pairs in adjacency form: for row k, all columns j with the ordered
// pair (k, j) in the symmetric mask. Off-diagonal pairs appear in both rows.
struct OmegaAdjacency {
  std::vector<std::vector<int>> cols;

  explicit OmegaAdjacency(const McInstance& inst) : cols(inst.dim()) {
    for (const auto& [i, j] : inst.omega) {
      cols[i].push_back(j);
      if (i != j) cols[j].push_back(i);
    }
  }
};

class McObjective final : public Objective {
 public:
  explicit McObjective(McInstance inst)
      : inst_(validated(std::move(inst))), adj_(inst_) {}

  int dim() const override { return inst_.dim(); }

  // Sum over ordered pairs of the mask, i.e. off-diagonal observations count
  // twice, matching ||P_Omega(.)||_F^2.
  double value(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd& z = inst_.z;
    double sum = 0.0;
    for (const auto& [i, j] : inst_.omega) {
      const double e = z[i] * z[j] - x[i] * x[j];
      sum += (i == j) ? e * e : 2.0 * e * e;
    }
    return 0.5 * sum;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd& z = inst_.z;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    for (int k = 0; k < dim(); ++k) {
      double acc = 0.0;
      for (int j : adj_.cols[k]) acc += (x[k] * x[j] - z[k] * z[j]) * x[j];
      g[k] = 2.0 * acc;
    }
    return g;
  }

  // H = 2 diag(s) + 2 P_Omega(x x^T) + 2 P_Omega(x x^T - z z^T), with
  // s_k = sum_{j : (k,j) observed} x_j^2. Quadratic form matches
  // ||P_Omega(v x^T + x v^T)||_F^2 - 2 <P_Omega(z z^T - x x^T), v v^T>.
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd& z = inst_.z;
    const int d = dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int j : adj_.cols[k]) s += x[j] * x[j];
      h(k, k) = 2.0 * s;
    }
    for (const auto& [i, j] : inst_.omega) {
      const double entry = 2.0 * x[i] * x[j] + 2.0 * (x[i] * x[j] - z[i] * z[j]);
      h(i, j) += entry;
      if (i != j) h(j, i) += entry;
    }
    return h;
  }

 private:
  static McInstance validated(McInstance inst) {
    inst.validate();
    return inst;
  }

  McInstance inst_;
  OmegaAdjacency adj_;
};

class TensorAmbientObjective final : public Objective {
 public:
  explicit TensorAmbientObjective(TensorInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
  }

  int dim() const override { return inst_.dim(); }

  double value(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd t = inst_.components * x;
    return t.array().square().square().sum();
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd t = inst_.components * x;
    return 4.0 * inst_.components.transpose() * t.array().cube().matrix();
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    const Eigen::VectorXd t = inst_.components * x;
    const Eigen::VectorXd t2 = t.array().square();
    const Eigen::MatrixXd h = 12.0 * inst_.components.transpose() *
                              t2.asDiagonal() * inst_.components;
    return 0.5 * (h + h.transpose());  // exact symmetry
  }

 private:
  TensorInstance inst_;
};

}  // namespace

std::unique_ptr<Objective> glm_empirical(GlmInstance inst) {
  return std::make_unique<GlmEmpiricalObjective>(std::move(inst));
}

GlmInstance glm_fresh_sample(const GlmInstance& inst, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("glm_fresh_sample: m must be >= 1");
  GlmInstance fresh;
  fresh.X.resize(m, inst.dim());
  fresh.y.resize(m);
  fresh.activation = inst.activation;
  fresh.w_star = inst.w_star;
  fresh.B = inst.B;
  fresh.R = inst.R;
  fresh.gamma = inst.gamma;
  fresh.noise_bound = inst.noise_bound;
  fresh.seed = seed;

  RngStream rng(seed);
  for (int i = 0; i < m; ++i) {
    fresh.X.row(i) = rng.uniform_on_sphere(inst.dim(), inst.B);
    const double eps = inst.noise_bound > 0.0
                           ? rng.uniform(-inst.noise_bound, inst.noise_bound)
                           : 0.0;
    fresh.y[i] = sigmoid(fresh.w_star.dot(fresh.X.row(i))) + eps;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      fresh.X.transpose() * fresh.X / m);
  fresh.lambda_min_cov = es.eigenvalues().minCoeff();
  return fresh;
}

std::unique_ptr<Objective> glm_population_proxy(const GlmInstance& inst,
                                                int eval_sample_size,
                                                std::uint64_t seed,
                                                std::string* warning) {
  if (warning && eval_sample_size < 10 * inst.n()) {
    *warning = "population proxy sample size " +
               std::to_string(eval_sample_size) + " is below 10x the empirical n=" +
               std::to_string(inst.n()) + "; proxy may be noisy";
  }
  return glm_empirical(glm_fresh_sample(inst, eval_sample_size, seed));
}

std::unique_ptr<Objective> pca_objective(PcaInstance inst) {
  return std::make_unique<PcaObjective>(std::move(inst));
}

double pca_global_min_value(const PcaInstance& inst) {
  double sum = 0.0;
  for (int i = 1; i < inst.dim(); ++i) sum += inst.eigvals[i] * inst.eigvals[i];
  return 0.5 * sum;
}

std::unique_ptr<Objective> mc_objective(McInstance inst) {
  return std::make_unique<McObjective>(std::move(inst));
}

std::unique_ptr<Objective> tensor_ambient(TensorInstance inst) {
  return std::make_unique<TensorAmbientObjective>(std::move(inst));
}

}  // namespace landscape
