#include "landscape/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "landscape/objectives.hpp"

namespace landscape {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void GlmInstance::validate() const {
  require(X.rows() == y.size(), "GlmInstance: X/y row mismatch");
  require(X.cols() == w_star.size(), "GlmInstance: X/w_star dim mismatch");
  require(activation == "sigmoid", "GlmInstance: unsupported activation");
  require(B > 0.0 && R > 0.0, "GlmInstance: B, R must be positive");
  require(B * R >= 1.0, "GlmInstance: requires B*R >= 1");
  require(gamma > 0.0, "GlmInstance: gamma must be positive");
  require(noise_bound >= 0.0 && noise_bound <= 1.0,
          "GlmInstance: noise_bound must lie in [0, 1]");
  require(w_star.norm() <= R * (1.0 + 1e-12), "GlmInstance: ||w_star|| > R");
  for (int i = 0; i < n(); ++i) {
    require(X.row(i).norm() <= B * (1.0 + 1e-12), "GlmInstance: ||x_i|| > B");
    const double eps = y[i] - sigmoid(w_star.dot(X.row(i)));
    require(std::abs(eps) <= noise_bound + 1e-9,
            "GlmInstance: residual exceeds noise_bound");
  }
}

void PcaInstance::validate() const {
  const int d = dim();
  require(M.cols() == d && eigvecs.rows() == d && eigvecs.cols() == d &&
              eigvals.size() == d,
          "PcaInstance: shape mismatch");
  require((M - M.transpose()).norm() <= 1e-10, "PcaInstance: M not symmetric");
  for (int i = 0; i + 1 < d; ++i)
    require(eigvals[i] >= eigvals[i + 1] - 1e-12,
            "PcaInstance: eigvals not descending");
  require(eigvals[d - 1] >= -1e-12, "PcaInstance: negative eigenvalue");
  require((eigvecs.transpose() * eigvecs - Eigen::MatrixXd::Identity(d, d))
                  .norm() <= 1e-10,
          "PcaInstance: eigvecs not orthonormal");
  const Eigen::MatrixXd rebuilt =
      eigvecs * eigvals.asDiagonal() * eigvecs.transpose();
  require((M - rebuilt).norm() <= 1e-10, "PcaInstance: M != V diag(l) V^T");
}

void McInstance::validate() const {
  const int d = dim();
  require(d >= 2, "McInstance: d must be >= 2");
  require(std::abs(z.norm() - 1.0) <= 1e-12, "McInstance: ||z|| != 1");
  require(mu >= 1.0, "McInstance: mu must be >= 1");
  require(z.lpNorm<Eigen::Infinity>() <= mu / std::sqrt(double(d)) + 1e-12,
          "McInstance: z violates incoherence bound");
  require(p > 0.0 && p <= 1.0, "McInstance: p must lie in (0, 1]");
  require(epsilon > 0.0 && epsilon < 1.0, "McInstance: epsilon must lie in (0, 1)");
  for (const auto& [i, j] : omega) {
    require(i >= 0 && j >= 0 && i < d && j < d, "McInstance: omega index out of range");
    require(i <= j, "McInstance: omega pairs must satisfy i <= j");
  }
}

void TensorInstance::validate() const {
  const int n = n_components();
  require(n >= 1 && n <= dim(), "TensorInstance: requires 1 <= n <= d");
  const Eigen::MatrixXd gram = components * components.transpose();
  require((gram - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-10,
          "TensorInstance: components not orthonormal");
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j["data"] = std::move(data);
  return j;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: data size mismatch");
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++];
  return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(data.data(),
                                           static_cast<Eigen::Index>(data.size()));
}

void to_json(nlohmann::json& j, const GlmInstance& inst) {
  j = nlohmann::json{{"family", "glm"},
                     {"X", matrix_to_json(inst.X)},
                     {"y", vector_to_json(inst.y)},
                     {"activation", inst.activation},
                     {"w_star", vector_to_json(inst.w_star)},
                     {"B", inst.B},
                     {"R", inst.R},
                     {"gamma", inst.gamma},
                     {"lambda_min_cov", inst.lambda_min_cov},
                     {"noise_bound", inst.noise_bound},
                     {"seed", inst.seed}};
}

void from_json(const nlohmann::json& j, GlmInstance& inst) {
  inst.X = matrix_from_json(j.at("X"));
  inst.y = vector_from_json(j.at("y"));
  inst.activation = j.at("activation").get<std::string>();
  inst.w_star = vector_from_json(j.at("w_star"));
  inst.B = j.at("B").get<double>();
  inst.R = j.at("R").get<double>();
  inst.gamma = j.at("gamma").get<double>();
  inst.lambda_min_cov = j.at("lambda_min_cov").get<double>();
  inst.noise_bound = j.at("noise_bound").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.validate();
}

void to_json(nlohmann::json& j, const PcaInstance& inst) {
  j = nlohmann::json{{"family", "pca"},
                     {"M", matrix_to_json(inst.M)},
                     {"eigvals", vector_to_json(inst.eigvals)},
                     {"eigvecs", matrix_to_json(inst.eigvecs)},
                     {"seed", inst.seed}};
}

void from_json(const nlohmann::json& j, PcaInstance& inst) {
  inst.M = matrix_from_json(j.at("M"));
  inst.eigvals = vector_from_json(j.at("eigvals"));
  inst.eigvecs = matrix_from_json(j.at("eigvecs"));
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.validate();
}

void to_json(nlohmann::json& j, const McInstance& inst) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : inst.omega) pairs.push_back({a, b});
  j = nlohmann::json{{"family", "mc"},
                     {"z", vector_to_json(inst.z)},
                     {"mu", inst.mu},
                     {"p", inst.p},
                     {"omega", std::move(pairs)},
                     {"epsilon", inst.epsilon},
                     {"seed", inst.seed}};
}

void from_json(const nlohmann::json& j, McInstance& inst) {
  inst.z = vector_from_json(j.at("z"));
  inst.mu = j.at("mu").get<double>();
  inst.p = j.at("p").get<double>();
  inst.omega.clear();
  for (const auto& pair : j.at("omega"))
    inst.omega.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
  inst.epsilon = j.at("epsilon").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.validate();
}

void to_json(nlohmann::json& j, const TensorInstance& inst) {
  j = nlohmann::json{{"family", "tensor"},
                     {"components", matrix_to_json(inst.components)},
                     {"seed", inst.seed}};
}

void from_json(const nlohmann::json& j, TensorInstance& inst) {
  inst.components = matrix_from_json(j.at("components"));
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.validate();
}

}  // namespace landscape
