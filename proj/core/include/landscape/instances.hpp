#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace landscape {

// Generalized linear model sample: rows x_i with ||x_i|| <= B, labels
// y_i = sigma(w_star . x_i) + eps_i, |eps_i| <= noise_bound <= 1, and the
// regularity constants the landscape statements depend on.
struct GlmInstance {
  Eigen::MatrixXd X;  // n x d, rows are the data points
  Eigen::VectorXd y;
  std::string activation = "sigmoid";
  Eigen::VectorXd w_star;
  double B = 1.0;
  double R = 1.0;
  double gamma = 0.0;           // inf of sigma' on [-BR, BR]
  double lambda_min_cov = 0.0;  // min eigenvalue of (1/n) sum x_i x_i^T
  double noise_bound = 0.0;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(X.rows()); }
  int dim() const { return static_cast<int>(X.cols()); }
  void validate() const;
};

// Symmetric PSD matrix together with its eigendecomposition (columns of
// eigvecs are orthonormal eigenvectors, eigvals descending).
struct PcaInstance {
  Eigen::MatrixXd M;
  Eigen::VectorXd eigvals;
  Eigen::MatrixXd eigvecs;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(M.rows()); }
  void validate() const;
};

// Rank-1 symmetric completion instance: unit incoherent ground truth z,
// Bernoulli(p) symmetric observation mask stored as unique pairs (i, j) with
// i <= j, and the target accuracy the sampling rate was derived from.
struct McInstance {
  Eigen::VectorXd z;
  double mu = 1.0;
  double p = 1.0;
  std::vector<std::pair<int, int>> omega;  // i <= j; (j, i) implied
  double epsilon = 0.1;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(z.size()); }
  void validate() const;
};

// Orthonormal components a_1..a_n (rows), n <= d.
struct TensorInstance {
  Eigen::MatrixXd components;  // n x d
  std::uint64_t seed = 0;

  int n_components() const { return static_cast<int>(components.rows()); }
  int dim() const { return static_cast<int>(components.cols()); }
  void validate() const;
};

// JSON layout: field names as above, matrices as row-major flat arrays with
// explicit "rows"/"cols", omega as a list of [i, j] with i <= j.
void to_json(nlohmann::json& j, const GlmInstance& inst);
void from_json(const nlohmann::json& j, GlmInstance& inst);
void to_json(nlohmann::json& j, const PcaInstance& inst);
void from_json(const nlohmann::json& j, PcaInstance& inst);
void to_json(nlohmann::json& j, const McInstance& inst);
void from_json(const nlohmann::json& j, McInstance& inst);
void to_json(nlohmann::json& j, const TensorInstance& inst);
void from_json(const nlohmann::json& j, TensorInstance& inst);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

}  // namespace landscape
