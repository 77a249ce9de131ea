#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landscape/instances.hpp"

namespace landscape {

// Seeded description of a random problem instance. Family-specific fields
// are ignored by the other families.
struct GeneratorSpec {
  std::string family;  // glm | pca | mc | tensor
  int d = 2;
  std::uint64_t seed = 0;

  // glm
  int n = 200;
  double B = 1.0;
  double R = 2.0;
  double noise_bound = 0.0;

  // pca
  std::vector<double> spectrum;

  // mc
  double mu = 1.0;
  double epsilon = 0.1;
  double sampling_constant = 1.0;  // c_p in p = min(1, c_p mu^4 (log d)^3 / (d eps^2))
  std::string mc_ground_truth = "signs";  // signs | gaussian (rejection-sampled)

  // tensor
  int n_components = 0;  // 0: defaults to d

  void validate() const;
};

void to_json(nlohmann::json& j, const GeneratorSpec& spec);
void from_json(const nlohmann::json& j, GeneratorSpec& spec);

// x_i uniform on the sphere of radius B, w_star uniform on the sphere of
// radius R, eps_i uniform in [-noise_bound, noise_bound]. gamma is sigma'(BR)
// (the infimum of sigma' over [-BR, BR]); lambda_min_cov is measured from the
// sample. Requires B R >= 1.
GlmInstance gen_glm(const GeneratorSpec& spec);

// M = Q diag(spectrum) Q^T for a Haar-random orthogonal Q (QR of a Gaussian
// matrix with the sign convention diag(R) > 0). Spectrum must be descending
// and non-negative.
PcaInstance gen_pca(const GeneratorSpec& spec);

// z is a uniform sign vector scaled by 1/sqrt(d) (maximal incoherence;
// mu >= 1 always admits it), or a rejection-sampled unit Gaussian when
// mc_ground_truth = "gaussian". Each unordered pair {i, j} (diagonal
// included) is observed independently with probability p.
McInstance gen_mc(const GeneratorSpec& spec);

// Orthonormal components from the QR of a d x n Gaussian matrix.
TensorInstance gen_tensor(const GeneratorSpec& spec);

// The Bernoulli rate used by gen_mc before clamping to 1.
double mc_sampling_rate(int d, double mu, double epsilon, double sampling_constant);

}  // namespace landscape
