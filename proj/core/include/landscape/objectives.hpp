#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "landscape/instances.hpp"
#include "landscape/objective.hpp"

namespace landscape {

// Logistic sigmoid and its first two derivatives. sigma maps into [0, 1],
// |sigma'| <= 1/4, |sigma''| <= 1/(6 sqrt 3), and sigma' is even and
// decreasing in |t|, so its infimum over [-BR, BR] is sigma'(BR).
double sigmoid(double t);
double sigmoid_d1(double t);
double sigmoid_d2(double t);

// Empirical squared risk (1/2n) sum_i (y_i - sigma(w . x_i))^2.
std::unique_ptr<Objective> glm_empirical(GlmInstance inst);

// Fresh sample from the generative model of `inst` (same w_star, B, R,
// noise_bound), with m points drawn from the given seed.
GlmInstance glm_fresh_sample(const GlmInstance& inst, int m, std::uint64_t seed);

// Monte-Carlo proxy for the population risk: the empirical risk over a frozen
// independent sample of eval_sample_size points. If eval_sample_size < 10 * n
// a warning is written to *warning (when provided).
std::unique_ptr<Objective> glm_population_proxy(const GlmInstance& inst,
                                                int eval_sample_size,
                                                std::uint64_t seed,
                                                std::string* warning = nullptr);

// g(x) = 1/2 ||M - x x^T||_F^2 with the exact derivatives
//   grad g = 2(||x||^2 x - M x),  hess g = 4 x x^T + 2 ||x||^2 I - 2 M.
std::unique_ptr<Objective> pca_objective(PcaInstance inst);

// Global minimum value of g: 1/2 sum_{i >= 2} eigval_i^2.
double pca_global_min_value(const PcaInstance& inst);

// f(x) = 1/2 sum_{(i,j) in Omega} (z_i z_j - x_i x_j)^2 over the symmetric
// mask, with the exact derivatives
//   grad f = 2 P_Omega(x x^T - z z^T) x,
//   v^T hess f v = ||P_Omega(v x^T + x v^T)||_F^2
//                  - 2 <P_Omega(z z^T - x x^T), v v^T>.
std::unique_ptr<Objective> mc_objective(McInstance inst);

// Ambient tensor objective f(x) = sum_i <a_i, x>^4 evaluated through the
// n x d component matrix; the d^4 tensor is never materialized.
//   grad = 4 sum_i <a_i,x>^3 a_i,  hess = 12 sum_i <a_i,x>^2 a_i a_i^T.
std::unique_ptr<Objective> tensor_ambient(TensorInstance inst);

}  // namespace landscape
