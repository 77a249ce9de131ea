#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "landscape/instances.hpp"
#include "landscape/objective.hpp"
#include "landscape/rng.hpp"
#include "landscape/sphere.hpp"

namespace landscape {

struct ClassifierThresholds {
  double alpha = 1e-6;         // gradient-norm threshold
  double beta = 1e-6;          // negative-curvature threshold
  double hess_psd_tol = 1e-8;  // slack for approximate-PSD checks

  void validate() const;
};

enum class Verdict { LargeGradient, StrictSaddle, CandidateLocalMin };

std::string to_string(Verdict v);

// Trichotomy at a point: large gradient, strict saddle (small gradient and a
// direction of curvature <= -beta), or candidate local minimum. Closeness to
// an actual minimum is only reported when ground-truth minima are supplied.
struct PointClassification {
  double grad_norm = 0.0;
  double hess_min_eig = 0.0;
  Verdict verdict = Verdict::CandidateLocalMin;
  std::optional<double> dist_to_known_min;
};

// With on_sphere set, gradient and Hessian are the Riemannian ones and the
// minimum eigenvalue is taken over the tangent space. Maximization problems
// are classified by passing the negated objective.
PointClassification classify_point(
    const Objective& obj, const Eigen::VectorXd& x,
    const ClassifierThresholds& thr,
    const std::vector<Eigen::VectorXd>* known_minima = nullptr,
    bool on_sphere = false);

enum class Condition { WeakQuasiConvex, RSI, PL };

Condition condition_from_string(const std::string& name);
std::string to_string(Condition c);

struct ConditionProbeReport {
  Condition condition = Condition::WeakQuasiConvex;
  double parameter = 0.0;
  int n_samples = 0;
  int n_violations = 0;
  double worst_margin = 0.0;  // min over samples of LHS - RHS
};

using DomainSampler = std::function<Eigen::VectorXd(RngStream&)>;

// Checks the chosen inequality at n_samples draws from the sampler:
//   WeakQuasiConvex:  grad f(x).(x - x*) >= tau (f(x) - f(x*))
//   RSI:              grad f(x).(x - x*) >= tau ||x - x*||^2
//   PL:               ||grad f(x)||^2    >= mu  (f(x) - f(x*))
ConditionProbeReport probe_condition(const Objective& obj,
                                     const Eigen::VectorXd& x_star,
                                     Condition condition, double parameter,
                                     const DomainSampler& sampler,
                                     int n_samples, std::uint64_t seed);

struct PcaStationaryPoint {
  Eigen::VectorXd point;
  double eigenvalue;
};

struct PcaStationaryOracle {
  std::vector<PcaStationaryPoint> points;  // 0 and +-sqrt(l_i) v_i for l_i > 0
  bool degenerate_spectrum = false;        // repeated eigenvalues: stationary
                                           // points form a continuum; the
                                           // returned points are representatives
};

PcaStationaryOracle pca_stationary_oracle(const PcaInstance& inst);

// Distance from x to the set of global minimizers sqrt(l_1) * {unit vectors
// in the top eigenspace}; handles the degenerate (repeated l_1) case.
double dist_to_pca_min_set(const PcaInstance& inst, const Eigen::VectorXd& x);

// All stationary points of the sphere-restricted tensor objective in the
// standard-basis representation: sign-and-support patterns
// (+-1/sqrt(s), ..., 0) for 1 <= s <= max_support. Count is
// sum_s C(n, s) 2^s; throws if that exceeds 1e6.
std::vector<SpherePoint> tensor_stationary_oracle(int n, int max_support);

struct McConcentrationResult {
  double max_abs_deviation = 0.0;
  double quantile_99 = 0.0;
  double z_deviation = 0.0;  // |<P_Omega(z z^T), z z^T>/p - 1|
  std::vector<double> deviations;
};

// Samples incoherent unit pairs (u, v) and measures
// |<P_Omega(u u^T), v v^T>/p - <u, v>^2|. Throws when p d^2 < 10.
McConcentrationResult mc_concentration_probe(const McInstance& inst,
                                             int n_trials, std::uint64_t seed);

struct McClaimReport {
  double overlap_sq = 0.0;        // <x, z>^2
  double norm_sq = 0.0;           // ||x||^2
  double claim1_margin = 0.0;     // <x,z>^2 - (||x||^4 - eps)
  double claim2_margin = 0.0;     // ||x||^2 - (1/3 - eps/3)
  double dist_to_truth = 0.0;     // min(||x - z||, ||x + z||)
  double localization_radius = 0.0;  // C sqrt(eps)
  bool claims_hold = false;
  bool localized = false;
};

// Evaluates the approximate-stationarity claims and the final localization at
// x. The caller is responsible for x being an approximate second-order point;
// x outside the incoherence domain B is an error.
McClaimReport mc_claim_check(const McInstance& inst, const Eigen::VectorXd& x,
                             double epsilon, double localization_constant = 5.0);

struct GlmLocalizationReport {
  std::vector<double> distances;  // ||w - w_star|| per stationary point
  std::optional<double> bound;    // only when constants are supplied
};

// Distances of candidate stationary points to w_star. The theory bound
// (C1 B / (gamma^2 lambda)) sqrt((d (C2 + log(n B R)) + log(1/delta)) / n)
// is evaluated only when (C1, C2) are supplied; the constants are not pinned
// by the theory, so scaling studies are the default check.
GlmLocalizationReport glm_stationary_localization(
    const GlmInstance& inst, const std::vector<Eigen::VectorXd>& stationary_points,
    std::optional<std::pair<double, double>> bound_constants = std::nullopt,
    double delta = 0.05);

}  // namespace landscape
