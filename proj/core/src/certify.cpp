#include "landscape/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace landscape {

void ClassifierThresholds::validate() const {
  if (!(alpha > 0.0 && beta > 0.0 && hess_psd_tol > 0.0))
    throw std::invalid_argument("ClassifierThresholds: all thresholds must be > 0");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LargeGradient: return "LargeGradient";
    case Verdict::StrictSaddle: return "StrictSaddle";
    case Verdict::CandidateLocalMin: return "CandidateLocalMin";
  }
  return "?";
}

PointClassification classify_point(const Objective& obj,
                                   const Eigen::VectorXd& x,
                                   const ClassifierThresholds& thr,
                                   const std::vector<Eigen::VectorXd>* known_minima,
                                   bool on_sphere) {
  thr.validate();
  PointClassification out;
  if (on_sphere) {
    const SpherePoint sp(x);
    out.grad_norm = riemannian_grad(obj, sp).vec.norm();
    out.hess_min_eig = tangent_extreme_eigs(riemannian_hess(obj, sp), sp).lambda_min;
  } else {
    out.grad_norm = obj.gradient(x).norm();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(obj.hessian(x),
                                                      Eigen::EigenvaluesOnly);
    out.hess_min_eig = es.eigenvalues().minCoeff();
  }

  if (out.grad_norm >= thr.alpha) {
    out.verdict = Verdict::LargeGradient;
  } else if (out.hess_min_eig <= -thr.beta) {
    out.verdict = Verdict::StrictSaddle;
  } else {
    out.verdict = Verdict::CandidateLocalMin;
  }

  if (known_minima && !known_minima->empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : *known_minima) best = std::min(best, (x - m).norm());
    out.dist_to_known_min = best;
  }
  return out;
}

Condition condition_from_string(const std::string& name) {
  if (name == "weak_quasi_convex" || name == "WeakQuasiConvex")
    return Condition::WeakQuasiConvex;
  if (name == "rsi" || name == "RSI") return Condition::RSI;
  if (name == "pl" || name == "PL") return Condition::PL;
  throw std::invalid_argument("unknown condition tag: " + name);
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::WeakQuasiConvex: return "weak_quasi_convex";
    case Condition::RSI: return "rsi";
    case Condition::PL: return "pl";
  }
  return "?";
}

ConditionProbeReport probe_condition(const Objective& obj,
                                     const Eigen::VectorXd& x_star,
                                     Condition condition, double parameter,
                                     const DomainSampler& sampler,
                                     int n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("probe_condition: n_samples must be >= 1");
  const double f_star = obj.value(x_star);

  ConditionProbeReport report;
  report.condition = condition;
  report.parameter = parameter;
  report.n_samples = n_samples;
  report.worst_margin = std::numeric_limits<double>::infinity();

  for (int i = 0; i < n_samples; ++i) {
    RngStream rng = RngStream::derived(seed, {static_cast<std::uint64_t>(i)});
    const Eigen::VectorXd x = sampler(rng);
    const double gap = obj.value(x) - f_star;
    double lhs = 0.0, rhs = 0.0;
    switch (condition) {
      case Condition::WeakQuasiConvex:
        lhs = obj.gradient(x).dot(x - x_star);
        rhs = parameter * gap;
        break;
      case Condition::RSI:
        lhs = obj.gradient(x).dot(x - x_star);
        rhs = parameter * (x - x_star).squaredNorm();
        break;
      case Condition::PL:
        lhs = obj.gradient(x).squaredNorm();
        rhs = parameter * gap;
        break;
    }
    const double margin = lhs - rhs;
    if (margin < 0.0) ++report.n_violations;
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  return report;
}

PcaStationaryOracle pca_stationary_oracle(const PcaInstance& inst) {
  inst.validate();
  const int d = inst.dim();
  PcaStationaryOracle oracle;
  oracle.points.push_back({Eigen::VectorXd::Zero(d), 0.0});
  for (int i = 0; i < d; ++i) {
    const double l = inst.eigvals[i];
    if (l <= 0.0) continue;
    const Eigen::VectorXd x = std::sqrt(l) * inst.eigvecs.col(i);
    oracle.points.push_back({x, l});
    oracle.points.push_back({-x, l});
    if (i > 0 && std::abs(inst.eigvals[i - 1] - l) <= 1e-9)
      oracle.degenerate_spectrum = true;
  }
  return oracle;
}

double dist_to_pca_min_set(const PcaInstance& inst, const Eigen::VectorXd& x) {
  const double top = inst.eigvals[0];
  if (top <= 0.0) return x.norm();  // M = 0: the minimizer set is {0}
  // Top eigenspace (repeated top eigenvalues included).
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(inst.dim());
  for (int i = 0; i < inst.dim() && inst.eigvals[i] >= top - 1e-9; ++i)
    proj += inst.eigvecs.col(i).dot(x) * inst.eigvecs.col(i);
  const double bilinear = x.squaredNorm() + top - 2.0 * std::sqrt(top) * proj.norm();
  return std::sqrt(std::max(0.0, bilinear));
}

std::vector<SpherePoint> tensor_stationary_oracle(int n, int max_support) {
  if (n < 1 || max_support < 1 || max_support > n)
    throw std::invalid_argument(
        "tensor_stationary_oracle: requires 1 <= max_support <= n");

  double expected = 0.0;
  {
    double binom = 1.0;
    for (int s = 1; s <= max_support; ++s) {
      binom = binom * (n - s + 1) / s;
      expected += binom * std::pow(2.0, s);
    }
  }
  if (expected > 1e6)
    throw std::invalid_argument(
        "tensor_stationary_oracle: enumeration would exceed 1e6 points");

  std::vector<SpherePoint> points;
  points.reserve(static_cast<std::size_t>(expected));

  std::vector<int> support;
  // Enumerate supports of size s, then all 2^s sign patterns.
  std::function<void(int, int)> recurse = [&](int start, int remaining) {
    if (remaining == 0) {
      const int s = static_cast<int>(support.size());
      const double mag = 1.0 / std::sqrt(static_cast<double>(s));
      for (long mask = 0; mask < (1L << s); ++mask) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (int b = 0; b < s; ++b)
          x[support[b]] = ((mask >> b) & 1L) ? -mag : mag;
        points.push_back(SpherePoint(std::move(x)));
      }
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      support.push_back(i);
      recurse(i + 1, remaining - 1);
      support.pop_back();
    }
  };
  for (int s = 1; s <= max_support; ++s) recurse(0, s);
  return points;
}

McConcentrationResult mc_concentration_probe(const McInstance& inst,
                                             int n_trials, std::uint64_t seed) {
  inst.validate();
  const int d = inst.dim();
  if (inst.p * d * d < 10.0)
    throw std::invalid_argument(
        "mc_concentration_probe: p d^2 < 10, too few expected observations");
  if (n_trials < 1)
    throw std::invalid_argument("mc_concentration_probe: n_trials must be >= 1");

  const double cap = 2.0 * inst.mu / std::sqrt(static_cast<double>(d));

  // Extreme-incoherence test vectors: random signs at magnitude 1/sqrt(d),
  // clipped to the incoherence cap and renormalized.
  const auto sample_incoherent = [&](RngStream& rng) {
    Eigen::VectorXd u(d);
    const double mag = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) u[i] = rng.sign() * mag;
    for (int i = 0; i < d; ++i) u[i] = std::clamp(u[i], -cap, cap);
    u /= u.norm();
    return u;
  };

  // Both sums run over pairs i <= j in the same order, so a complete mask at
  // p = 1 cancels exactly (not merely to rounding).
  const auto deviation = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    double masked = 0.0;
    for (const auto& [i, j] : inst.omega) {
      const double t = u[i] * u[j] * v[i] * v[j];
      masked += (i == j) ? t : 2.0 * t;
    }
    double full = 0.0;
    for (int i = 0; i < d; ++i) {
      full += u[i] * u[i] * v[i] * v[i];
      for (int j = i + 1; j < d; ++j) full += 2.0 * (u[i] * u[j] * v[i] * v[j]);
    }
    return std::abs(masked / inst.p - full);
  };

  McConcentrationResult out;
  out.deviations.reserve(n_trials);
  for (int t = 0; t < n_trials; ++t) {
    RngStream rng = RngStream::derived(seed, {static_cast<std::uint64_t>(t)});
    const Eigen::VectorXd u = sample_incoherent(rng);
    const Eigen::VectorXd v = sample_incoherent(rng);
    out.deviations.push_back(deviation(u, v));
  }
  out.z_deviation = deviation(inst.z, inst.z);

  std::vector<double> sorted = out.deviations;
  std::sort(sorted.begin(), sorted.end());
  out.max_abs_deviation = sorted.back();
  const auto q_idx = static_cast<std::size_t>(
      std::ceil(0.99 * static_cast<double>(sorted.size()))) - 1;
  out.quantile_99 = sorted[std::min(q_idx, sorted.size() - 1)];
  return out;
}

McClaimReport mc_claim_check(const McInstance& inst, const Eigen::VectorXd& x,
                             double epsilon, double localization_constant) {
  inst.validate();
  const int d = inst.dim();
  if (x.size() != d) throw std::invalid_argument("mc_claim_check: dim mismatch");
  const double cap = 2.0 * inst.mu / std::sqrt(static_cast<double>(d));
  if (x.lpNorm<Eigen::Infinity>() >= cap)
    throw std::invalid_argument(
        "mc_claim_check: x outside the incoherence domain B");

  McClaimReport rep;
  rep.overlap_sq = std::pow(x.dot(inst.z), 2);
  rep.norm_sq = x.squaredNorm();
  rep.claim1_margin = rep.overlap_sq - (rep.norm_sq * rep.norm_sq - epsilon);
  rep.claim2_margin = rep.norm_sq - (1.0 / 3.0 - epsilon / 3.0);
  rep.dist_to_truth = std::min((x - inst.z).norm(), (x + inst.z).norm());
  rep.localization_radius = localization_constant * std::sqrt(epsilon);
  rep.claims_hold = rep.claim1_margin >= 0.0 && rep.claim2_margin >= 0.0;
  rep.localized = rep.dist_to_truth <= rep.localization_radius;
  return rep;
}

GlmLocalizationReport glm_stationary_localization(
    const GlmInstance& inst, const std::vector<Eigen::VectorXd>& stationary_points,
    std::optional<std::pair<double, double>> bound_constants, double delta) {
  GlmLocalizationReport rep;
  rep.distances.reserve(stationary_points.size());
  for (const auto& w : stationary_points)
    rep.distances.push_back((w - inst.w_star).norm());

  if (bound_constants) {
    const auto [c1, c2] = *bound_constants;
    const double n = static_cast<double>(inst.n());
    const double d = static_cast<double>(inst.dim());
    const double lambda = inst.lambda_min_cov;
    if (lambda <= 0.0)
      throw std::invalid_argument(
          "glm_stationary_localization: requires lambda_min_cov > 0 for the bound");
    rep.bound = (c1 * inst.B / (inst.gamma * inst.gamma * lambda)) *
                std::sqrt((d * (c2 + std::log(n * inst.B * inst.R)) +
                           std::log(1.0 / delta)) /
                          n);
  }
  return rep;
}

}  // namespace landscape
