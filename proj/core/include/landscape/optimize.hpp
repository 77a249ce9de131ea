#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "landscape/objective.hpp"
#include "landscape/sphere.hpp"

namespace landscape {

struct GdConfig {
  double step_size = 0.1;
  long max_iters = 20000;
  double grad_tol = 1e-9;

  void validate() const;
};

// Saddle-escape variant: whenever the gradient norm drops to
// perturb_grad_threshold and the cooldown has elapsed, the iterate is kicked
// by a uniform vector from the ball of perturb_radius. A kick whose window of
// perturb_cooldown_iters iterations fails to decrease the objective below the
// pre-kick value is declared a failed escape: the pre-kick point is an
// approximate second-order point, and the run polishes it to grad_tol and
// stops.
struct PerturbedGdConfig {
  GdConfig base;
  double perturb_radius = 1e-3;
  double perturb_grad_threshold = 0.0;  // 0: defaults to 10 * grad_tol
  long perturb_cooldown_iters = 0;      // 0: defaults to ceil(2 / step_size)

  void validate() const;
  double threshold() const;
  long cooldown() const;
};

enum class Termination { GradTol, MaxIters };

struct OptimizerTrace {
  // Parallel arrays; thinned to every 10th iteration when dim > 50. The final
  // iterate is always recorded.
  std::vector<long> iters;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  std::vector<double> grad_norms;
  std::vector<long> perturbation_events;
  Termination termination = Termination::MaxIters;

  Eigen::VectorXd final_point;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  long total_iters = 0;
};

// x_{k+1} = x_k - step * grad f(x_k); stops at ||grad|| <= grad_tol or
// max_iters. Throws (with the iteration index) if a non-finite value shows
// up, which usually means the step size exceeds 2/L.
OptimizerTrace gradient_descent(const Objective& obj, Eigen::VectorXd x0,
                                const GdConfig& cfg);

OptimizerTrace perturbed_gradient_descent(const Objective& obj,
                                          Eigen::VectorXd x0,
                                          const PerturbedGdConfig& cfg,
                                          std::uint64_t seed);

// Riemannian gradient *ascent* of the ambient objective restricted to the
// sphere: x_{k+1} = retract(x_k, +step * grad f(x_k)); stops when the
// Riemannian gradient norm reaches grad_tol.
OptimizerTrace riemannian_ascent(const Objective& ambient, SpherePoint x0,
                                 const GdConfig& cfg);

struct DecayCheck {
  bool is_geometric = false;
  double rate = 0.0;       // fitted per-iteration error ratio, exp(slope)
  double r_squared = 0.0;  // of the log-error linear fit
};

// Least-squares fit of log(f(x_k) - f_star) against k over the prefix where
// the error is resolvable above float noise. Geometric decay means a negative
// slope with R^2 >= 0.99. Throws if fewer than 10 usable iterations exist.
DecayCheck geometric_decay_check(const OptimizerTrace& trace, double f_star);

// CSV columns: iter,value,grad_norm,perturbed_flag.
void trace_to_csv(const OptimizerTrace& trace, std::ostream& os);

}  // namespace landscape
