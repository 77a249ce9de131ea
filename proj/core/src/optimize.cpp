#include "landscape/optimize.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "landscape/rng.hpp"

namespace landscape {

namespace {

constexpr long kThinningDimLimit = 50;
constexpr long kThinningStride = 10;

void check_finite(double v, const Eigen::VectorXd& g, long iter) {
  if (!std::isfinite(v) || !g.allFinite())
    throw std::runtime_error(
        "optimizer: non-finite objective or gradient at iteration " +
        std::to_string(iter) + " (step size likely too large)");
}

struct TraceRecorder {
  OptimizerTrace trace;
  long stride;

  explicit TraceRecorder(int dim)
      : stride(dim <= kThinningDimLimit ? 1 : kThinningStride) {}

  void record(long iter, const Eigen::VectorXd& x, double v, double gn) {
    if (iter % stride == 0) force_record(iter, x, v, gn);
  }

  void force_record(long iter, const Eigen::VectorXd& x, double v, double gn) {
    if (!trace.iters.empty() && trace.iters.back() == iter) return;
    trace.iters.push_back(iter);
    trace.points.push_back(x);
    trace.values.push_back(v);
    trace.grad_norms.push_back(gn);
  }

  OptimizerTrace finish(Termination term, long iter, const Eigen::VectorXd& x,
                        double v, double gn) {
    force_record(iter, x, v, gn);
    trace.termination = term;
    trace.final_point = x;
    trace.final_value = v;
    trace.final_grad_norm = gn;
    trace.total_iters = iter;
    return std::move(trace);
  }
};

}  // namespace

void GdConfig::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("GdConfig: step_size must be > 0");
  if (max_iters < 1) throw std::invalid_argument("GdConfig: max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("GdConfig: grad_tol must be > 0");
}

void PerturbedGdConfig::validate() const {
  base.validate();
  if (!(perturb_radius > 0.0))
    throw std::invalid_argument("PerturbedGdConfig: perturb_radius must be > 0");
  if (perturb_grad_threshold < 0.0)
    throw std::invalid_argument("PerturbedGdConfig: negative threshold");
  if (perturb_cooldown_iters < 0)
    throw std::invalid_argument("PerturbedGdConfig: negative cooldown");
  if (cooldown() < 1)
    throw std::invalid_argument("PerturbedGdConfig: cooldown must be >= 1");
}

double PerturbedGdConfig::threshold() const {
  return perturb_grad_threshold > 0.0 ? perturb_grad_threshold
                                      : 10.0 * base.grad_tol;
}

long PerturbedGdConfig::cooldown() const {
  if (perturb_cooldown_iters > 0) return perturb_cooldown_iters;
  return static_cast<long>(std::ceil(2.0 / base.step_size));
}

OptimizerTrace gradient_descent(const Objective& obj, Eigen::VectorXd x0,
                                const GdConfig& cfg) {
  cfg.validate();
  TraceRecorder rec(obj.dim());
  Eigen::VectorXd x = std::move(x0);
  for (long k = 0;; ++k) {
    const double v = obj.value(x);
    const Eigen::VectorXd g = obj.gradient(x);
    check_finite(v, g, k);
    const double gn = g.norm();
    if (gn <= cfg.grad_tol)
      return rec.finish(Termination::GradTol, k, x, v, gn);
    if (k >= cfg.max_iters)
      return rec.finish(Termination::MaxIters, k, x, v, gn);
    rec.record(k, x, v, gn);
    x -= cfg.step_size * g;
  }
}

OptimizerTrace perturbed_gradient_descent(const Objective& obj,
                                          Eigen::VectorXd x0,
                                          const PerturbedGdConfig& cfg,
                                          std::uint64_t seed) {
  cfg.validate();
  const GdConfig& gd = cfg.base;
  const double threshold = cfg.threshold();
  const long cooldown = cfg.cooldown();

  RngStream rng(seed);
  TraceRecorder rec(obj.dim());

  struct Anchor {
    Eigen::VectorXd x;
    double value;
    long kick_iter;
  };
  std::optional<Anchor> anchor;
  Eigen::VectorXd x = std::move(x0);
  long last_kick = -cooldown;
  bool polishing = false;

  for (long k = 0;; ++k) {
    const double v = obj.value(x);
    const Eigen::VectorXd g = obj.gradient(x);
    check_finite(v, g, k);
    const double gn = g.norm();
    rec.record(k, x, v, gn);

    if (polishing) {
      if (gn <= gd.grad_tol) return rec.finish(Termination::GradTol, k, x, v, gn);
      if (k >= gd.max_iters) return rec.finish(Termination::MaxIters, k, x, v, gn);
      x -= gd.step_size * g;
      continue;
    }

    if (anchor && k == anchor->kick_iter + cooldown) {
      const double escape_margin = 1e-10 * std::max(1.0, std::abs(anchor->value));
      if (v >= anchor->value - escape_margin) {
        // The kick failed to find descent: the anchor is an approximate
        // second-order point. Return there and polish to grad_tol.
        x = anchor->x;
        polishing = true;
        continue;
      }
      anchor.reset();  // escaped a saddle; keep descending
    }

    if (k >= gd.max_iters) return rec.finish(Termination::MaxIters, k, x, v, gn);

    if (gn <= threshold && k - last_kick >= cooldown) {
      anchor = Anchor{x, v, k};
      x += rng.uniform_in_ball(obj.dim(), cfg.perturb_radius);
      rec.trace.perturbation_events.push_back(k);
      last_kick = k;
      continue;
    }

    x -= gd.step_size * g;
  }
}

OptimizerTrace riemannian_ascent(const Objective& ambient, SpherePoint x0,
                                 const GdConfig& cfg) {
  cfg.validate();
  TraceRecorder rec(ambient.dim());
  SpherePoint x = std::move(x0);
  for (long k = 0;; ++k) {
    const double v = ambient.value(x.coords());
    const Eigen::VectorXd rg = riemannian_grad(ambient, x).vec;
    check_finite(v, rg, k);
    const double gn = rg.norm();
    if (gn <= cfg.grad_tol)
      return rec.finish(Termination::GradTol, k, x.coords(), v, gn);
    if (k >= cfg.max_iters)
      return rec.finish(Termination::MaxIters, k, x.coords(), v, gn);
    rec.record(k, x.coords(), v, gn);
    x = retract(x, cfg.step_size * rg);
  }
}

DecayCheck geometric_decay_check(const OptimizerTrace& trace, double f_star) {
  if (trace.values.empty())
    throw std::invalid_argument("geometric_decay_check: empty trace");

  // Usable prefix: errors resolvable above the float-noise floor relative to
  // the initial error.
  const double e0 = trace.values.front() - f_star;
  if (!(e0 > 0.0))
    throw std::invalid_argument(
        "geometric_decay_check: trace starts at or below f_star");
  const double floor = 1e-13 * e0;

  std::vector<double> ks, logs;
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    const double err = trace.values[i] - f_star;
    if (!(err > floor)) break;
    ks.push_back(static_cast<double>(trace.iters[i]));
    logs.push_back(std::log(err));
  }
  if (ks.size() < 10)
    throw std::invalid_argument(
        "geometric_decay_check: fewer than 10 usable iterations");

  const double n = static_cast<double>(ks.size());
  double mean_k = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mean_k += ks[i];
    mean_y += logs[i];
  }
  mean_k /= n;
  mean_y /= n;
  double skk = 0.0, sky = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double dk = ks[i] - mean_k;
    const double dy = logs[i] - mean_y;
    skk += dk * dk;
    sky += dk * dy;
    syy += dy * dy;
  }
  if (skk == 0.0)
    throw std::invalid_argument("geometric_decay_check: degenerate iteration axis");

  const double slope = sky / skk;
  const double r_squared = syy > 0.0 ? (sky * sky) / (skk * syy) : 0.0;

  DecayCheck out;
  out.rate = std::exp(slope);
  out.r_squared = r_squared;
  out.is_geometric = slope < 0.0 && r_squared >= 0.99;
  return out;
}

void trace_to_csv(const OptimizerTrace& trace, std::ostream& os) {
  os << "iter,value,grad_norm,perturbed_flag\n";
  char buf[64];
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < trace.iters.size(); ++i) {
    while (next_event < trace.perturbation_events.size() &&
           trace.perturbation_events[next_event] < trace.iters[i])
      ++next_event;
    const bool perturbed = next_event < trace.perturbation_events.size() &&
                           trace.perturbation_events[next_event] == trace.iters[i];
    os << trace.iters[i] << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", trace.values[i]);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", trace.grad_norms[i]);
    os << buf << ',' << (perturbed ? 1 : 0) << '\n';
  }
}

}  // namespace landscape
