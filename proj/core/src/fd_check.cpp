#include "landscape/fd_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace landscape {

namespace {

double checked_eval(const ScalarField& f, const Eigen::VectorXd& x, int coord,
                    const char* who) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string(who) +
                             ": non-finite value at probe for coordinate " +
                             std::to_string(coord));
  }
  return v;
}

}  // namespace

void FdConfig::validate() const {
  if (!(step_h > 0.0)) throw std::invalid_argument("FdConfig: step_h must be > 0");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("FdConfig: rel_tol must be > 0");
}

Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& x,
                            const FdConfig& cfg) {
  cfg.validate();
  const int d = static_cast<int>(x.size());
  const double h = cfg.step_h;
  Eigen::VectorXd g(d);
  Eigen::VectorXd probe = x;
  for (int i = 0; i < d; ++i) {
    probe[i] = x[i] + h;
    const double fp = checked_eval(f, probe, i, "fd_gradient");
    probe[i] = x[i] - h;
    const double fm = checked_eval(f, probe, i, "fd_gradient");
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const ScalarField& f, const Eigen::VectorXd& x,
                           const FdConfig& cfg) {
  cfg.validate();
  const int d = static_cast<int>(x.size());
  const double h = cfg.step_h;
  Eigen::MatrixXd hess(d, d);
  Eigen::VectorXd probe = x;

  const double f0 = checked_eval(f, probe, -1, "fd_hessian");
  for (int i = 0; i < d; ++i) {
    probe[i] = x[i] + h;
    const double fp = checked_eval(f, probe, i, "fd_hessian");
    probe[i] = x[i] - h;
    const double fm = checked_eval(f, probe, i, "fd_hessian");
    probe[i] = x[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      probe[i] = x[i] + h;
      probe[j] = x[j] + h;
      const double fpp = checked_eval(f, probe, j, "fd_hessian");
      probe[j] = x[j] - h;
      const double fpm = checked_eval(f, probe, j, "fd_hessian");
      probe[i] = x[i] - h;
      probe[j] = x[j] + h;
      const double fmp = checked_eval(f, probe, j, "fd_hessian");
      probe[j] = x[j] - h;
      const double fmm = checked_eval(f, probe, j, "fd_hessian");
      probe[i] = x[i];
      probe[j] = x[j];
      const double mixed = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return hess;
}

DerivativeCheckReport check_objective_derivatives(
    const Objective& obj, const std::vector<Eigen::VectorXd>& points,
    const FdConfig& cfg) {
  cfg.validate();
  if (points.empty())
    throw std::invalid_argument("check_objective_derivatives: empty point list");

  const ScalarField f = [&obj](const Eigen::VectorXd& x) { return obj.value(x); };

  DerivativeCheckReport report;
  for (int k = 0; k < static_cast<int>(points.size()); ++k) {
    const Eigen::VectorXd& x = points[k];
    const Eigen::VectorXd g_fd = fd_gradient(f, x, cfg);
    const Eigen::MatrixXd h_fd = fd_hessian(f, x, cfg);
    const double grad_err =
        (obj.gradient(x) - g_fd).norm() / std::max(1.0, g_fd.norm());
    const double hess_err =
        (obj.hessian(x) - h_fd).norm() / std::max(1.0, h_fd.norm());
    const double worst_here = std::max(grad_err, hess_err);
    const double worst_so_far =
        std::max(report.max_rel_err_grad, report.max_rel_err_hess);
    if (report.worst_point_index < 0 || worst_here > worst_so_far)
      report.worst_point_index = k;
    report.max_rel_err_grad = std::max(report.max_rel_err_grad, grad_err);
    report.max_rel_err_hess = std::max(report.max_rel_err_hess, hess_err);
  }
  report.passed = report.max_rel_err_grad <= cfg.rel_tol &&
                  report.max_rel_err_hess <= cfg.rel_tol;
  return report;
}

}  // namespace landscape
