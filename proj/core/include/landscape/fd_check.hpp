#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "landscape/objective.hpp"

namespace landscape {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

enum class FdScheme { Central };

// Central finite differences with a fixed step; all instances in this project
// are generated at unit scale, where h = 1e-5 balances truncation against
// round-off for both first and second differences.
struct FdConfig {
  double step_h = 1e-5;
  FdScheme scheme = FdScheme::Central;
  double rel_tol = 1e-5;

  void validate() const;
};

struct DerivativeCheckReport {
  double max_rel_err_grad = 0.0;
  double max_rel_err_hess = 0.0;
  int worst_point_index = -1;
  bool passed = false;
};

// i-th entry: (f(x + h e_i) - f(x - h e_i)) / (2h). Throws if f returns a
// non-finite value at a probe point, naming the offending coordinate.
Eigen::VectorXd fd_gradient(const ScalarField& f, const Eigen::VectorXd& x,
                            const FdConfig& cfg = {});

// Central second differences; the result is exactly symmetric (entries are
// computed for i <= j and mirrored).
Eigen::MatrixXd fd_hessian(const ScalarField& f, const Eigen::VectorXd& x,
                           const FdConfig& cfg = {});

// Compares obj.gradient / obj.hessian against the finite-difference oracles
// at every point. Errors are relative to max(1, norm of the FD result), which
// keeps the check meaningful at stationary points where both sides vanish.
DerivativeCheckReport check_objective_derivatives(
    const Objective& obj, const std::vector<Eigen::VectorXd>& points,
    const FdConfig& cfg = {});

}  // namespace landscape
