#pragma once

#include <utility>

#include <Eigen/Dense>

#include "landscape/objective.hpp"

namespace landscape {

// Point on the unit sphere S^{d-1}; the constructor enforces unit norm.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd coords);

  // Normalizes v onto the sphere; throws on the zero vector.
  static SpherePoint normalized(const Eigen::VectorXd& v);

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Eigen::VectorXd coords_;
};

// Tangent vector at a sphere point: <at, vec> = 0.
struct TangentVector {
  SpherePoint at;
  Eigen::VectorXd vec;

  TangentVector(SpherePoint base, Eigen::VectorXd v);
};

// P_x v = v - <x, v> x.
TangentVector project_tangent(const SpherePoint& x, const Eigen::VectorXd& v);

// grad f(x) = P_x grad fbar(x) for the ambient extension fbar.
TangentVector riemannian_grad(const Objective& ambient, const SpherePoint& x);

// Hess f(x) = P_x hess fbar(x) P_x - (x . grad fbar(x)) P_x. The result maps
// the tangent space to itself and annihilates x.
Eigen::MatrixXd riemannian_hess(const Objective& ambient, const SpherePoint& x);

// Metric-projection retraction: (x + step) / ||x + step||.
SpherePoint retract(const SpherePoint& x, const Eigen::VectorXd& step);

struct TangentEigs {
  double lambda_min;
  double lambda_max;
  Eigen::VectorXd min_direction;  // unit tangent vectors achieving the extremes
  Eigen::VectorXd max_direction;
};

// Extreme eigenvalues of H restricted to the tangent space at x. H must be a
// tangent operator (H x ~ 0); the x-direction is deflated by shifting it with
// c x x^T, c > ||H||, and reading the remaining spectrum.
TangentEigs tangent_extreme_eigs(const Eigen::MatrixXd& h, const SpherePoint& x);

}  // namespace landscape
