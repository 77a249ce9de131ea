#include "landscape/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace landscape {

SpherePoint::SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0)
    throw std::invalid_argument("SpherePoint: empty vector");
  if (std::abs(coords_.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("SpherePoint: coords not unit norm");
}

SpherePoint SpherePoint::normalized(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (norm == 0.0)
    throw std::invalid_argument("SpherePoint::normalized: zero vector");
  return SpherePoint(v / norm);
}

TangentVector::TangentVector(SpherePoint base, Eigen::VectorXd v)
    : at(std::move(base)), vec(std::move(v)) {
  if (at.dim() != vec.size())
    throw std::invalid_argument("TangentVector: dimension mismatch");
  if (std::abs(at.coords().dot(vec)) > 1e-10 * std::max(1.0, vec.norm()))
    throw std::invalid_argument("TangentVector: not orthogonal to base point");
}

TangentVector project_tangent(const SpherePoint& x, const Eigen::VectorXd& v) {
  const Eigen::VectorXd projected = v - x.coords().dot(v) * x.coords();
  return TangentVector(x, projected);
}

TangentVector riemannian_grad(const Objective& ambient, const SpherePoint& x) {
  return project_tangent(x, ambient.gradient(x.coords()));
}

Eigen::MatrixXd riemannian_hess(const Objective& ambient, const SpherePoint& x) {
  const int d = x.dim();
  const Eigen::VectorXd& xc = x.coords();
  const Eigen::VectorXd ambient_grad = ambient.gradient(xc);
  const Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(d, d) - xc * xc.transpose();
  Eigen::MatrixXd hess =
      proj * ambient.hessian(xc) * proj - xc.dot(ambient_grad) * proj;
  // Symmetrize away the last bits of rounding so downstream eigensolves see
  // an exactly symmetric operator.
  return 0.5 * (hess + hess.transpose());
}

SpherePoint retract(const SpherePoint& x, const Eigen::VectorXd& step) {
  const Eigen::VectorXd moved = x.coords() + step;
  const double norm = moved.norm();
  if (norm == 0.0)
    throw std::invalid_argument("retract: x + step is the zero vector");
  return SpherePoint(moved / norm);
}

TangentEigs tangent_extreme_eigs(const Eigen::MatrixXd& h, const SpherePoint& x) {
  const int d = x.dim();
  if (h.rows() != d || h.cols() != d)
    throw std::invalid_argument("tangent_extreme_eigs: shape mismatch");
  const Eigen::VectorXd& xc = x.coords();
  if ((h * xc).norm() > 1e-6)
    throw std::invalid_argument(
        "tangent_extreme_eigs: H does not annihilate x (not a tangent operator)");
  if (d < 2)
    throw std::invalid_argument("tangent_extreme_eigs: needs d >= 2");

  // Shift the x-eigenvalue (0) up past the rest of the spectrum; the first
  // d-1 eigenvalues of the shifted operator are the tangent spectrum.
  const double shift = 2.0 * h.norm() + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      h + shift * xc * xc.transpose());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tangent_extreme_eigs: eigensolver failed");

  TangentEigs out{es.eigenvalues()[0], es.eigenvalues()[d - 2],
                  es.eigenvectors().col(0), es.eigenvectors().col(d - 2)};
  return out;
}

}  // namespace landscape
