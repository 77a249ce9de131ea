#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace landscape {

// A twice-differentiable scalar field on R^d with exact analytic derivatives.
// Every problem family implements this interface; gradients and Hessians are
// validated against the finite-difference oracle before being trusted.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual int dim() const = 0;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  // Dense symmetric d x d matrix.
  virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const = 0;
};

// f(x) = 1/2 x^T A x + b^T x, A symmetric. Convex for A >= 0; the canonical
// instance for exactness tests (central differences are exact on quadratics)
// and for geometric-decay experiments.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Eigen::MatrixXd a, Eigen::VectorXd b)
      : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || a_.rows() != b_.size())
      throw std::invalid_argument("QuadraticObjective: shape mismatch");
  }
  explicit QuadraticObjective(Eigen::MatrixXd a)
      : QuadraticObjective(std::move(a), Eigen::VectorXd::Zero(a.rows())) {}

  int dim() const override { return static_cast<int>(b_.size()); }
  double value(const Eigen::VectorXd& x) const override {
    return 0.5 * x.dot(a_ * x) + b_.dot(x);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return a_ * x + b_;
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd&) const override { return a_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
};

// Adapts plain callables to the Objective interface. Used by tests and by
// small one-off objectives; gradient/hessian throw if not supplied.
class FunctionObjective final : public Objective {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  using HessFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

  FunctionObjective(int dim, ValueFn value, GradFn grad = nullptr,
                    HessFn hess = nullptr)
      : dim_(dim),
        value_(std::move(value)),
        grad_(std::move(grad)),
        hess_(std::move(hess)) {}

  int dim() const override { return dim_; }
  double value(const Eigen::VectorXd& x) const override { return value_(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    if (!grad_) throw std::logic_error("FunctionObjective: no gradient");
    return grad_(x);
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    if (!hess_) throw std::logic_error("FunctionObjective: no hessian");
    return hess_(x);
  }

 private:
  int dim_;
  ValueFn value_;
  GradFn grad_;
  HessFn hess_;
};

// -f, for classifying maximizers with minimizer machinery.
class NegatedObjective final : public Objective {
 public:
  explicit NegatedObjective(const Objective& inner) : inner_(&inner) {}

  int dim() const override { return inner_->dim(); }
  double value(const Eigen::VectorXd& x) const override {
    return -inner_->value(x);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return -inner_->gradient(x);
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    return -inner_->hessian(x);
  }

 private:
  const Objective* inner_;  // non-owning
};

}  // namespace landscape
