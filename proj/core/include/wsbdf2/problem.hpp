#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace wsbdf2 {

/// Abstract positive-definite self-adjoint spatial operator A for
/// u' + A u = f, together with the discrete inner product it is
/// self-adjoint under. Implementations must be immutable after
/// construction so they can be shared across concurrent integrations.
class SpatialProblem {
public:
  virtual ~SpatialProblem() = default;

  virtual Eigen::VectorXd apply(const Eigen::VectorXd& v) const = 0;
  /// Solve (sigma I + mu A) w = rhs with sigma > 0, mu >= 0.
  virtual Eigen::VectorXd solve_shifted(double sigma, double mu,
                                        const Eigen::VectorXd& rhs) const = 0;
  virtual double inner(const Eigen::VectorXd& v,
                       const Eigen::VectorXd& w) const = 0;
  virtual int dof_count() const = 0;

  double norm(const Eigen::VectorXd& v) const {
    return std::sqrt(std::max(0.0, inner(v, v)));
  }
  /// ||grad v|| compatible with the inner product: sqrt((v, A v)).
  virtual double grad_norm(const Eigen::VectorXd& v) const {
    return std::sqrt(std::max(0.0, inner(v, apply(v))));
  }
};

/// Single-unknown problem u' + lambda u = f; exact reference for the
/// scheme-reduction tests and the CLI's scalar mode.
class ScalarDecayProblem final : public SpatialProblem {
public:
  explicit ScalarDecayProblem(double lambda) : lambda_(lambda) {}

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const override {
    return lambda_ * v;
  }
  Eigen::VectorXd solve_shifted(double sigma, double mu,
                                const Eigen::VectorXd& rhs) const override {
    return rhs / (sigma + mu * lambda_);
  }
  double inner(const Eigen::VectorXd& v,
               const Eigen::VectorXd& w) const override {
    return v.dot(w);
  }
  int dof_count() const override { return 1; }

  double lambda() const { return lambda_; }

private:
  double lambda_;
};

}  // namespace wsbdf2
