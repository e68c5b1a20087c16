#pragma once

#include <Eigen/Dense>

#include "dopd/feasible_set.hpp"

namespace dopd {

// Online problem: per-round private losses and constraints, value oracles
// for the algorithms and exact gradients for metrology.
class OnlineProblem {
 public:
  virtual ~OnlineProblem() = default;

  virtual int dim() const = 0;
  virtual int agents() const = 0;
  virtual int constraint_dim(int i) const = 0;
  int total_constraint_dim() const;
  virtual const FeasibleSet& set() const = 0;

  // Conservative analytic bounds used for schedule validation and invariant
  // checks; known == false downgrades those checks to warnings.
  struct Constants {
    double F1 = 0.0;  // |f|
    double F2 = 0.0;  // ||g||
    double G1 = 0.0;  // ||grad f||
    double G2 = 0.0;  // ||grad g||
    double L = 0.0;   // grad f Lipschitz constant
    bool known = false;
  };
  virtual Constants constants() const { return {}; }

  // Value oracles (bandit discipline).
  virtual double loss(int i, long t, const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd constraint(int i, long t,
                                     const Eigen::VectorXd& x) const = 0;

  // Exact oracles, metrology and the full-information baseline only.
  virtual Eigen::VectorXd loss_grad(int i, long t,
                                    const Eigen::VectorXd& x) const = 0;
  // m_i x p Jacobian (subgradient rows) of the constraint map.
  virtual Eigen::MatrixXd constraint_jacobian(int i, long t,
                                              const Eigen::VectorXd& x) const = 0;

  // Affine constraint data g_i,t(x) = A x - b, when available; required by
  // the regret comparator.
  virtual bool has_affine_constraints() const { return false; }
  virtual void constraint_affine(int i, long t, Eigen::MatrixXd& A,
                                 Eigen::VectorXd& b) const;
};

// Capability handle exposing only what a bandit learner may see.
class ValueOracle {
 public:
  explicit ValueOracle(const OnlineProblem& problem) : problem_(&problem) {}

  int dim() const { return problem_->dim(); }
  int agents() const { return problem_->agents(); }
  int constraint_dim(int i) const { return problem_->constraint_dim(i); }
  const FeasibleSet& set() const { return problem_->set(); }
  double loss(int i, long t, const Eigen::VectorXd& x) const {
    return problem_->loss(i, t, x);
  }
  Eigen::VectorXd constraint(int i, long t, const Eigen::VectorXd& x) const {
    return problem_->constraint(i, t, x);
  }

 private:
  const OnlineProblem* problem_;
};

}  // namespace dopd
