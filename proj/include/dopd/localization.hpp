#pragma once

#include <cstdint>
#include <vector>

#include "dopd/problem.hpp"

namespace dopd {

// Cooperative target tracking benchmark: n sensors share a moving target,
// each holding the noisy squared-distance loss
//   f_i,t(x) = 1/4 * | ||S_i - x||^2 - D_i,t |^2
// and the time-varying affine constraints B_i,t x - b_i,t <= 0 whose offsets
// keep the origin strictly feasible (Slater margin b).
class LocalizationProblem final : public OnlineProblem {
 public:
  struct Config {
    int n = 100;
    int m = 2;                  // constraints per agent
    double slater_b = 0.01;     // b; entries of b_i,t ~ U[b, b+1]
    double half_width = 5.0;    // decision set [-a, a]^2
    double noise_hi = 0.001;    // tau_i,t ~ U[0, noise_hi]
    double sensor_range = 5.0;  // sensor coordinates ~ U[-range, range]
    long horizon = 2000;        // rounds for which the target path is built
    std::uint64_t seed = 0;
  };

  explicit LocalizationProblem(const Config& cfg);

  int dim() const override { return 2; }
  int agents() const override { return cfg_.n; }
  int constraint_dim(int) const override { return cfg_.m; }
  const FeasibleSet& set() const override { return set_; }
  Constants constants() const override { return constants_; }

  double loss(int i, long t, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd constraint(int i, long t,
                             const Eigen::VectorXd& x) const override;
  Eigen::VectorXd loss_grad(int i, long t,
                            const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd constraint_jacobian(int i, long t,
                                      const Eigen::VectorXd& x) const override;
  bool has_affine_constraints() const override { return true; }
  void constraint_affine(int i, long t, Eigen::MatrixXd& A,
                         Eigen::VectorXd& b) const override;

  // Certified strictly feasible point (the origin) and its margin.
  struct SlaterPoint {
    Eigen::VectorXd x;
    double margin;
    bool certified;
  };
  SlaterPoint slater_point() const;

  const Eigen::Vector2d& sensor(int i) const { return sensors_[i]; }
  // Target position X_0,t for t in [0, horizon].
  const Eigen::Vector2d& target(long t) const;
  // Noisy squared-distance measurement D_i,t >= 0.
  double measure_distance(int i, long t) const;

 private:
  Config cfg_;
  FeasibleSet set_;
  Constants constants_;
  std::vector<Eigen::Vector2d> sensors_;
  std::vector<Eigen::Vector2d> target_path_;
};

}  // namespace dopd
