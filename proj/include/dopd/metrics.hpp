#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "dopd/engine.hpp"
#include "dopd/lp.hpp"
#include "dopd/problem.hpp"

namespace dopd {

// Network regret: average over agents of the linearized loss against the best
// fixed comparator in the time-varying feasible set, the inner minimum solved
// by solve_lp per agent.
double net_regret(const DecisionLog& log, const OnlineProblem& problem, long T);

// Average over agents of the summed positive-part norm of the stacked global
// constraints.
double net_ccv(const DecisionLog& log, const OnlineProblem& problem, long T);

// (1/n) sum over ordered pairs ||x_i - x_j|| at round t.
double consensus_error(const DecisionLog& log, long t);

// Bits transmitted across the network up to and including round t.
long bits_total(const DecisionLog& log, long t);

// Least-squares slope of log(value) against log(t); all entries must be
// positive.
double loglog_slope(const std::vector<std::pair<double, double>>& series);

// Streaming metric state for long runs: absorbs rounds in order and can be
// snapshotted at any prefix. The regret comparator set is maintained
// incrementally as a clipped polygon (decision dimension 2 only).
class MetricsAccumulator {
 public:
  MetricsAccumulator(const OnlineProblem& problem);

  void absorb(const RoundLog& round);

  struct Snapshot {
    long t = 0;
    double regret = 0.0;
    double ccv = 0.0;
    double cv = 0.0;  // positive part applied after summation
    double consensus = 0.0;
    long bits = 0;
    bool comparator_feasible = true;
  };
  Snapshot snapshot() const;

 private:
  const OnlineProblem* problem_;
  int n_, p_;
  long t_ = 0;
  long bits_ = 0;
  double consensus_last_ = 0.0;
  std::vector<double> linear_term_;          // sum_t <grad f_t(x_i), x_i>
  std::vector<Eigen::VectorXd> grad_accum_;  // c_i
  std::vector<double> ccv_;
  std::vector<Eigen::VectorXd> violation_accum_;
  std::unique_ptr<ConvexPolygon2D> comparator_;
};

}  // namespace dopd
