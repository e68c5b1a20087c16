#include "dopd/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace dopd {

namespace {

Eigen::VectorXd global_loss_grad(const OnlineProblem& problem, long t,
                                 const Eigen::VectorXd& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(problem.dim());
  for (int j = 0; j < problem.agents(); ++j) g += problem.loss_grad(j, t, x);
  return g / static_cast<double>(problem.agents());
}

Eigen::VectorXd stacked_constraint(const OnlineProblem& problem, long t,
                                   const Eigen::VectorXd& x) {
  Eigen::VectorXd g(problem.total_constraint_dim());
  int off = 0;
  for (int j = 0; j < problem.agents(); ++j) {
    g.segment(off, problem.constraint_dim(j)) = problem.constraint(j, t, x);
    off += problem.constraint_dim(j);
  }
  return g;
}

long rounds_covered(const DecisionLog& log, long T) {
  // Rounds run 1 .. horizon-1; metrics over [1, min(T, last)].
  long covered = 0;
  for (const auto& r : log.rounds) {
    if (r.t > T) break;
    ++covered;
  }
  return covered;
}

BoxBounds box_of(const OnlineProblem& problem) {
  const FeasibleSet& set = problem.set();
  if (set.shape != FeasibleSet::Shape::box)
    throw std::invalid_argument("metrics: comparator requires a box set");
  BoxBounds box;
  box.lo = Eigen::VectorXd::Constant(set.p, -set.extent);
  box.hi = Eigen::VectorXd::Constant(set.p, set.extent);
  return box;
}

}  // namespace

double net_regret(const DecisionLog& log, const OnlineProblem& problem, long T) {
  const long covered = rounds_covered(log, T);
  const int n = log.n;
  const BoxBounds box = box_of(problem);

  std::vector<LpRow> rows;
  if (problem.has_affine_constraints()) {
    for (long k = 0; k < covered; ++k) {
      const long t = log.rounds[k].t;
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd A;
        Eigen::VectorXd b;
        problem.constraint_affine(j, t, A, b);
        for (int r = 0; r < A.rows(); ++r)
          rows.push_back({A.row(r).transpose(), b[r]});
      }
    }
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double linear = 0.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(log.p);
    for (long k = 0; k < covered; ++k) {
      const auto& round = log.rounds[k];
      const Eigen::VectorXd g = global_loss_grad(problem, round.t, round.x[i]);
      linear += g.dot(round.x[i]);
      c += g;
    }
    const LpResult lp = solve_lp(c, box, rows);
    if (lp.status != LpResult::Status::optimal)
      throw std::runtime_error("net_regret: comparator set infeasible");
    total += linear - lp.value;
  }
  return total / static_cast<double>(n);
}

double net_ccv(const DecisionLog& log, const OnlineProblem& problem, long T) {
  const long covered = rounds_covered(log, T);
  double total = 0.0;
  for (long k = 0; k < covered; ++k) {
    const auto& round = log.rounds[k];
    for (int i = 0; i < log.n; ++i)
      total += stacked_constraint(problem, round.t, round.x[i])
                   .cwiseMax(0.0)
                   .norm();
  }
  return total / static_cast<double>(log.n);
}

double consensus_error(const DecisionLog& log, long t) {
  for (const auto& round : log.rounds) {
    if (round.t != t) continue;
    double total = 0.0;
    for (int i = 0; i < log.n; ++i)
      for (int j = 0; j < log.n; ++j)
        total += (round.x[i] - round.x[j]).norm();
    return total / static_cast<double>(log.n);
  }
  throw std::out_of_range("consensus_error: round not in log");
}

long bits_total(const DecisionLog& log, long t) {
  long total = 0;
  for (const auto& round : log.rounds) {
    if (round.t > t) break;
    total += round.bits;
  }
  return total;
}

double loglog_slope(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [t, v] : series) {
    if (t <= 0.0 || v <= 0.0)
      throw std::domain_error("loglog_slope: nonpositive entry");
    const double lx = std::log(t);
    const double ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(series.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

MetricsAccumulator::MetricsAccumulator(const OnlineProblem& problem)
    : problem_(&problem), n_(problem.agents()), p_(problem.dim()) {
  linear_term_.assign(n_, 0.0);
  grad_accum_.assign(n_, Eigen::VectorXd::Zero(p_));
  ccv_.assign(n_, 0.0);
  violation_accum_.assign(n_, Eigen::VectorXd::Zero(problem.total_constraint_dim()));
  if (p_ == 2) {
    const BoxBounds box = box_of(problem);
    comparator_ = std::make_unique<ConvexPolygon2D>(box.lo[0], box.hi[0],
                                                    box.lo[1], box.hi[1]);
  }
}

void MetricsAccumulator::absorb(const RoundLog& round) {
  t_ = round.t;
  bits_ += round.bits;

  for (int i = 0; i < n_; ++i) {
    const Eigen::VectorXd g = global_loss_grad(*problem_, round.t, round.x[i]);
    linear_term_[i] += g.dot(round.x[i]);
    grad_accum_[i] += g;
    const Eigen::VectorXd stacked =
        stacked_constraint(*problem_, round.t, round.x[i]);
    ccv_[i] += stacked.cwiseMax(0.0).norm();
    violation_accum_[i] += stacked;
  }

  double consensus = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      consensus += (round.x[i] - round.x[j]).norm();
  consensus_last_ = consensus / static_cast<double>(n_);

  if (comparator_ && problem_->has_affine_constraints()) {
    for (int j = 0; j < n_; ++j) {
      Eigen::MatrixXd A;
      Eigen::VectorXd b;
      problem_->constraint_affine(j, round.t, A, b);
      for (int r = 0; r < A.rows(); ++r)
        comparator_->clip(Eigen::Vector2d(A.row(r).transpose()), b[r]);
    }
  }
}

MetricsAccumulator::Snapshot MetricsAccumulator::snapshot() const {
  Snapshot s;
  s.t = t_;
  s.bits = bits_;
  s.consensus = consensus_last_;
  for (int i = 0; i < n_; ++i) {
    s.ccv += ccv_[i];
    s.cv += violation_accum_[i].cwiseMax(0.0).norm();
  }
  s.ccv /= static_cast<double>(n_);
  s.cv /= static_cast<double>(n_);

  if (comparator_) {
    if (comparator_->empty()) {
      s.comparator_feasible = false;
    } else {
      for (int i = 0; i < n_; ++i)
        s.regret += linear_term_[i] -
                    comparator_->min_objective(Eigen::Vector2d(grad_accum_[i]));
      s.regret /= static_cast<double>(n_);
    }
  }
  return s;
}

}  // namespace dopd
