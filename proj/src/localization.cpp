#include "dopd/localization.hpp"

#include <cmath>
#include <stdexcept>

#include "dopd/rng.hpp"

namespace dopd {

namespace {

int total_constraint_dim_impl(const OnlineProblem& p) {
  int m = 0;
  for (int i = 0; i < p.agents(); ++i) m += p.constraint_dim(i);
  return m;
}

}  // namespace

int OnlineProblem::total_constraint_dim() const {
  return total_constraint_dim_impl(*this);
}

void OnlineProblem::constraint_affine(int, long, Eigen::MatrixXd&,
                                      Eigen::VectorXd&) const {
  throw std::logic_error("constraint_affine: problem has no affine constraints");
}

LocalizationProblem::LocalizationProblem(const Config& cfg)
    : cfg_(cfg), set_(FeasibleSet::box(2, cfg.half_width)) {
  if (cfg.n < 1) throw std::invalid_argument("LocalizationProblem: n >= 1");
  if (cfg.m < 1) throw std::invalid_argument("LocalizationProblem: m >= 1");
  if (cfg.horizon < 1)
    throw std::invalid_argument("LocalizationProblem: horizon >= 1");

  sensors_.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    auto g = rng::make_stream(cfg.seed, rng::Stream::sensor,
                              static_cast<std::uint64_t>(i), 0);
    sensors_.emplace_back(rng::uniform(g, -cfg.sensor_range, cfg.sensor_range),
                          rng::uniform(g, -cfg.sensor_range, cfg.sensor_range));
  }

  // X_0,0 = (0.8, 0.95); increments for t = 1, 2, ... give X_0,t+1.
  target_path_.reserve(cfg.horizon + 1);
  target_path_.emplace_back(0.8, 0.95);
  for (long t = 1; t <= cfg.horizon; ++t) {
    const Eigen::Vector2d& prev = target_path_.back();
    if (t == 1) {
      target_path_.push_back(prev);  // no increment before t = 1
      continue;
    }
    auto g = rng::make_stream(cfg.seed, rng::Stream::target, 0,
                              static_cast<std::uint64_t>(t - 1));
    const double q = rng::bernoulli(g, 0.5) ? 1.0 : 0.0;
    const double td = static_cast<double>(t - 1);
    Eigen::Vector2d inc(std::pow(-1.0, q) * std::sin(td / 50.0) / (10.0 * td),
                        -q * std::cos(td / 70.0) / (40.0 * td));
    target_path_.push_back(prev + inc);
  }

  // Analytic worst-case bounds over the box.
  const double R = set_.outer_radius();
  const double span = 2.0 * R;                 // max ||S - x||
  const double d_max = span * span;            // max ||S - x||^2
  const double D_max = d_max + cfg.noise_hi;   // measurement cap
  const double gap = std::max(d_max, D_max);   // max |d - D|
  const double B_norm = 2.0 * std::sqrt(static_cast<double>(2 * cfg.m));
  const double B_row_norm = 2.0 * std::sqrt(2.0);  // entries in [0, 2], p = 2
  const double b_norm = (cfg.slater_b + 1.0) * std::sqrt(static_cast<double>(cfg.m));
  constants_.F1 = 0.25 * gap * gap;
  constants_.F2 = B_norm * R + b_norm;
  constants_.G1 = gap * span;
  constants_.G2 = B_row_norm;
  constants_.L = 2.0 * d_max + gap;
  constants_.known = true;
}

const Eigen::Vector2d& LocalizationProblem::target(long t) const {
  if (t < 0 || t >= static_cast<long>(target_path_.size()))
    throw std::out_of_range("LocalizationProblem: t beyond horizon");
  return target_path_[t];
}

double LocalizationProblem::measure_distance(int i, long t) const {
  auto g = rng::make_stream(cfg_.seed, rng::Stream::noise,
                            static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(t));
  const double tau = rng::uniform(g, 0.0, cfg_.noise_hi);
  return (sensors_[i] - target(t)).squaredNorm() + tau;
}

double LocalizationProblem::loss(int i, long t, const Eigen::VectorXd& x) const {
  const double d = (sensors_[i] - Eigen::Vector2d(x)).squaredNorm();
  const double e = d - measure_distance(i, t);
  return 0.25 * e * e;
}

Eigen::VectorXd LocalizationProblem::loss_grad(int i, long t,
                                               const Eigen::VectorXd& x) const {
  const Eigen::Vector2d diff = Eigen::Vector2d(x) - sensors_[i];
  const double e = diff.squaredNorm() - measure_distance(i, t);
  return e * diff;
}

void LocalizationProblem::constraint_affine(int i, long t, Eigen::MatrixXd& A,
                                            Eigen::VectorXd& b) const {
  auto g = rng::make_stream(cfg_.seed, rng::Stream::constraint,
                            static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(t));
  A.resize(cfg_.m, 2);
  b.resize(cfg_.m);
  for (int r = 0; r < cfg_.m; ++r)
    for (int c = 0; c < 2; ++c) A(r, c) = rng::uniform(g, 0.0, 2.0);
  for (int r = 0; r < cfg_.m; ++r)
    b[r] = rng::uniform(g, cfg_.slater_b, cfg_.slater_b + 1.0);
}

Eigen::VectorXd LocalizationProblem::constraint(int i, long t,
                                                const Eigen::VectorXd& x) const {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  constraint_affine(i, t, A, b);
  return A * x - b;
}

Eigen::MatrixXd LocalizationProblem::constraint_jacobian(
    int i, long t, const Eigen::VectorXd&) const {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  constraint_affine(i, t, A, b);
  return A;
}

LocalizationProblem::SlaterPoint LocalizationProblem::slater_point() const {
  SlaterPoint sp;
  sp.x = Eigen::VectorXd::Zero(2);
  sp.margin = cfg_.slater_b;
  sp.certified = cfg_.slater_b > 0.0;
  return sp;
}

}  // namespace dopd
