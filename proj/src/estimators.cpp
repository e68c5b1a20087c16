#include "dopd/estimators.hpp"

#include <stdexcept>

#include "dopd/rng.hpp"

namespace dopd {

namespace {

void check_delta(double delta) {
  if (delta <= 0.0)
    throw std::invalid_argument("estimator: delta must be positive");
}

}  // namespace

Eigen::VectorXd sample_sphere(int p, std::mt19937_64& rng) {
  if (p < 1) throw std::invalid_argument("sample_sphere: p must be >= 1");
  Eigen::VectorXd u(p);
  for (;;) {
    for (int k = 0; k < p; ++k) u[k] = rng::normal(rng);
    const double norm = u.norm();
    if (norm > 0.0) return u / norm;
  }
}

Eigen::VectorXd one_point_loss_grad(double f_perturbed,
                                    const Eigen::VectorXd& u, double delta) {
  check_delta(delta);
  const double p = static_cast<double>(u.size());
  return (p / delta) * f_perturbed * u;
}

Eigen::MatrixXd one_point_constraint_grad(const Eigen::VectorXd& g_perturbed,
                                          const Eigen::VectorXd& u,
                                          double delta) {
  check_delta(delta);
  const double p = static_cast<double>(u.size());
  return (p / delta) * u * g_perturbed.transpose();
}

Eigen::VectorXd two_point_loss_grad(double f_perturbed, double f_center,
                                    const Eigen::VectorXd& u, double delta) {
  check_delta(delta);
  const double p = static_cast<double>(u.size());
  return (p / delta) * (f_perturbed - f_center) * u;
}

Eigen::MatrixXd two_point_constraint_grad(const Eigen::VectorXd& g_perturbed,
                                          const Eigen::VectorXd& g_center,
                                          const Eigen::VectorXd& u,
                                          double delta) {
  check_delta(delta);
  if (g_perturbed.size() != g_center.size())
    throw std::invalid_argument("two_point_constraint_grad: dimension mismatch");
  const double p = static_cast<double>(u.size());
  return (p / delta) * u * (g_perturbed - g_center).transpose();
}

}  // namespace dopd
