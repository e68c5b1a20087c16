#pragma once

#include <Eigen/Dense>

#include <random>

// One- and two-point zeroth-order gradient estimators built from sphere
// perturbations. Constraint estimates are stored as p x m matrices, one
// column per constraint component, so estimate * v is a single pass.
namespace dopd {

// Uniform draw from the unit sphere (normalized Gaussian vector).
Eigen::VectorXd sample_sphere(int p, std::mt19937_64& rng);

// (p / delta) * f(x + delta u) * u
Eigen::VectorXd one_point_loss_grad(double f_perturbed,
                                    const Eigen::VectorXd& u, double delta);

// Column k: (p / delta) * g_k(x + delta u) * u
Eigen::MatrixXd one_point_constraint_grad(const Eigen::VectorXd& g_perturbed,
                                          const Eigen::VectorXd& u,
                                          double delta);

// (p / delta) * (f(x + delta u) - f(x)) * u
Eigen::VectorXd two_point_loss_grad(double f_perturbed, double f_center,
                                    const Eigen::VectorXd& u, double delta);

Eigen::MatrixXd two_point_constraint_grad(const Eigen::VectorXd& g_perturbed,
                                          const Eigen::VectorXd& g_center,
                                          const Eigen::VectorXd& u,
                                          double delta);

}  // namespace dopd
