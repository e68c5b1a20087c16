#pragma once

#include <Eigen/Dense>

namespace dopd {

// Origin-symmetric convex decision sets with known inner/outer radii and
// Euclidean projection onto the shrunk copy (1 - xi) * X.
struct FeasibleSet {
  enum class Shape { box, ball };

  Shape shape = Shape::box;
  int p = 2;
  double extent = 5.0;  // half-width for boxes, radius for balls

  static FeasibleSet box(int p, double half_width);
  static FeasibleSet ball(int p, double radius);

  double inner_radius() const { return extent; }
  double outer_radius() const;
  void validate() const;  // throws std::invalid_argument
};

Eigen::VectorXd project(const FeasibleSet& set, double xi,
                        const Eigen::VectorXd& x);

bool contains(const FeasibleSet& set, double xi, const Eigen::VectorXd& x,
              double tol = 1e-9);

}  // namespace dopd
