#include "dopd/feasible_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dopd {

FeasibleSet FeasibleSet::box(int p, double half_width) {
  FeasibleSet s{Shape::box, p, half_width};
  s.validate();
  return s;
}

FeasibleSet FeasibleSet::ball(int p, double radius) {
  FeasibleSet s{Shape::ball, p, radius};
  s.validate();
  return s;
}

double FeasibleSet::outer_radius() const {
  return shape == Shape::box ? extent * std::sqrt(static_cast<double>(p))
                             : extent;
}

void FeasibleSet::validate() const {
  if (p < 1) throw std::invalid_argument("FeasibleSet: p must be >= 1");
  if (extent <= 0.0)
    throw std::invalid_argument("FeasibleSet: extent must be positive");
}

Eigen::VectorXd project(const FeasibleSet& set, double xi,
                        const Eigen::VectorXd& x) {
  if (xi < 0.0 || xi >= 1.0)
    throw std::invalid_argument("project: xi must be in [0, 1)");
  if (x.size() != set.p) throw std::invalid_argument("project: dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("project: non-finite input");

  const double bound = (1.0 - xi) * set.extent;
  if (set.shape == FeasibleSet::Shape::box) {
    return x.cwiseMax(-bound).cwiseMin(bound);
  }
  const double norm = x.norm();
  if (norm <= bound) return x;
  Eigen::VectorXd y = x * (bound / norm);
  // Rounding can leave ||y|| a few ulps above the bound; nudge down so that
  // projecting the output is an exact no-op.
  while (y.norm() > bound) y *= 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
  return y;
}

bool contains(const FeasibleSet& set, double xi, const Eigen::VectorXd& x,
              double tol) {
  if (x.size() != set.p) return false;
  const double bound = (1.0 - xi) * set.extent;
  if (set.shape == FeasibleSet::Shape::box) {
    return x.cwiseAbs().maxCoeff() <= bound + tol;
  }
  return x.norm() <= bound + tol;
}

}  // namespace dopd
