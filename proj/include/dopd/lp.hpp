#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dopd {

struct BoxBounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

struct LpRow {
  Eigen::VectorXd a;
  double b;
};

struct LpResult {
  enum class Status { optimal, infeasible };
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

// Minimizes <c, x> over {x in box : a^T x <= b for every row}. Deterministic
// two-phase dense simplex with Bland's rule; exact duplicates are pruned and,
// for p == 2, redundant halfplanes are removed by clipping the box polygon
// before the simplex runs. Optimality is certified by a reduced-cost check.
LpResult solve_lp(const Eigen::VectorXd& c, const BoxBounds& box,
                  const std::vector<LpRow>& rows);

// Convex polygon maintained as a CCW vertex list; used for incremental
// comparator sets in the plane.
class ConvexPolygon2D {
 public:
  // Axis-aligned box polygon.
  ConvexPolygon2D(double lo_x, double hi_x, double lo_y, double hi_y);

  // Intersect with the halfplane a^T x <= b.
  void clip(const Eigen::Vector2d& a, double b);
  bool empty() const { return vertices_.empty(); }
  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  // Minimum of <c, x> over the polygon (vertex minimum); requires !empty().
  double min_objective(const Eigen::Vector2d& c) const;

 private:
  std::vector<Eigen::Vector2d> vertices_;
};

}  // namespace dopd
