#include "dopd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dopd {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;

// Dense two-phase simplex for min c^T y s.t. A y <= d, y >= 0.
// Bland's rule throughout (smallest eligible index), so no cycling.
struct Simplex {
  int m, nvars;  // structural variables
  Eigen::MatrixXd T;  // (m+1) x (nvars + m + art + 1); row 0 = reduced costs
  std::vector<int> basis;
  int ncols = 0;
  int nart = 0;

  Simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& d)
      : m(static_cast<int>(A.rows())), nvars(static_cast<int>(A.cols())) {
    for (int i = 0; i < m; ++i)
      if (d[i] < 0.0) ++nart;
    ncols = nvars + m + nart + 1;
    T = Eigen::MatrixXd::Zero(m + 1, ncols);
    basis.resize(m);
    int art = 0;
    for (int i = 0; i < m; ++i) {
      const double sign = d[i] < 0.0 ? -1.0 : 1.0;
      T.row(i + 1).head(nvars) = sign * A.row(i);
      T(i + 1, nvars + i) = sign;  // slack
      T(i + 1, ncols - 1) = sign * d[i];
      if (d[i] < 0.0) {
        T(i + 1, nvars + m + art) = 1.0;
        basis[i] = nvars + m + art;
        ++art;
      } else {
        basis[i] = nvars + i;
      }
    }
  }

  void set_costs(const Eigen::VectorXd& costs) {
    T.row(0).setZero();
    T.row(0).head(costs.size()) = costs.transpose();
    for (int i = 0; i < m; ++i) {
      const double cb =
          basis[i] < static_cast<int>(costs.size()) ? costs[basis[i]] : 0.0;
      if (cb != 0.0) T.row(0) -= cb * T.row(i + 1);
    }
  }

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[row - 1] = col;
  }

  // Returns false only on a (structurally impossible) unbounded ray.
  bool iterate(int usable_cols) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (T(0, j) < -kCostTol) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= m; ++i) {
        if (T(i, enter) > kPivotTol) {
          const double ratio = T(i, ncols - 1) / T(i, enter);
          if (ratio < best - kPivotTol ||
              (ratio < best + kPivotTol &&
               (leave < 0 || basis[i - 1] < basis[leave - 1]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  double objective() const { return -T(0, ncols - 1); }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(nvars);
    for (int i = 0; i < m; ++i)
      if (basis[i] < nvars) y[basis[i]] = T(i + 1, ncols - 1);
    return y;
  }
};

LpResult simplex_solve(const Eigen::VectorXd& c, const BoxBounds& box,
                       const std::vector<LpRow>& rows) {
  const int p = static_cast<int>(c.size());
  const int mr = static_cast<int>(rows.size());
  // y = x - lo >= 0; the box top becomes p extra rows.
  const int m = mr + p;
  Eigen::MatrixXd A(m, p);
  Eigen::VectorXd d(m);
  for (int i = 0; i < mr; ++i) {
    A.row(i) = rows[i].a.transpose();
    d[i] = rows[i].b - rows[i].a.dot(box.lo);
  }
  A.bottomRows(p) = Eigen::MatrixXd::Identity(p, p);
  d.tail(p) = box.hi - box.lo;

  Simplex sx(A, d);
  if (sx.nart > 0) {
    // Artificial block is the last nart columns before the rhs.
    Eigen::VectorXd costs = Eigen::VectorXd::Zero(sx.nvars + sx.m + sx.nart);
    costs.tail(sx.nart).setOnes();
    sx.set_costs(costs);
    sx.iterate(sx.nvars + sx.m + sx.nart);
    if (sx.objective() > 1e-8) return {LpResult::Status::infeasible, {}, 0.0};
    // Drive remaining artificials out of the basis.
    for (int i = 0; i < sx.m; ++i) {
      if (sx.basis[i] >= sx.nvars + sx.m) {
        for (int j = 0; j < sx.nvars + sx.m; ++j) {
          if (std::abs(sx.T(i + 1, j)) > kPivotTol) {
            sx.pivot(i + 1, j);
            break;
          }
        }
      }
    }
  }

  Eigen::VectorXd costs = Eigen::VectorXd::Zero(sx.nvars + sx.m + sx.nart);
  costs.head(p) = c;
  sx.set_costs(costs);
  if (!sx.iterate(sx.nvars + sx.m))
    throw std::runtime_error("solve_lp: unbounded despite box bounds");

  // Dual feasibility certificate: reduced costs over real columns.
  for (int j = 0; j < sx.nvars + sx.m; ++j) {
    if (sx.T(0, j) < -kCostTol)
      throw std::runtime_error("solve_lp: optimality certificate failed");
  }

  LpResult out;
  out.status = LpResult::Status::optimal;
  out.x = sx.solution() + box.lo;
  out.value = c.dot(out.x);
  return out;
}

}  // namespace

ConvexPolygon2D::ConvexPolygon2D(double lo_x, double hi_x, double lo_y,
                                 double hi_y) {
  vertices_ = {{lo_x, lo_y}, {hi_x, lo_y}, {hi_x, hi_y}, {lo_x, hi_y}};
}

void ConvexPolygon2D::clip(const Eigen::Vector2d& a, double b) {
  if (vertices_.empty()) return;
  const double scale = std::max(1.0, std::abs(b));
  const double tol = 1e-12 * scale;
  std::vector<Eigen::Vector2d> out;
  const std::size_t k = vertices_.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Vector2d& cur = vertices_[i];
    const Eigen::Vector2d& nxt = vertices_[(i + 1) % k];
    const double dc = a.dot(cur) - b;
    const double dn = a.dot(nxt) - b;
    if (dc <= tol) out.push_back(cur);
    if ((dc < -tol && dn > tol) || (dc > tol && dn < -tol)) {
      const double s = dc / (dc - dn);
      out.push_back(cur + s * (nxt - cur));
    }
  }
  vertices_ = std::move(out);
}

double ConvexPolygon2D::min_objective(const Eigen::Vector2d& c) const {
  if (vertices_.empty())
    throw std::logic_error("ConvexPolygon2D: empty polygon");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::min(best, c.dot(v));
  return best;
}

LpResult solve_lp(const Eigen::VectorXd& c, const BoxBounds& box,
                  const std::vector<LpRow>& rows) {
  const int p = static_cast<int>(c.size());
  if (box.lo.size() != p || box.hi.size() != p)
    throw std::invalid_argument("solve_lp: box dimension mismatch");
  for (const auto& r : rows)
    if (r.a.size() != p) throw std::invalid_argument("solve_lp: row dimension");

  // Prune exact duplicates (identical normal, keep the tightest offset) and
  // rows already implied by the box alone.
  std::vector<LpRow> pruned;
  pruned.reserve(rows.size());
  for (const auto& r : rows) {
    double box_max = 0.0;
    for (int k = 0; k < p; ++k)
      box_max += std::max(r.a[k] * box.lo[k], r.a[k] * box.hi[k]);
    if (box_max <= r.b) continue;  // redundant on the box
    bool merged = false;
    for (auto& q : pruned) {
      if ((q.a.array() == r.a.array()).all()) {
        q.b = std::min(q.b, r.b);
        merged = true;
        break;
      }
    }
    if (!merged) pruned.push_back(r);
  }

  if (p == 2 && pruned.size() > 16) {
    // Clip the box polygon by every halfplane; rows slack on the resulting
    // polygon are redundant and can be dropped without changing the set.
    ConvexPolygon2D poly(box.lo[0], box.hi[0], box.lo[1], box.hi[1]);
    for (const auto& r : pruned) poly.clip(Eigen::Vector2d(r.a), r.b);
    if (poly.empty()) return {LpResult::Status::infeasible, {}, 0.0};
    std::vector<LpRow> tight;
    for (const auto& r : pruned) {
      double mx = -std::numeric_limits<double>::infinity();
      for (const auto& v : poly.vertices())
        mx = std::max(mx, r.a.dot(Eigen::VectorXd(v)));
      if (mx >= r.b - 1e-7 * std::max(1.0, std::abs(r.b))) tight.push_back(r);
    }
    pruned = std::move(tight);
  }

  return simplex_solve(c, box, pruned);
}

}  // namespace dopd
