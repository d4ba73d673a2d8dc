#include "simgood/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;
constexpr int kDegenerateRun = 50;

}  // namespace

LpSolution solve_standard_form(const Matrix& A, const Vector& b, const Vector& c,
                               std::vector<Eigen::Index> basis, int max_iter) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n || static_cast<Eigen::Index>(basis.size()) != m)
    throw UsageError("simplex: inconsistent problem dimensions");
  if (max_iter <= 0) max_iter = static_cast<int>(50 * (m + n));

  Matrix B(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < 0 || basis[i] >= n) throw UsageError("simplex: basis index out of range");
    B.col(i) = A.col(basis[i]);
  }
  Eigen::PartialPivLU<Matrix> lu(B);
  if (std::abs(lu.determinant()) < kPivotTol) throw UsageError("simplex: initial basis is singular");

  Matrix T = lu.solve(A);
  Vector rhs = lu.solve(b);
  if ((rhs.array() < -1e-9).any()) throw UsageError("simplex: initial basis is infeasible");
  rhs = rhs.cwiseMax(0.0);

  Vector cb(m);
  for (Eigen::Index i = 0; i < m; ++i) cb[i] = c[basis[i]];
  Vector reduced = c - T.transpose() * cb;

  int degenerate_run = 0;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= max_iter)
      throw NumericError("simplex: iteration limit " + std::to_string(max_iter) + " reached",
                         cb.dot(rhs));

    const bool bland = degenerate_run >= kDegenerateRun;
    Eigen::Index enter = -1;
    double best = -kCostTol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (reduced[j] < best) {
        enter = j;
        if (bland) break;
        best = reduced[j];
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double t = T(i, enter);
      if (t <= kPivotTol) continue;
      const double r = rhs[i] / t;
      if (r < ratio - 1e-15 || (r <= ratio + 1e-15 && leave >= 0 && basis[i] < basis[leave])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave < 0) throw NumericError("simplex: problem is unbounded");

    degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;

    const double pivot = T(leave, enter);
    T.row(leave) /= pivot;
    rhs[leave] /= pivot;
    Vector col = T.col(enter);
    col[leave] = 0.0;
    const Eigen::RowVectorXd prow = T.row(leave);
    T.noalias() -= col * prow;
    rhs -= col * rhs[leave];
    rhs = rhs.cwiseMax(0.0);
    reduced -= reduced[enter] * prow.transpose();
    reduced[enter] = 0.0;
    basis[leave] = enter;
    cb[leave] = c[enter];
  }

  LpSolution sol;
  sol.x = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) sol.x[basis[i]] = std::max(rhs[i], 0.0);
  sol.objective = c.dot(sol.x);
  sol.reduced_costs = std::move(reduced);
  sol.basis = std::move(basis);
  sol.iterations = iter;
  return sol;
}

}  // namespace simgood
