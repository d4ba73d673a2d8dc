#pragma once

#include <vector>

#include "simgood/data.hpp"

namespace simgood {

/// Result of a standard-form LP solve.
struct LpSolution {
  Vector x;               ///< primal solution, length = number of columns
  double objective = 0.0;
  Vector reduced_costs;   ///< c_j - c_B^T B^{-1} A_j at the final basis
  std::vector<Eigen::Index> basis;
  int iterations = 0;
};

/// Dense tableau primal simplex for
///     minimize c^T x  s.t.  A x = b,  x >= 0,
/// started from a caller-supplied feasible basis (column indices, one per
/// row). Pricing is Dantzig's rule, switching to Bland's rule after a run of
/// degenerate pivots so the method cannot cycle.
///
/// Throws UsageError when the initial basis is singular or infeasible and
/// NumericError when the LP is unbounded or the iteration limit is hit.
LpSolution solve_standard_form(const Matrix& A, const Vector& b, const Vector& c,
                               std::vector<Eigen::Index> basis, int max_iter = 0);

}  // namespace simgood
