#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simgood/solver.hpp"

namespace simgood {

/// Grid coordinates of a cell plus the label; two examples share a cell iff
/// their keys compare equal.
struct CellKey {
  std::vector<std::int64_t> coords;
  int label = 1;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

/// Axis-aligned grid of side `grid_side` over [-1, 1]^d, crossed with the two
/// labels. The partition is fixed before seeing data; `cell_of` only records
/// where the observed points fell.
struct CoverPartition {
  double grid_side = 2.0;
  Eigen::Index dim = 1;
  std::int64_t cells_per_axis = 1;  ///< ceil(2 / grid_side)
  double rho = 2.0;                 ///< grid_side * sqrt(d): L2 diameter of a cell
  /// ln M with M = 2 ceil(2/grid_side)^d; always finite.
  double log_cell_count = 0.0;
  /// M itself, absent when it does not fit in a double.
  std::optional<double> cell_count;
  std::vector<std::size_t> cell_of;  ///< compact id of each observed example's cell
  std::vector<CellKey> occupied;     ///< key of each compact id

  CellKey locate(const Eigen::Ref<const Vector>& x, int label) const;
};

CoverPartition build_cover(const LabeledSample& points, double grid_side);

/// Cover geometry without any observed points.
CoverPartition make_grid(Eigen::Index dim, double grid_side);

/// l rho / gamma.
double robustness_epsilon(double lipschitz, double rho, double gamma);

struct BoundReport {
  double lipschitz = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  std::optional<double> cells;  ///< M; absent when only ln M is representable
  double log_cells = 0.0;
  double B = 0.0;               ///< 1 + 1/gamma
  double delta = 0.0;
  std::int64_t d_l = 0;
  double term_robust = 0.0;     ///< l rho / gamma
  double term_stat = 0.0;       ///< B sqrt((2 M ln2 + 2 ln(1/delta)) / d_l)
  double bound = 0.0;
  bool vacuous = false;         ///< term_stat overflowed to +inf
  std::optional<double> empirical_gap;
};

/// |R - R_hat| <= l rho / gamma + B sqrt((2 M ln 2 + 2 ln(1/delta)) / d_l).
BoundReport generalization_bound(double lipschitz, double rho, double gamma, double cells,
                                 double delta, std::int64_t d_l);

/// Same, with M given as ln M (for covers whose M overflows).
BoundReport generalization_bound_log(double lipschitz, double rho, double gamma,
                                     double log_cells, double delta, std::int64_t d_l);

struct LabeledPoint {
  Vector x;
  int label = 1;
};

/// |loss(z1) - loss(z2)| for two examples with the same label.
double same_cell_loss_gap(const SeparatorModel& model, const SimilarityFunction& f,
                          const LandmarkSet& landmarks, const LabeledPoint& z1,
                          const LabeledPoint& z2);

/// |mean test loss - mean train loss|.
double empirical_gap(const SeparatorModel& model, const EmbeddedSample& train,
                     const EmbeddedSample& test);

}  // namespace simgood
