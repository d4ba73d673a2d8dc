#include "simgood/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

namespace {

// Largest ln M for which 2 M ln 2 still fits comfortably in a double.
constexpr double kMaxLogCells = 700.0;

void check_bound_inputs(double lipschitz, double rho, double gamma, double delta,
                        std::int64_t d_l) {
  if (!(lipschitz >= 0.0)) throw UsageError("lipschitz constant must be non-negative");
  if (!(rho >= 0.0)) throw UsageError("rho must be non-negative");
  if (!(gamma > 0.0)) throw UsageError("gamma must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
  if (d_l < 1) throw UsageError("d_l must be at least 1");
}

}  // namespace

CoverPartition make_grid(Eigen::Index dim, double grid_side) {
  if (!(grid_side > 0.0)) throw UsageError("grid_side must be positive");
  if (grid_side > 2.0) throw UsageError("grid_side must not exceed 2 (the width of [-1, 1])");
  if (dim < 1) throw UsageError("cover dimension must be at least 1");
  CoverPartition cover;
  cover.grid_side = grid_side;
  cover.dim = dim;
  cover.cells_per_axis = static_cast<std::int64_t>(std::ceil(2.0 / grid_side));
  cover.rho = grid_side * std::sqrt(static_cast<double>(dim));
  cover.log_cell_count =
      std::log(2.0) + static_cast<double>(dim) * std::log(static_cast<double>(cover.cells_per_axis));
  if (cover.log_cell_count <= kMaxLogCells)
    cover.cell_count = 2.0 * std::pow(static_cast<double>(cover.cells_per_axis),
                                      static_cast<double>(dim));
  return cover;
}

CellKey CoverPartition::locate(const Eigen::Ref<const Vector>& x, int label) const {
  if (x.size() != dim)
    throw UsageError("point dimension " + std::to_string(x.size()) + " does not match cover " +
                     std::to_string(dim));
  CellKey key;
  key.label = label;
  key.coords.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    auto c = static_cast<std::int64_t>(std::floor((x[k] + 1.0) / grid_side));
    key.coords[static_cast<std::size_t>(k)] = std::clamp<std::int64_t>(c, 0, cells_per_axis - 1);
  }
  return key;
}

CoverPartition build_cover(const LabeledSample& points, double grid_side) {
  CoverPartition cover = make_grid(points.dim() > 0 ? points.dim() : 1, grid_side);
  std::map<CellKey, std::size_t> ids;
  cover.cell_of.reserve(points.size());
  for (Eigen::Index i = 0; i < points.points.rows(); ++i) {
    CellKey key = cover.locate(points.points.row(i).transpose(),
                               points.labels[static_cast<std::size_t>(i)]);
    auto [it, inserted] = ids.try_emplace(key, cover.occupied.size());
    if (inserted) cover.occupied.push_back(std::move(key));
    cover.cell_of.push_back(it->second);
  }
  return cover;
}

double robustness_epsilon(double lipschitz, double rho, double gamma) {
  if (!(gamma > 0.0)) throw UsageError("gamma must be positive");
  return lipschitz * rho / gamma;
}

BoundReport generalization_bound(double lipschitz, double rho, double gamma, double cells,
                                 double delta, std::int64_t d_l) {
  check_bound_inputs(lipschitz, rho, gamma, delta, d_l);
  if (!(cells >= 1.0)) throw UsageError("number of cells M must be at least 1");
  BoundReport r;
  r.lipschitz = lipschitz;
  r.rho = rho;
  r.gamma = gamma;
  r.cells = cells;
  r.log_cells = std::log(cells);
  r.B = 1.0 + 1.0 / gamma;
  r.delta = delta;
  r.d_l = d_l;
  r.term_robust = robustness_epsilon(lipschitz, rho, gamma);
  const double numerator = 2.0 * cells * std::log(2.0) + 2.0 * std::log(1.0 / delta);
  r.term_stat = r.B * std::sqrt(numerator / static_cast<double>(d_l));
  r.vacuous = !std::isfinite(r.term_stat);
  r.bound = r.term_robust + r.term_stat;
  return r;
}

BoundReport generalization_bound_log(double lipschitz, double rho, double gamma,
                                     double log_cells, double delta, std::int64_t d_l) {
  if (log_cells <= kMaxLogCells)
    return generalization_bound(lipschitz, rho, gamma, std::exp(log_cells), delta, d_l);
  check_bound_inputs(lipschitz, rho, gamma, delta, d_l);
  BoundReport r;
  r.lipschitz = lipschitz;
  r.rho = rho;
  r.gamma = gamma;
  r.log_cells = log_cells;
  r.B = 1.0 + 1.0 / gamma;
  r.delta = delta;
  r.d_l = d_l;
  r.term_robust = robustness_epsilon(lipschitz, rho, gamma);
  r.term_stat = std::numeric_limits<double>::infinity();
  r.vacuous = true;
  r.bound = r.term_stat;
  return r;
}

double same_cell_loss_gap(const SeparatorModel& model, const SimilarityFunction& f,
                          const LandmarkSet& landmarks, const LabeledPoint& z1,
                          const LabeledPoint& z2) {
  if (z1.label != z2.label)
    throw UsageError("same_cell_loss_gap: examples carry different labels, so they cannot share "
                     "a cell");
  const double l1 = instantaneous_loss(model, embed_point(z1.x, landmarks, f), z1.label);
  const double l2 = instantaneous_loss(model, embed_point(z2.x, landmarks, f), z2.label);
  return std::abs(l1 - l2);
}

double empirical_gap(const SeparatorModel& model, const EmbeddedSample& train,
                     const EmbeddedSample& test) {
  if (train.size() == 0 || test.size() == 0) throw UsageError("empirical_gap: empty sample");
  return std::abs(empirical_risk(model, test) - empirical_risk(model, train));
}

}  // namespace simgood
