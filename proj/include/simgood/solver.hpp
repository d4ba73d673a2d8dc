#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "simgood/embedding.hpp"

namespace simgood {

/// Linear separator over landmark features with sum |alpha_j| <= 1/gamma.
struct SeparatorModel {
  Vector alpha;
  double gamma = 1.0;
  std::string landmarks_ref;                     ///< path of the landmark CSV, if any
  std::optional<SimilarityFunction> similarity;  ///< similarity used to embed

  double l1_norm() const { return alpha.lpNorm<1>(); }
  /// sum |alpha_j| <= (1/gamma)(1 + 1e-8) and every entry finite.
  bool feasible() const;
};

enum class Backend { Lp, Subgradient };

std::string_view backend_tag(Backend backend);  ///< "lp" | "sgd"
Backend parse_backend(std::string_view tag);

struct TrainReport {
  double objective = 0.0;  ///< empirical hinge risk of the returned model
  Backend backend = Backend::Lp;
  int iterations = 0;
  /// objective minus a Lagrangian dual lower bound; >= 0 up to rounding.
  double gap = 0.0;
};

struct TrainResult {
  SeparatorModel model;
  TrainReport report;
};

/// max(0, 1 - label <alpha, row>).
double instantaneous_loss(const SeparatorModel& model, const Eigen::Ref<const Vector>& row,
                          int label);

/// Mean instantaneous loss over the rows. Throws UsageError on empty data.
double empirical_risk(const SeparatorModel& model, const EmbeddedSample& data);

/// Largest instantaneous loss over the rows (0 on empty data).
double max_instantaneous_loss(const SeparatorModel& model, const EmbeddedSample& data);

/// Lower bound on the optimal risk from dual multipliers lambda in [0, 1/n]^n:
/// sum lambda_i - (1/gamma) max_j |sum_i lambda_i y_i F_ij|.
double dual_lower_bound(const EmbeddedSample& data, double gamma, const Vector& lambda);

/// Exact minimizer of the empirical hinge risk over the L1 ball of radius
/// 1/gamma, via the alpha = a+ - a-, slack-variable LP.
TrainResult train_lp(const EmbeddedSample& data, double gamma);

struct SubgradientOptions {
  std::int64_t steps = 10'000;
  std::uint64_t seed = 0;
  /// Step size is step_scale / sqrt(t); 0 selects 1/gamma.
  double step_scale = 0.0;
};

/// Projected subgradient descent with Euclidean projection onto the L1 ball.
/// Returns the best iterate seen. The start point is drawn uniformly from the
/// feasible ball using `seed` (seed 0 starts at the origin).
TrainResult train_subgradient(const EmbeddedSample& data, double gamma,
                              const SubgradientOptions& options = {});

/// Euclidean projection onto {w : |w|_1 <= radius} (sort-based).
Vector project_l1_ball(const Vector& v, double radius);

}  // namespace simgood
