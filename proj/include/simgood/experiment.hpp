#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "simgood/robustness.hpp"

namespace simgood {

enum class TaskKind { TwoGaussians, Circles };

std::string_view task_tag(TaskKind kind);  ///< "two-gaussians" | "circles"
TaskKind parse_task(std::string_view tag);

struct TaskSpec {
  TaskKind kind = TaskKind::TwoGaussians;
  std::size_t dim = 2;
  double separation = 3.0;              ///< two-gaussians
  std::pair<double, double> radii{0.3, 0.9};  ///< circles
  double noise = 0.05;                  ///< circles

  LabeledSample generate(std::size_t n, std::uint64_t seed) const;
};

/// One Monte-Carlo bound-validity study.
struct ExperimentConfig {
  TaskSpec task;
  SimilarityFunction similarity = make_similarity(Family::Bilinear, ParamMatrix::identity(2));
  double gamma = 1.0;
  double grid_side = 1.0;
  double delta = 0.05;
  std::size_t d_l = 500;
  std::size_t d_test = 5000;
  std::size_t landmarks = 10;
  std::size_t trials = 200;
  std::uint64_t master_seed = 1;
  Backend backend = Backend::Lp;
  std::int64_t sgd_steps = 10'000;
  unsigned threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

struct TrialResult {
  std::uint64_t seed = 0;
  BoundReport bound;
  double train_risk = 0.0;
  double test_risk = 0.0;
  double gap = 0.0;
  double max_loss = 0.0;      ///< over train and test rows
  bool range_ok = true;       ///< all similarities of train/test vs landmarks in [-1, 1]
  bool feasible = true;       ///< |alpha|_1 <= (1/gamma)(1 + 1e-8)
};

/// Per-trial seed derived from the master seed; independent of thread count.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

std::vector<TrialResult> run_experiment(const ExperimentConfig& config);

/// Header plus one row per trial:
/// seed,d_l,gamma,sigma,family,rho,M,term_robust,term_stat,bound,train_risk,test_risk,gap
void write_trials_csv(const std::vector<TrialResult>& trials, const ExperimentConfig& config,
                      std::ostream& out);

}  // namespace simgood
