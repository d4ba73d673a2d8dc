#include "simgood/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "simgood/errors.hpp"

namespace simgood {

std::string_view task_tag(TaskKind kind) {
  return kind == TaskKind::TwoGaussians ? "two-gaussians" : "circles";
}

TaskKind parse_task(std::string_view tag) {
  if (tag == "two-gaussians") return TaskKind::TwoGaussians;
  if (tag == "circles") return TaskKind::Circles;
  throw UsageError("unknown task '" + std::string(tag) + "' (expected two-gaussians or circles)");
}

LabeledSample TaskSpec::generate(std::size_t n, std::uint64_t seed) const {
  if (kind == TaskKind::TwoGaussians) return gen_two_gaussians(n, dim, separation, seed);
  return gen_circles(n, dim, radii, noise, seed);
}

void ExperimentConfig::validate() const {
  similarity.validate();
  if (static_cast<std::size_t>(similarity.dim()) != task.dim)
    throw UsageError("similarity dimension " + std::to_string(similarity.dim()) +
                     " does not match task dimension " + std::to_string(task.dim));
  if (!(gamma > 0.0)) throw UsageError("gamma must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
  if (!(grid_side > 0.0 && grid_side <= 2.0)) throw UsageError("grid_side must lie in (0, 2]");
  if (d_l < 2 || d_test < 2) throw UsageError("d_l and d_test must be at least 2");
  if (landmarks < 1) throw UsageError("landmarks must be at least 1");
  if (trials < 1) throw UsageError("trials must be at least 1");
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
  std::uint32_t words[2];
  seq.generate(std::begin(words), std::end(words));
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace {

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t seed, double lipschitz,
                      const CoverPartition& grid) {
  std::mt19937_64 split(seed);
  const std::uint64_t train_seed = split();
  const std::uint64_t test_seed = split();
  const std::uint64_t landmark_seed = split();
  const std::uint64_t solver_seed = split() | 1u;

  const LabeledSample train = cfg.task.generate(cfg.d_l, train_seed);
  const LabeledSample test = cfg.task.generate(cfg.d_test, test_seed);
  const LandmarkSet landmarks =
      draw_landmarks(train, static_cast<std::int64_t>(cfg.landmarks), landmark_seed);
  const EmbeddedSample train_emb = embed(train, landmarks, cfg.similarity);
  const EmbeddedSample test_emb = embed(test, landmarks, cfg.similarity);

  TrainResult fit = cfg.backend == Backend::Lp
                        ? train_lp(train_emb, cfg.gamma)
                        : train_subgradient(train_emb, cfg.gamma,
                                            {cfg.sgd_steps, solver_seed, 0.0});

  TrialResult r;
  r.seed = seed;
  r.bound = generalization_bound_log(lipschitz, grid.rho, cfg.gamma, grid.log_cell_count,
                                     cfg.delta, static_cast<std::int64_t>(cfg.d_l));
  if (grid.cell_count) r.bound.cells = grid.cell_count;
  r.train_risk = empirical_risk(fit.model, train_emb);
  r.test_risk = empirical_risk(fit.model, test_emb);
  r.gap = std::abs(r.test_risk - r.train_risk);
  r.bound.empirical_gap = r.gap;
  r.max_loss = std::max(max_instantaneous_loss(fit.model, train_emb),
                        max_instantaneous_loss(fit.model, test_emb));
  const auto in_range = [](const Matrix& F) {
    return F.size() == 0 || (F.minCoeff() >= -1.0 - 1e-12 && F.maxCoeff() <= 1.0 + 1e-12);
  };
  r.range_ok = in_range(train_emb.features) && in_range(test_emb.features);
  r.feasible = fit.model.feasible();
  return r;
}

}  // namespace

std::vector<TrialResult> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const double lipschitz = lipschitz_constant(config.similarity);
  const CoverPartition grid =
      make_grid(static_cast<Eigen::Index>(config.task.dim), config.grid_side);

  std::vector<TrialResult> results(config.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    for (std::size_t t = next++; t < config.trials && !failed; t = next++) {
      try {
        results[t] = run_trial(config, trial_seed(config.master_seed, t), lipschitz, grid);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(config.trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

void write_trials_csv(const std::vector<TrialResult>& trials, const ExperimentConfig& config,
                      std::ostream& out) {
  out << "seed,d_l,gamma,sigma,family,rho,M,term_robust,term_stat,bound,train_risk,test_risk,gap\n";
  const auto old_precision = out.precision(17);
  for (const auto& t : trials) {
    out << t.seed << ',' << config.d_l << ',' << config.gamma << ',' << config.similarity.sigma
        << ',' << family_tag(config.similarity.family) << ',' << t.bound.rho << ',';
    if (t.bound.cells) out << *t.bound.cells;
    else out << "inf";
    out << ',' << t.bound.term_robust << ',' << t.bound.term_stat << ',' << t.bound.bound << ','
        << t.train_risk << ',' << t.test_risk << ',' << t.gap << '\n';
  }
  out.precision(old_precision);
}

}  // namespace simgood
