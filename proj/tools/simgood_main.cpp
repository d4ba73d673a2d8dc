// simgood: command-line driver for similarity-based linear classifiers and
// their robustness bounds. JSON or CSV payloads go to stdout (or --out);
// diagnostics go to stderr.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "simgood/audit.hpp"
#include "simgood/errors.hpp"
#include "simgood/experiment.hpp"
#include "simgood/goodness.hpp"
#include "simgood/json_io.hpp"

using nlohmann::json;
using namespace simgood;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

bool g_no_timestamp = false;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void emit_json(json payload, const std::string& out_path) {
  if (!g_no_timestamp) payload["timestamp"] = utc_timestamp();
  const std::string text = payload.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
  out << text;
}

SimilarityFunction load_similarity(const std::string& path) {
  return read_json_file(path).get<SimilarityFunction>();
}

LabeledSample load_data(const std::string& path) {
  auto loaded = load_csv(path);
  if (loaded.scale != 1.0)
    std::cerr << "note: '" << path << "' rescaled into the unit ball by factor " << loaded.scale
              << "\n";
  return std::move(loaded.sample);
}

void warn_range(const SimilarityFunction& f, const Matrix& points, const Matrix& landmarks) {
  const auto r = validate_range(f, points, landmarks);
  if (r.violated)
    std::cerr << "warning: similarity values span [" << r.min << ", " << r.max
              << "], outside [-1, 1]; loss bound B = 1 + 1/gamma does not apply\n";
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string task = "two-gaussians";
  std::size_t n = 200;
  std::size_t dim = 2;
  double separation = 3.0;
  std::vector<double> radii{0.3, 0.9};
  double noise = 0.05;
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_gen(const GenArgs& a) {
  TaskSpec spec;
  spec.kind = parse_task(a.task);
  spec.dim = a.dim;
  spec.separation = a.separation;
  spec.radii = {a.radii.at(0), a.radii.at(1)};
  spec.noise = a.noise;
  const LabeledSample s = spec.generate(a.n, a.seed);
  if (a.out.empty()) {
    write_csv(s, std::cout);
    return;
  }
  save_csv(s, a.out);
}

// ---- landmarks -------------------------------------------------------------

struct LandmarkArgs {
  std::string data;
  std::optional<std::int64_t> count;
  double tau = 1.0, eps1 = 0.5, gamma = 1.0, delta = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_landmarks(const LandmarkArgs& a) {
  const LabeledSample s = load_data(a.data);
  const std::int64_t count = a.count ? *a.count : landmark_count(a.tau, a.eps1, a.gamma, a.delta);
  const LandmarkSet L = draw_landmarks(s, count, a.seed);
  if (a.out.empty()) throw UsageError("--out is required for landmarks");
  save_points_csv(L.points, a.out);
  emit_json(json{{"count", count}, {"out", a.out}}, "");
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string data, landmarks, sim, out;
  double gamma = 1.0;
  std::string backend = "lp";
  std::int64_t steps = 10'000;
  std::uint64_t seed = 1;
  double step_scale = 0.0;
};

void cmd_train(const TrainArgs& a) {
  const LabeledSample s = load_data(a.data);
  const SimilarityFunction f = load_similarity(a.sim);
  const LandmarkSet L = user_landmarks(load_points_csv(a.landmarks));
  warn_range(f, s.points, L.points);
  const EmbeddedSample e = embed(s, L, f);
  const Backend backend = parse_backend(a.backend);
  TrainResult fit = backend == Backend::Lp
                        ? train_lp(e, a.gamma)
                        : train_subgradient(e, a.gamma, {a.steps, a.seed, a.step_scale});
  fit.model.landmarks_ref = a.landmarks;
  fit.model.similarity = f;
  json payload = fit.model;
  payload["report"] = fit.report;
  emit_json(std::move(payload), a.out);
}

// ---- goodness --------------------------------------------------------------

struct GoodnessArgs {
  std::string data, sim, mask, out;
  double gamma = 1.0;
};

void cmd_goodness(const GoodnessArgs& a) {
  const LabeledSample s = load_data(a.data);
  const SimilarityFunction f = load_similarity(a.sim);
  const std::vector<bool> mask = a.mask.empty() ? std::vector<bool>(s.size(), true)
                                                : load_mask_csv(a.mask);
  emit_json(estimate_goodness(s, mask, f, a.gamma), a.out);
}

// ---- bound -----------------------------------------------------------------

struct BoundArgs {
  std::string model, data, test, out;
  double grid_side = 1.0;
  double delta = 0.05;
  std::optional<double> lipschitz, rho, cells, gamma;
  std::optional<std::int64_t> d_l;
};

void cmd_bound(const BoundArgs& a) {
  if (a.model.empty()) {
    if (!a.lipschitz || !a.rho || !a.cells || !a.gamma || !a.d_l)
      throw UsageError("without --model, --lipschitz, --rho, --cells, --gamma and --dl are required");
    emit_json(generalization_bound(*a.lipschitz, *a.rho, *a.gamma, *a.cells, a.delta, *a.d_l),
              a.out);
    return;
  }
  if (a.data.empty()) throw UsageError("--data is required with --model");
  SeparatorModel m = read_json_file(a.model).get<SeparatorModel>();
  if (!m.similarity) throw UsageError("model has no similarity descriptor");
  const LabeledSample train = load_data(a.data);
  const double l = lipschitz_constant(*m.similarity);
  const CoverPartition cover = build_cover(train, a.grid_side);
  BoundReport r = generalization_bound_log(l, cover.rho, m.gamma, cover.log_cell_count, a.delta,
                                           static_cast<std::int64_t>(train.size()));
  if (cover.cell_count) r.cells = cover.cell_count;
  if (!a.test.empty()) {
    if (m.landmarks_ref.empty()) throw UsageError("model does not reference a landmark file");
    const LandmarkSet L = user_landmarks(load_points_csv(m.landmarks_ref));
    const LabeledSample test = load_data(a.test);
    warn_range(*m.similarity, train.points, L.points);
    r.empirical_gap = empirical_gap(m, embed(train, L, *m.similarity),
                                    embed(test, L, *m.similarity));
  }
  if (r.vacuous) std::cerr << "warning: M overflows; the bound is vacuous\n";
  emit_json(r, a.out);
}

// ---- lipschitz-check -------------------------------------------------------

struct LipschitzArgs {
  std::string sim, out;
  std::int64_t triples = 100'000;
  std::uint64_t seed = 1;
};

void cmd_lipschitz_check(const LipschitzArgs& a) {
  const SimilarityFunction f = load_similarity(a.sim);
  const LipschitzAudit audit = audit_lipschitz(f, a.triples, a.seed);
  json payload{{"analytic_l", audit.analytic_l},
               {"max_ratio", audit.max_ratio},
               {"triples", audit.triples},
               {"violations", audit.violations},
               {"family", family_tag(f.family)},
               {"spectral_norm", spectral_norm(f.A)}};
  if (f.family == Family::Bilinear) payload["directed_ratio"] = bilinear_directed_ratio(f);
  if (audit.violations > 0)
    std::cerr << "warning: " << audit.violations << " triples exceed the analytic constant\n";
  emit_json(std::move(payload), a.out);
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string config, out;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

void cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty()) from_json(read_json_file(a.config), cfg);
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.master_seed = *a.seed;
  cfg.threads = a.threads;
  const auto trials = run_experiment(cfg);
  std::size_t covered = 0;
  for (const auto& t : trials) covered += t.gap <= t.bound.bound;
  std::cerr << "bound held in " << covered << " of " << trials.size() << " trials\n";
  if (a.out.empty()) {
    write_trials_csv(trials, cfg, std::cout);
    return;
  }
  std::ofstream out(a.out);
  if (!out) throw UsageError("cannot open '" + a.out + "' for writing");
  write_trials_csv(trials, cfg, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning with good similarity functions: landmark embeddings, L1-constrained "
               "hinge-loss separators and robustness generalization bounds"};
  app.require_subcommand(1);
  app.add_flag("--no-timestamp", g_no_timestamp, "Omit the timestamp field from JSON output");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic labeled sample as CSV");
  gen_cmd->add_option("--task", gen.task, "two-gaussians | circles")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of examples")->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "Dimension")->capture_default_str();
  gen_cmd->add_option("--separation", gen.separation, "Distance between gaussian centres");
  gen_cmd->add_option("--radii", gen.radii, "Inner and outer radius (circles)")->expected(2);
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise (circles)");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV (stdout when omitted)");
  gen_cmd->callback([&] { cmd_gen(gen); });

  LandmarkArgs lm;
  auto* lm_cmd = app.add_subcommand("landmarks", "Draw landmarks from a sample");
  lm_cmd->add_option("--data", lm.data, "Labeled CSV")->required();
  lm_cmd->add_option("--count", lm.count, "Number of landmarks (default: from tau/eps1/gamma/delta)");
  lm_cmd->add_option("--tau", lm.tau, "Reasonable-point mass")->capture_default_str();
  lm_cmd->add_option("--eps1", lm.eps1, "Extra hinge loss allowed")->capture_default_str();
  lm_cmd->add_option("--gamma", lm.gamma, "Margin")->capture_default_str();
  lm_cmd->add_option("--delta", lm.delta, "Failure probability")->capture_default_str();
  lm_cmd->add_option("--seed", lm.seed, "RNG seed")->capture_default_str();
  lm_cmd->add_option("--out", lm.out, "Landmark CSV")->required();
  lm_cmd->callback([&] { cmd_landmarks(lm); });

  TrainArgs tr;
  auto* tr_cmd = app.add_subcommand("train", "Learn the L1-constrained hinge-loss separator");
  tr_cmd->add_option("--data", tr.data, "Labeled CSV")->required();
  tr_cmd->add_option("--landmarks", tr.landmarks, "Landmark CSV")->required();
  tr_cmd->add_option("--sim", tr.sim, "Similarity JSON")->required();
  tr_cmd->add_option("--gamma", tr.gamma, "Margin; |alpha|_1 <= 1/gamma")->required();
  tr_cmd->add_option("--backend", tr.backend, "lp | sgd")->capture_default_str();
  tr_cmd->add_option("--steps", tr.steps, "Subgradient steps")->capture_default_str();
  tr_cmd->add_option("--seed", tr.seed, "Subgradient start seed")->capture_default_str();
  tr_cmd->add_option("--step-scale", tr.step_scale, "Step size scale c (default 1/gamma)");
  tr_cmd->add_option("--out", tr.out, "Model JSON (stdout when omitted)");
  tr_cmd->callback([&] { cmd_train(tr); });

  GoodnessArgs gd;
  auto* gd_cmd = app.add_subcommand("goodness", "Estimate (epsilon, gamma, tau)-goodness");
  gd_cmd->add_option("--data", gd.data, "Labeled CSV")->required();
  gd_cmd->add_option("--sim", gd.sim, "Similarity JSON")->required();
  gd_cmd->add_option("--gamma", gd.gamma, "Margin")->required();
  gd_cmd->add_option("--mask", gd.mask, "Reasonable-point mask, one 0/1 per line");
  gd_cmd->add_option("--out", gd.out, "Output JSON (stdout when omitted)");
  gd_cmd->callback([&] { cmd_goodness(gd); });

  BoundArgs bd;
  auto* bd_cmd = app.add_subcommand("bound", "Evaluate the robustness generalization bound");
  bd_cmd->add_option("--model", bd.model, "Model JSON");
  bd_cmd->add_option("--data", bd.data, "Training CSV the model was fit on");
  bd_cmd->add_option("--test", bd.test, "Held-out CSV for the empirical gap");
  bd_cmd->add_option("--grid-side", bd.grid_side, "Cover grid side")->capture_default_str();
  bd_cmd->add_option("--delta", bd.delta, "Confidence parameter")->capture_default_str();
  bd_cmd->add_option("--lipschitz", bd.lipschitz, "Lipschitz constant l (direct mode)");
  bd_cmd->add_option("--rho", bd.rho, "Cell diameter (direct mode)");
  bd_cmd->add_option("--cells", bd.cells, "Number of cells M (direct mode)");
  bd_cmd->add_option("--gamma", bd.gamma, "Margin (direct mode)");
  bd_cmd->add_option("--dl", bd.d_l, "Training size (direct mode)");
  bd_cmd->add_option("--out", bd.out, "Output JSON (stdout when omitted)");
  bd_cmd->callback([&] { cmd_bound(bd); });

  LipschitzArgs lc;
  auto* lc_cmd = app.add_subcommand("lipschitz-check", "Randomized Lipschitz audit");
  lc_cmd->add_option("--sim", lc.sim, "Similarity JSON")->required();
  lc_cmd->add_option("--triples", lc.triples, "Random triples")->capture_default_str();
  lc_cmd->add_option("--seed", lc.seed, "RNG seed")->capture_default_str();
  lc_cmd->add_option("--out", lc.out, "Output JSON (stdout when omitted)");
  lc_cmd->callback([&] { cmd_lipschitz_check(lc); });

  ExperimentArgs ex;
  auto* ex_cmd = app.add_subcommand("experiment", "Monte-Carlo bound-validity study");
  ex_cmd->add_option("--config", ex.config, "ExperimentConfig JSON");
  ex_cmd->add_option("--trials", ex.trials, "Override the number of trials");
  ex_cmd->add_option("--seed", ex.seed, "Override the master seed");
  ex_cmd->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");
  ex_cmd->add_option("--out", ex.out, "Per-trial CSV (stdout when omitted)");
  ex_cmd->callback([&] { cmd_experiment(ex); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
