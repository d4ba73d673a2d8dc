#include "simgood/json_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

using nlohmann::json;

namespace {

// JSON has no infinity; non-finite values serialize as null.
json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

void to_json(json& j, const ParamMatrix& A) {
  const Matrix& m = A.entries();
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  j = json{{"d", m.rows()}, {"entries", entries}};
}

void from_json(const json& j, ParamMatrix& A) {
  try {
    const auto d = j.at("d").get<Eigen::Index>();
    const auto entries = j.at("entries").get<std::vector<double>>();
    if (d < 1 || static_cast<Eigen::Index>(entries.size()) != d * d)
      throw UsageError("parameter matrix: expected " + std::to_string(d * d) + " entries, got " +
                       std::to_string(entries.size()));
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) m(r, c) = entries[static_cast<std::size_t>(r * d + c)];
    A = ParamMatrix(std::move(m));
  } catch (const json::exception& e) {
    throw UsageError(std::string("parameter matrix JSON: ") + e.what());
  }
}

void to_json(json& j, const SimilarityFunction& f) {
  j = json{{"family", family_tag(f.family)}, {"A", f.A}};
  if (f.family == Family::Exponential) j["sigma"] = f.sigma;
}

void from_json(const json& j, SimilarityFunction& f) {
  try {
    f.family = parse_family(j.at("family").get<std::string>());
    f.A = j.at("A").get<ParamMatrix>();
    f.sigma = 1.0;
    read_optional(j, "sigma", f.sigma);
  } catch (const json::exception& e) {
    throw UsageError(std::string("similarity JSON: ") + e.what());
  }
  f.validate();
}

void to_json(json& j, const SeparatorModel& m) {
  j = json{{"gamma", m.gamma},
           {"alpha", std::vector<double>(m.alpha.begin(), m.alpha.end())},
           {"landmarks", m.landmarks_ref}};
  j["similarity"] = m.similarity ? json(*m.similarity) : json(nullptr);
}

void from_json(const json& j, SeparatorModel& m) {
  try {
    m.gamma = j.at("gamma").get<double>();
    const auto alpha = j.at("alpha").get<std::vector<double>>();
    m.alpha = Eigen::Map<const Vector>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    m.landmarks_ref.clear();
    read_optional(j, "landmarks", m.landmarks_ref);
    m.similarity.reset();
    if (auto it = j.find("similarity"); it != j.end() && !it->is_null())
      m.similarity = it->get<SimilarityFunction>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("model JSON: ") + e.what());
  }
  if (!(m.gamma > 0.0)) throw UsageError("model JSON: gamma must be positive");
}

void to_json(json& j, const TrainReport& r) {
  j = json{{"objective", r.objective},
           {"backend", backend_tag(r.backend)},
           {"iterations", r.iterations},
           {"duality_gap", r.gap}};
}

void to_json(json& j, const BoundReport& r) {
  j = json{{"lipschitz", r.lipschitz},
           {"rho", r.rho},
           {"gamma", r.gamma},
           {"M", r.cells ? json(*r.cells) : json(nullptr)},
           {"log_M", r.log_cells},
           {"B", r.B},
           {"delta", r.delta},
           {"d_l", r.d_l},
           {"term_robust", r.term_robust},
           {"term_stat", real_or_null(r.term_stat)},
           {"bound", real_or_null(r.bound)},
           {"vacuous", r.vacuous}};
  j["empirical_gap"] = r.empirical_gap ? json(*r.empirical_gap) : json(nullptr);
}

void to_json(json& j, const GoodnessEstimate& g) {
  j = json{{"epsilon_hat", g.epsilon_hat},
           {"tau_hat", g.tau_hat},
           {"gamma", g.gamma},
           {"n_reasonable", g.n_reasonable}};
}

void to_json(json& j, const RangeReport& r) {
  j = json{{"min", r.min}, {"max", r.max}, {"violated", r.violated}};
}

void from_json(const json& j, ExperimentConfig& c) {
  try {
    if (auto it = j.find("task"); it != j.end()) {
      const json& t = *it;
      if (auto name = t.find("name"); name != t.end())
        c.task.kind = parse_task(name->get<std::string>());
      read_optional(t, "dim", c.task.dim);
      read_optional(t, "separation", c.task.separation);
      read_optional(t, "noise", c.task.noise);
      if (auto r = t.find("radii"); r != t.end()) {
        const auto radii = r->get<std::vector<double>>();
        if (radii.size() != 2) throw UsageError("task.radii must hold two values");
        c.task.radii = {radii[0], radii[1]};
      }
    }
    if (auto it = j.find("similarity"); it != j.end()) c.similarity = it->get<SimilarityFunction>();
    read_optional(j, "gamma", c.gamma);
    read_optional(j, "grid_side", c.grid_side);
    read_optional(j, "delta", c.delta);
    read_optional(j, "d_l", c.d_l);
    read_optional(j, "d_test", c.d_test);
    read_optional(j, "landmarks", c.landmarks);
    read_optional(j, "trials", c.trials);
    read_optional(j, "master_seed", c.master_seed);
    read_optional(j, "sgd_steps", c.sgd_steps);
    if (auto it = j.find("backend"); it != j.end())
      c.backend = parse_backend(it->get<std::string>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("experiment config JSON: ") + e.what());
  }
}

void to_json(json& j, const ExperimentConfig& c) {
  json task{{"name", task_tag(c.task.kind)}, {"dim", c.task.dim}};
  if (c.task.kind == TaskKind::TwoGaussians) task["separation"] = c.task.separation;
  else {
    task["radii"] = {c.task.radii.first, c.task.radii.second};
    task["noise"] = c.task.noise;
  }
  j = json{{"task", task},
           {"similarity", c.similarity},
           {"gamma", c.gamma},
           {"grid_side", c.grid_side},
           {"delta", c.delta},
           {"d_l", c.d_l},
           {"d_test", c.d_test},
           {"landmarks", c.landmarks},
           {"trials", c.trials},
           {"master_seed", c.master_seed},
           {"backend", backend_tag(c.backend)},
           {"sgd_steps", c.sgd_steps}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace simgood
