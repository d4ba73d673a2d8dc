#pragma once

#include "json.hpp"

#include "simgood/experiment.hpp"
#include "simgood/goodness.hpp"
#include "simgood/robustness.hpp"
#include "simgood/solver.hpp"

namespace simgood {

// {"d": int, "entries": row-major d*d reals}
void to_json(nlohmann::json& j, const ParamMatrix& A);
void from_json(const nlohmann::json& j, ParamMatrix& A);

// {"family": "k1"|"k2"|"k3", "A": ParamMatrix, "sigma": real?}
void to_json(nlohmann::json& j, const SimilarityFunction& f);
void from_json(const nlohmann::json& j, SimilarityFunction& f);

// {"gamma", "alpha", "landmarks", "similarity"}
void to_json(nlohmann::json& j, const SeparatorModel& m);
void from_json(const nlohmann::json& j, SeparatorModel& m);

void to_json(nlohmann::json& j, const TrainReport& r);
void to_json(nlohmann::json& j, const BoundReport& r);
void to_json(nlohmann::json& j, const GoodnessEstimate& g);
void to_json(nlohmann::json& j, const RangeReport& r);

/// Every field optional; missing ones keep ExperimentConfig defaults.
void from_json(const nlohmann::json& j, ExperimentConfig& c);
void to_json(nlohmann::json& j, const ExperimentConfig& c);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace simgood
