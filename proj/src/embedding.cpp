#include "simgood/embedding.hpp"

#include <cmath>
#include <random>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

std::int64_t landmark_count(double tau, double eps1, double gamma, double delta) {
  if (!(tau > 0.0 && tau <= 1.0)) throw UsageError("landmark_count: tau must lie in (0, 1]");
  if (!(eps1 > 0.0)) throw UsageError("landmark_count: eps1 must be positive");
  if (!(gamma > 0.0)) throw UsageError("landmark_count: gamma must be positive");
  if (!(delta > 0.0)) throw UsageError("landmark_count: delta must be positive");
  if (!(delta < gamma * eps1 / 4.0))
    throw UsageError("landmark_count: delta must satisfy delta < gamma*eps1/4 (delta = " +
                     std::to_string(delta) + ", gamma*eps1/4 = " +
                     std::to_string(gamma * eps1 / 4.0) + ")");
  const double log_term = std::log(2.0 / delta);
  const double margin = eps1 * gamma;
  const double count = (2.0 / tau) * (log_term + 16.0 * log_term / (margin * margin));
  return static_cast<std::int64_t>(std::ceil(count));
}

LandmarkSet draw_landmarks(const LabeledSample& sample, std::int64_t count, std::uint64_t seed) {
  if (sample.points.rows() == 0) throw UsageError("draw_landmarks: sample is empty");
  if (count < 1) throw UsageError("draw_landmarks: landmark count must be at least 1");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, sample.points.rows() - 1);
  LandmarkSet set;
  set.source = LandmarkSource::Sampled;
  set.points.resize(count, sample.points.cols());
  for (std::int64_t j = 0; j < count; ++j) set.points.row(j) = sample.points.row(pick(gen));
  return set;
}

LandmarkSet user_landmarks(Matrix points) {
  if (points.rows() == 0) throw UsageError("landmark set is empty");
  rescale_into_unit_ball(points);
  return LandmarkSet{std::move(points), LandmarkSource::UserProvided};
}

Vector embed_point(const Eigen::Ref<const Vector>& x, const LandmarkSet& landmarks,
                   const SimilarityFunction& f) {
  Vector row(landmarks.count());
  for (Eigen::Index j = 0; j < landmarks.count(); ++j)
    row[j] = eval_similarity(f, x, landmarks.points.row(j).transpose());
  return row;
}

EmbeddedSample embed(const LabeledSample& sample, const LandmarkSet& landmarks,
                     const SimilarityFunction& f) {
  if (sample.dim() != f.dim() || landmarks.points.cols() != f.dim())
    throw UsageError("embed: sample dimension " + std::to_string(sample.dim()) +
                     ", landmark dimension " + std::to_string(landmarks.points.cols()) +
                     " and similarity dimension " + std::to_string(f.dim()) + " must agree");
  EmbeddedSample out;
  out.features.resize(sample.points.rows(), landmarks.count());
  for (Eigen::Index i = 0; i < sample.points.rows(); ++i)
    out.features.row(i) = embed_point(sample.points.row(i).transpose(), landmarks, f).transpose();
  out.labels = sample.labels;
  return out;
}

}  // namespace simgood
