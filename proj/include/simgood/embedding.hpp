#pragma once

#include <cstdint>

#include "simgood/data.hpp"
#include "simgood/similarity.hpp"

namespace simgood {

enum class LandmarkSource { Sampled, UserProvided };

/// Unlabeled landmark points, one per row, each inside the unit ball.
struct LandmarkSet {
  Matrix points;
  LandmarkSource source = LandmarkSource::Sampled;

  Eigen::Index count() const { return points.rows(); }
};

/// Similarity features: entry (i, j) = K(x_i, landmark_j).
struct EmbeddedSample {
  Matrix features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
};

/// Number of landmarks that guarantees, with probability 1 - delta, a
/// separator with hinge loss eps + eps1 at margin gamma:
/// ceil((2/tau)(ln(2/delta) + 16 ln(2/delta) / (eps1 gamma)^2)).
/// Requires 0 < tau <= 1, eps1 > 0, gamma > 0 and 0 < delta < gamma*eps1/4.
std::int64_t landmark_count(double tau, double eps1, double gamma, double delta);

/// d_u rows drawn uniformly with replacement from the sample's points.
LandmarkSet draw_landmarks(const LabeledSample& sample, std::int64_t count, std::uint64_t seed);

/// Wraps externally supplied points (rescaled into the unit ball if needed).
LandmarkSet user_landmarks(Matrix points);

EmbeddedSample embed(const LabeledSample& sample, const LandmarkSet& landmarks,
                     const SimilarityFunction& f);

/// Feature row of a single point.
Vector embed_point(const Eigen::Ref<const Vector>& x, const LandmarkSet& landmarks,
                   const SimilarityFunction& f);

}  // namespace simgood
