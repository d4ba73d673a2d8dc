#pragma once

#include <cstdint>
#include <random>

#include "simgood/similarity.hpp"

namespace simgood {

/// Uniform draw from the closed unit L2 ball in R^d.
Vector sample_unit_ball(Eigen::Index d, std::mt19937_64& gen);

/// Gaussian d x d matrix (symmetrized on request) rescaled to the given
/// spectral norm.
ParamMatrix random_param_matrix(Eigen::Index d, bool symmetric, double spectral,
                                std::uint64_t seed);

struct LipschitzAudit {
  double analytic_l = 0.0;
  double max_ratio = 0.0;  ///< max |K(x,x'') - K(x',x'')| / |x - x'|_2 seen
  std::int64_t triples = 0;
  std::int64_t violations = 0;  ///< triples with ratio > analytic_l + slack
};

/// Randomized audit of the first-argument Lipschitz constant over unit-ball
/// triples. Half of the triples draw x' independently; the other half place
/// x' in a small random neighbourhood of x to probe local slopes.
LipschitzAudit audit_lipschitz(const SimilarityFunction& f, std::int64_t triples,
                               std::uint64_t seed, double slack = 1e-9);

/// Bilinear-family slope along the worst direction: x'' is the top right
/// singular vector v of A, and x - x' points along the top left singular
/// vector u. The returned ratio approaches |A|_2.
double bilinear_directed_ratio(const SimilarityFunction& f);

}  // namespace simgood
