#pragma once

#include <vector>

#include "simgood/data.hpp"
#include "simgood/similarity.hpp"

namespace simgood {

/// Sample estimate of how good a similarity is at margin gamma.
struct GoodnessEstimate {
  double epsilon_hat = 0.0;  ///< mean of [1 - l(x) g(x) / gamma]_+ over the sample
  double tau_hat = 0.0;      ///< fraction of reasonable points
  double gamma = 0.0;
  std::size_t n_reasonable = 0;
};

/// Mean of label(x') K(x, x') over the reasonable points x'.
double g_value(const Eigen::Ref<const Vector>& x, const LabeledSample& reasonable,
               const SimilarityFunction& f);

/// The reasonable set is given as a mask over the sample rows; it must be
/// non-empty.
GoodnessEstimate estimate_goodness(const LabeledSample& sample, const std::vector<bool>& mask,
                                   const SimilarityFunction& f, double gamma);

/// Rows of `sample` selected by `mask`.
LabeledSample select_rows(const LabeledSample& sample, const std::vector<bool>& mask);

}  // namespace simgood
