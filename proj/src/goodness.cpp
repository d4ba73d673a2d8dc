#include "simgood/goodness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

LabeledSample select_rows(const LabeledSample& sample, const std::vector<bool>& mask) {
  if (mask.size() != sample.size())
    throw UsageError("mask has " + std::to_string(mask.size()) + " entries for " +
                     std::to_string(sample.size()) + " points");
  const auto kept = static_cast<Eigen::Index>(std::count(mask.begin(), mask.end(), true));
  LabeledSample out;
  out.points.resize(kept, sample.dim());
  out.labels.reserve(static_cast<std::size_t>(kept));
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    out.points.row(r++) = sample.points.row(static_cast<Eigen::Index>(i));
    out.labels.push_back(sample.labels[i]);
  }
  return out;
}

double g_value(const Eigen::Ref<const Vector>& x, const LabeledSample& reasonable,
               const SimilarityFunction& f) {
  if (reasonable.size() == 0) throw UsageError("g_value: the reasonable set is empty");
  double total = 0.0;
  for (Eigen::Index j = 0; j < reasonable.points.rows(); ++j)
    total += reasonable.labels[static_cast<std::size_t>(j)] *
             eval_similarity(f, x, reasonable.points.row(j).transpose());
  return total / static_cast<double>(reasonable.size());
}

GoodnessEstimate estimate_goodness(const LabeledSample& sample, const std::vector<bool>& mask,
                                   const SimilarityFunction& f, double gamma) {
  if (!(gamma > 0.0)) throw UsageError("estimate_goodness: gamma must be positive");
  const LabeledSample reasonable = select_rows(sample, mask);
  if (reasonable.size() == 0)
    throw UsageError("estimate_goodness: the mask selects no reasonable points");

  double hinge_total = 0.0;
  for (Eigen::Index i = 0; i < sample.points.rows(); ++i) {
    const double g = g_value(sample.points.row(i).transpose(), reasonable, f);
    const int label = sample.labels[static_cast<std::size_t>(i)];
    hinge_total += std::max(0.0, 1.0 - label * g / gamma);
  }

  GoodnessEstimate est;
  est.gamma = gamma;
  est.n_reasonable = reasonable.size();
  est.tau_hat = static_cast<double>(reasonable.size()) / static_cast<double>(sample.size());
  est.epsilon_hat = hinge_total / static_cast<double>(sample.size());
  return est;
}

}  // namespace simgood
