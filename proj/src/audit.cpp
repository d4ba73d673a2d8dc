#include "simgood/audit.hpp"

#include <algorithm>
#include <cmath>

#include "simgood/errors.hpp"

namespace simgood {

Vector sample_unit_ball(Eigen::Index d, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector v(d);
  double norm = 0.0;
  do {
    for (auto& e : v) e = normal(gen);
    norm = v.norm();
  } while (norm == 0.0);
  const double radius = std::pow(unif(gen), 1.0 / static_cast<double>(d));
  return v * (radius / norm);
}

ParamMatrix random_param_matrix(Eigen::Index d, bool symmetric, double spectral,
                                std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix M(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) M(i, j) = normal(gen);
  if (symmetric) M = ((M + M.transpose()) / 2.0).eval();
  const double current = spectral_norm(ParamMatrix(M));
  if (current == 0.0) throw NumericError("random_param_matrix: drew a zero matrix");
  return ParamMatrix(M * (spectral / current));
}

LipschitzAudit audit_lipschitz(const SimilarityFunction& f, std::int64_t triples,
                               std::uint64_t seed, double slack) {
  if (triples < 1) throw UsageError("audit_lipschitz: need at least one triple");
  f.validate();
  const Eigen::Index d = f.dim();
  LipschitzAudit audit;
  audit.analytic_l = lipschitz_constant(f);
  audit.triples = triples;

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::int64_t t = 0; t < triples; ++t) {
    const Vector x = sample_unit_ball(d, gen);
    Vector x1;
    if (t % 2 == 0) {
      x1 = sample_unit_ball(d, gen);
    } else {
      const double step = 1e-3 * unif(gen);
      x1 = x + step * sample_unit_ball(d, gen);
      const double n = x1.norm();
      if (n > 1.0) x1 /= n;
    }
    const Vector x2 = sample_unit_ball(d, gen);
    const double dist = (x - x1).norm();
    if (dist < 1e-12) continue;
    const double ratio = std::abs(eval_similarity(f, x, x2) - eval_similarity(f, x1, x2)) / dist;
    audit.max_ratio = std::max(audit.max_ratio, ratio);
    if (ratio > audit.analytic_l + slack) ++audit.violations;
  }
  return audit;
}

double bilinear_directed_ratio(const SimilarityFunction& f) {
  if (f.family != Family::Bilinear)
    throw UsageError("bilinear_directed_ratio needs the bilinear family");
  const SingularTriple top = top_singular_triple(f.A);
  const Vector x = 0.5 * top.left;
  const Vector x1 = -0.5 * top.left;
  const Vector& x2 = top.right;
  return std::abs(eval_similarity(f, x, x2) - eval_similarity(f, x1, x2)) / (x - x1).norm();
}

}  // namespace simgood
