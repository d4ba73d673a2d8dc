#pragma once

#include <string_view>

#include "simgood/data.hpp"

namespace simgood {

/// Square, finite d x d parameter matrix. No symmetry or definiteness is
/// required.
class ParamMatrix {
 public:
  ParamMatrix() = default;
  /// Throws UsageError unless `entries` is square, non-empty and finite.
  explicit ParamMatrix(Matrix entries);

  static ParamMatrix identity(Eigen::Index d);

  const Matrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

enum class Family {
  MahalanobisAffine,  ///< 1 - (x-y)^T A (x-y)
  Bilinear,           ///< x^T A y
  Exponential,        ///< exp(-(x-y)^T A (x-y) / (2 sigma^2))
};

std::string_view family_tag(Family family);  ///< "k1" | "k2" | "k3"
Family parse_family(std::string_view tag);

struct SimilarityFunction {
  Family family = Family::Bilinear;
  ParamMatrix A;
  double sigma = 1.0;  ///< only read by Family::Exponential

  Eigen::Index dim() const { return A.dim(); }
  /// Throws UsageError when sigma <= 0 (or non-finite) for the exponential family.
  void validate() const;
};

SimilarityFunction make_similarity(Family family, ParamMatrix A, double sigma = 1.0);

/// K(x, x2). Throws UsageError on dimension mismatch and NumericError if the
/// result is not finite.
double eval_similarity(const SimilarityFunction& f, const Eigen::Ref<const Vector>& x,
                       const Eigen::Ref<const Vector>& x2);

inline constexpr double kSpectralTol = 1e-10;
inline constexpr int kSpectralMaxIter = 10'000;

/// Largest singular value by power iteration on A^T A.
///
/// The iteration is run from two fixed start vectors (the normalized
/// all-ones vector and a fixed pseudo-random one) and the larger estimate is
/// kept, so the result is reproducible and does not collapse when the
/// all-ones vector happens to be orthogonal to the top singular direction.
/// Stops when the relative change of the Rayleigh quotient drops below `tol`.
/// Throws NumericError (carrying the last estimate) after `max_iter` steps.
double spectral_norm(const ParamMatrix& A, double tol = kSpectralTol,
                     int max_iter = kSpectralMaxIter);

/// Top singular triple (sigma, u, v) with A v = sigma u, same iteration as
/// spectral_norm.
struct SingularTriple {
  double value = 0.0;
  Vector left;
  Vector right;
};
SingularTriple top_singular_triple(const ParamMatrix& A, double tol = kSpectralTol,
                                   int max_iter = kSpectralMaxIter);

/// Analytic Lipschitz constant of K w.r.t. its first argument on the unit
/// ball: 4|A| for k1, |A| for k2 and
/// (2|A|/sigma^2)(exp(1/(2 sigma^2)) - exp(-1/(2 sigma^2))) for k3.
double lipschitz_constant(const SimilarityFunction& f);

struct RangeReport {
  double min = 0.0;
  double max = 0.0;
  bool violated = false;  ///< some value falls outside [-1, 1]
};

/// Min/max of K over all (point, landmark) pairs. Values are never clamped;
/// leaving [-1, 1] is reported, not thrown.
RangeReport validate_range(const SimilarityFunction& f, const Matrix& points,
                           const Matrix& landmarks);

}  // namespace simgood
