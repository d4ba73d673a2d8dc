#include "simgood/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

namespace {

// Rounding slack for range checks: |x| <= 1 data can produce 1 + ulp.
constexpr double kRangeSlack = 1e-12;

double quadratic_form(const Matrix& A, const Eigen::Ref<const Vector>& diff) {
  return diff.dot(A * diff);
}

struct PowerResult {
  double lambda = 0.0;  // Rayleigh quotient of A^T A
  Vector v;
};

PowerResult power_iterate(const Matrix& A, Vector v, double tol, int max_iter) {
  v.normalize();
  Vector Av = A * v;
  double lambda = Av.squaredNorm();
  for (int it = 0; it < max_iter; ++it) {
    Vector w = A.transpose() * Av;
    // residual of the eigen-pair (lambda, v) of A^T A; bounds the eigenvalue error
    if ((w - lambda * v).norm() <= tol * lambda) return {lambda, v};
    const double wn = w.norm();
    if (wn == 0.0) return {0.0, v};
    v = w / wn;
    Av = A * v;
    lambda = Av.squaredNorm();
  }
  throw NumericError("spectral_norm: power iteration did not converge in " +
                         std::to_string(max_iter) + " iterations",
                     std::sqrt(lambda));
}

}  // namespace

ParamMatrix::ParamMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw UsageError("parameter matrix must be square and non-empty, got " +
                     std::to_string(entries_.rows()) + "x" +
                     std::to_string(entries_.cols()));
  if (!entries_.allFinite()) throw UsageError("parameter matrix has non-finite entries");
}

ParamMatrix ParamMatrix::identity(Eigen::Index d) {
  return ParamMatrix(Matrix::Identity(d, d));
}

std::string_view family_tag(Family family) {
  switch (family) {
    case Family::MahalanobisAffine: return "k1";
    case Family::Bilinear: return "k2";
    case Family::Exponential: return "k3";
  }
  return "?";
}

Family parse_family(std::string_view tag) {
  if (tag == "k1") return Family::MahalanobisAffine;
  if (tag == "k2") return Family::Bilinear;
  if (tag == "k3") return Family::Exponential;
  throw UsageError("unknown similarity family '" + std::string(tag) +
                   "' (expected k1, k2 or k3)");
}

void SimilarityFunction::validate() const {
  if (A.dim() == 0) throw UsageError("similarity has no parameter matrix");
  if (family == Family::Exponential && !(sigma > 0.0 && std::isfinite(sigma)))
    throw UsageError("sigma must be positive for the exponential family");
}

SimilarityFunction make_similarity(Family family, ParamMatrix A, double sigma) {
  SimilarityFunction f{family, std::move(A), sigma};
  f.validate();
  return f;
}

double eval_similarity(const SimilarityFunction& f, const Eigen::Ref<const Vector>& x,
                       const Eigen::Ref<const Vector>& x2) {
  const auto d = f.dim();
  if (x.size() != d || x2.size() != d)
    throw UsageError("similarity expects dimension " + std::to_string(d) + ", got " +
                     std::to_string(x.size()) + " and " + std::to_string(x2.size()));
  const Matrix& A = f.A.entries();
  double value = 0.0;
  switch (f.family) {
    case Family::MahalanobisAffine:
      value = 1.0 - quadratic_form(A, x - x2);
      break;
    case Family::Bilinear:
      value = x.dot(A * x2);
      break;
    case Family::Exponential:
      value = std::exp(-quadratic_form(A, x - x2) / (2.0 * f.sigma * f.sigma));
      break;
  }
  if (!std::isfinite(value)) throw NumericError("similarity value is not finite", value);
  return value;
}

SingularTriple top_singular_triple(const ParamMatrix& A, double tol, int max_iter) {
  if (!(tol > 0.0)) throw UsageError("spectral_norm: tol must be positive");
  const Matrix& M = A.entries();
  const auto d = M.cols();

  PowerResult best = power_iterate(M, Vector::Ones(d), tol, max_iter);

  // Second fixed start; guards against an all-ones vector orthogonal to the
  // top right singular vector.
  std::mt19937_64 gen(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector alt(d);
  for (auto i = 0; i < d; ++i) alt[i] = unif(gen);
  PowerResult other = power_iterate(M, std::move(alt), tol, max_iter);
  if (other.lambda > best.lambda) best = std::move(other);

  SingularTriple t;
  t.value = std::sqrt(best.lambda);
  t.right = best.v;
  Vector Av = M * best.v;
  t.left = t.value > 0.0 ? Vector(Av / Av.norm()) : Vector(Vector::Unit(d, 0));
  return t;
}

double spectral_norm(const ParamMatrix& A, double tol, int max_iter) {
  return top_singular_triple(A, tol, max_iter).value;
}

double lipschitz_constant(const SimilarityFunction& f) {
  f.validate();
  const double norm = spectral_norm(f.A);
  switch (f.family) {
    case Family::MahalanobisAffine: return 4.0 * norm;
    case Family::Bilinear: return norm;
    case Family::Exponential: {
      const double s2 = f.sigma * f.sigma;
      const double a = 1.0 / (2.0 * s2);
      return (2.0 * norm / s2) * (std::exp(a) - std::exp(-a));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

RangeReport validate_range(const SimilarityFunction& f, const Matrix& points,
                           const Matrix& landmarks) {
  RangeReport r;
  r.min = std::numeric_limits<double>::infinity();
  r.max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < landmarks.rows(); ++j) {
      const double v = eval_similarity(f, points.row(i).transpose(),
                                       landmarks.row(j).transpose());
      r.min = std::min(r.min, v);
      r.max = std::max(r.max, v);
    }
  }
  if (points.rows() == 0 || landmarks.rows() == 0) {
    r.min = r.max = 0.0;
    return r;
  }
  r.violated = r.min < -1.0 - kRangeSlack || r.max > 1.0 + kRangeSlack;
  return r;
}

}  // namespace simgood
