#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "simgood/audit.hpp"
#include "simgood/errors.hpp"
#include "simgood/similarity.hpp"

using namespace simgood;
using doctest::Approx;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) out[i++] = e;
  return out;
}

ParamMatrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return ParamMatrix(m);
}

double svd_norm(const ParamMatrix& A) {
  return Eigen::JacobiSVD<Matrix>(A.entries()).singularValues()[0];
}

}  // namespace

TEST_CASE("eval_similarity worked values") {
  const auto I2 = ParamMatrix::identity(2);
  const auto k1 = make_similarity(Family::MahalanobisAffine, I2);
  const auto k2 = make_similarity(Family::Bilinear, I2);

  CHECK(eval_similarity(k1, vec({0.3, -0.2}), vec({0.3, -0.2})) == 1.0);
  CHECK(eval_similarity(k2, vec({1, 0}), vec({0.6, 0.8})) == Approx(0.6));
  CHECK(eval_similarity(k1, vec({1, 0}), vec({0, 1})) == Approx(-1.0));

  for (double sigma : {0.1, 1.0, 7.0}) {
    const auto k3 = make_similarity(Family::Exponential, mat2(2, -1, 0.5, 3), sigma);
    CHECK(eval_similarity(k3, vec({0.1, 0.4}), vec({0.1, 0.4})) == 1.0);
  }
}

TEST_CASE("eval_similarity errors") {
  const auto k2 = make_similarity(Family::Bilinear, ParamMatrix::identity(2));
  CHECK_THROWS_AS(eval_similarity(k2, vec({1, 0, 0}), vec({1, 0})), UsageError);

  const auto huge = make_similarity(Family::Exponential, mat2(-1, 0, 0, -1), 1e-3);
  CHECK_THROWS_AS(eval_similarity(huge, vec({1, 0}), vec({-1, 0})), NumericError);

  CHECK_THROWS_AS(make_similarity(Family::Exponential, ParamMatrix::identity(2), 0.0), UsageError);
  CHECK_THROWS_AS(ParamMatrix(Matrix::Zero(2, 3)), UsageError);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(ParamMatrix{nan}, UsageError);
  CHECK_THROWS_AS(parse_family("k4"), UsageError);
}

TEST_CASE("lipschitz_constant per family") {
  const auto I = ParamMatrix::identity(3);
  CHECK(lipschitz_constant(make_similarity(Family::MahalanobisAffine, I)) == Approx(4.0));
  CHECK(lipschitz_constant(make_similarity(Family::Bilinear, I)) == Approx(1.0));
  // 2 (e^{1/2} - e^{-1/2})
  CHECK(lipschitz_constant(make_similarity(Family::Exponential, I, 1.0)) ==
        Approx(2.0843812).epsilon(1e-7));
}

TEST_CASE("k3 constant decreases with sigma and vanishes") {
  const auto I = ParamMatrix::identity(2);
  double previous = INFINITY;
  for (double sigma : {0.5, 1.0, 2.0, 4.0, 8.0, 30.0}) {
    const double l = lipschitz_constant(make_similarity(Family::Exponential, I, sigma));
    CHECK(l < previous);
    previous = l;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("spectral_norm fixtures") {
  CHECK(spectral_norm(mat2(3, 0, 0, 1)) == Approx(3.0).epsilon(1e-10));
  CHECK(spectral_norm(mat2(0, 0, 0, 0)) == 0.0);
  // A^T A = diag(0, 4)
  CHECK(spectral_norm(mat2(0, 2, 0, 0)) == Approx(2.0).epsilon(1e-10));
  // all-ones start vector lies in the null space of A^T A here
  CHECK(spectral_norm(mat2(1, -1, -1, 1)) == Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(spectral_norm(mat2(1, 0, 0, 1), 0.0), UsageError);
}

TEST_CASE("spectral_norm non-convergence carries the last iterate") {
  // Nearly tied singular values converge slowly; two iterations are not enough.
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, 0.999;
  m = Eigen::Rotation2Dd(0.7).toRotationMatrix() * m;
  try {
    spectral_norm(ParamMatrix(m), 1e-14, 2);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.last_value() > 0.99);
    CHECK(e.last_value() <= 1.0 + 1e-12);
  }
}

TEST_CASE("spectral_norm matches 2x2 closed form and SVD") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const double a = u(gen), b = u(gen), c = u(gen), d = u(gen);
    const double fro2 = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double closed = std::sqrt((fro2 + std::sqrt(fro2 * fro2 - 4 * det * det)) / 2.0);
    const double got = spectral_norm(mat2(a, b, c, d));
    CHECK(got == Approx(closed).epsilon(1e-9));
  }
  for (int t = 0; t < 50; ++t) {
    const auto A = random_param_matrix(5, t % 2 == 0, 1.0 + t, 100 + t);
    CHECK(spectral_norm(A) == Approx(svd_norm(A)).epsilon(1e-9));
  }
}

TEST_CASE("spectral_norm is absolutely homogeneous") {
  for (int t = 0; t < 20; ++t) {
    const auto A = random_param_matrix(4, false, 1.7, 300 + t);
    for (double c : {-3.0, -0.5, 0.25, 10.0}) {
      CHECK(spectral_norm(ParamMatrix(c * A.entries())) ==
            Approx(std::abs(c) * spectral_norm(A)).epsilon(1e-9));
    }
  }
}

TEST_CASE("validate_range") {
  std::mt19937_64 gen(5);
  Matrix pts(40, 2), lms(15, 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) pts.row(i) = sample_unit_ball(2, gen).transpose();
  for (Eigen::Index i = 0; i < lms.rows(); ++i) lms.row(i) = sample_unit_ball(2, gen).transpose();

  const auto k3 = make_similarity(Family::Exponential, ParamMatrix::identity(2), 0.7);
  auto r = validate_range(k3, pts, lms);
  CHECK(r.min > 0.0);
  CHECK(r.max <= 1.0);
  CHECK_FALSE(r.violated);

  const auto k2 = make_similarity(Family::Bilinear, ParamMatrix::identity(2));
  r = validate_range(k2, pts, lms);
  CHECK(r.min >= -1.0);
  CHECK(r.max <= 1.0);
  CHECK_FALSE(r.violated);

  Matrix east(1, 2), west(1, 2);
  east << 1, 0;
  west << -1, 0;
  const auto k1 = make_similarity(Family::MahalanobisAffine,
                                  ParamMatrix(2.0 * Matrix::Identity(2, 2)));
  r = validate_range(k1, east, west);
  CHECK(r.min == Approx(-7.0));
  CHECK(r.violated);

  // indefinite A pushes k3 above 1
  const auto k3_indef = make_similarity(Family::Exponential, mat2(-1, 0, 0, 1), 1.0);
  r = validate_range(k3_indef, east, west);
  CHECK(r.max > 1.0);
  CHECK(r.violated);
}

TEST_CASE("symmetry in arguments for symmetric A") {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 30; ++t) {
    const auto A = random_param_matrix(3, true, 0.8, 40 + t);
    for (Family fam : {Family::MahalanobisAffine, Family::Bilinear, Family::Exponential}) {
      const auto f = make_similarity(fam, A, 0.9);
      const Vector x = sample_unit_ball(3, gen), y = sample_unit_ball(3, gen);
      CHECK(eval_similarity(f, x, y) == Approx(eval_similarity(f, y, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Lipschitz property for k1 and k2 over random triples") {
  for (double scale : {0.25, 1.0, 4.0}) {
    for (bool symmetric : {true, false}) {
      const auto A = random_param_matrix(3, symmetric, scale, symmetric ? 71 : 72);
      for (Family fam : {Family::MahalanobisAffine, Family::Bilinear}) {
        const auto audit = audit_lipschitz(make_similarity(fam, A), 100'000, 17);
        CAPTURE(scale);
        CAPTURE(family_tag(fam));
        CHECK(audit.violations == 0);
        CHECK(audit.max_ratio <= audit.analytic_l + 1e-9);
      }
    }
  }
}

TEST_CASE("Lipschitz property for k3 with PSD A and sigma <= 1") {
  // With A PSD the slope is at most 2|A|/sigma^2 exp(0), which the analytic
  // constant dominates whenever sinh(1/(2 sigma^2)) >= 1/2.
  for (double scale : {0.25, 1.0, 4.0}) {
    Matrix B = random_param_matrix(3, false, 1.0, 81).entries();
    const ParamMatrix A(B.transpose() * B);
    const ParamMatrix scaled(A.entries() * (scale / spectral_norm(A)));
    for (double sigma : {0.5, 1.0}) {
      const auto audit =
          audit_lipschitz(make_similarity(Family::Exponential, scaled, sigma), 100'000, 23);
      CAPTURE(scale);
      CAPTURE(sigma);
      CHECK(audit.violations == 0);
    }
  }
}

TEST_CASE("k3 analytic constant is exceeded for wide kernels") {
  // For A = I the slope of exp(-r^2/(2 sigma^2)) peaks at r = sigma with value
  // exp(-1/2)/sigma, above the analytic constant once sigma >= 2.
  const auto f = make_similarity(Family::Exponential, ParamMatrix::identity(3), 2.0);
  const auto audit = audit_lipschitz(f, 20'000, 3);
  CHECK(audit.max_ratio > audit.analytic_l);
  CHECK(audit.max_ratio <= std::exp(-0.5) / 2.0 + 1e-9);
}

TEST_CASE("bilinear directed construction is near tight") {
  for (int t = 0; t < 20; ++t) {
    const auto A = random_param_matrix(4, t % 2 == 0, 0.5 + t, 500 + t);
    const auto f = make_similarity(Family::Bilinear, A);
    CHECK(bilinear_directed_ratio(f) >= 0.95 * svd_norm(A));
  }
}
