#include "doctest.h"

#include "simgood/errors.hpp"
#include "simgood/simplex.hpp"

using namespace simgood;
using doctest::Approx;

TEST_CASE("textbook LP in standard form") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), value 36
  Matrix A(3, 5);
  A << 1, 0, 1, 0, 0,
       0, 2, 0, 1, 0,
       3, 2, 0, 0, 1;
  Vector b(3);
  b << 4, 12, 18;
  Vector c(5);
  c << -3, -5, 0, 0, 0;
  const auto sol = solve_standard_form(A, b, c, {2, 3, 4});
  CHECK(sol.objective == Approx(-36.0));
  CHECK(sol.x[0] == Approx(2.0));
  CHECK(sol.x[1] == Approx(6.0));
  CHECK((sol.reduced_costs.array() >= -1e-12).all());
}

TEST_CASE("degenerate LP terminates") {
  // Beale's cycling example under the textbook Dantzig rule.
  Matrix A(3, 7);
  A << 0.25, -8, -1, 9, 1, 0, 0,
       0.5, -12, -0.5, 3, 0, 1, 0,
       0, 0, 1, 0, 0, 0, 1;
  Vector b(3);
  b << 0, 0, 1;
  Vector c(7);
  c << -0.75, 20, -0.5, 6, 0, 0, 0;
  const auto sol = solve_standard_form(A, b, c, {4, 5, 6});
  CHECK(sol.objective == Approx(-1.25));
}

TEST_CASE("unbounded and bad inputs") {
  Matrix A(1, 2);
  A << 1, -1;
  Vector b(1);
  b << 1;
  Vector c(2);
  c << 0, -1;
  CHECK_THROWS_AS(solve_standard_form(A, b, c, {0}), NumericError);

  Vector neg(1);
  neg << -1;
  CHECK_THROWS_AS(solve_standard_form(A, neg, c, {0}), UsageError);
  CHECK_THROWS_AS(solve_standard_form(A, b, c, {5}), UsageError);
  CHECK_THROWS_AS(solve_standard_form(A, b, Vector::Zero(3), {0}), UsageError);
}
