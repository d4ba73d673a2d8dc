#include "doctest.h"

#include <cmath>
#include <random>

#include "simgood/audit.hpp"
#include "simgood/errors.hpp"
#include "simgood/robustness.hpp"

using namespace simgood;
using doctest::Approx;

TEST_CASE("grid geometry") {
  auto g = make_grid(1, 2.0);
  CHECK(g.cell_count == 2.0);
  CHECK(g.rho == 2.0);
  g = make_grid(2, 1.0);
  CHECK(g.cell_count == 8.0);
  CHECK(g.rho == Approx(std::sqrt(2.0)));
  g = make_grid(3, 0.3);  // ceil(2/0.3) = 7 cells per axis
  CHECK(g.cells_per_axis == 7);
  CHECK(g.cell_count == 2.0 * 343);
  CHECK_THROWS_AS(make_grid(2, 2.5), UsageError);
  CHECK_THROWS_AS(make_grid(2, 0.0), UsageError);
}

TEST_CASE("huge grids keep ln M and mark the bound vacuous") {
  const auto g = make_grid(2000, 0.01);
  CHECK_FALSE(g.cell_count.has_value());
  CHECK(g.log_cell_count == Approx(std::log(2.0) + 2000 * std::log(200.0)));
  const auto r = generalization_bound_log(1.0, g.rho, 1.0, g.log_cell_count, 0.05, 1000);
  CHECK(r.vacuous);
  CHECK(std::isinf(r.bound));
  CHECK(r.term_robust == Approx(g.rho));
}

TEST_CASE("build_cover invariants") {
  const auto s = gen_two_gaussians(300, 2, 1.0, 4);
  for (double side : {0.25, 0.5, 1.0, 2.0}) {
    const auto cover = build_cover(s, side);
    REQUIRE(cover.cell_of.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (cover.cell_of[i] != cover.cell_of[j]) continue;
        CHECK(s.labels[i] == s.labels[j]);
        CHECK((s.points.row(static_cast<Eigen::Index>(i)) -
               s.points.row(static_cast<Eigen::Index>(j)))
                  .norm() <= cover.rho + 1e-12);
      }
    }
    CHECK(static_cast<double>(cover.occupied.size()) <= *cover.cell_count);
  }
}

TEST_CASE("identical points with equal labels share a cell") {
  LabeledSample s;
  s.points = Matrix(3, 2);
  s.points << 0.1, -0.7, 0.1, -0.7, 0.1, -0.7;
  s.labels = {1, 1, -1};
  for (double side : {0.1, 0.5, 2.0}) {
    const auto c = build_cover(s, side);
    CHECK(c.cell_of[0] == c.cell_of[1]);
    CHECK(c.cell_of[0] != c.cell_of[2]);
  }
}

TEST_CASE("boundary points stay in the grid") {
  const auto g = make_grid(2, 0.5);
  Vector corner(2);
  corner << 1.0, -1.0;
  const auto key = g.locate(corner, 1);
  CHECK(key.coords[0] == 3);
  CHECK(key.coords[1] == 0);
}

TEST_CASE("robustness_epsilon") {
  CHECK(robustness_epsilon(4, 0.1, 0.5) == Approx(0.8));
  CHECK(robustness_epsilon(4, 0.0, 0.5) == 0.0);
  CHECK(robustness_epsilon(1, 1, 1) == 1.0);
}

TEST_CASE("generalization_bound worked example") {
  const auto r = generalization_bound(4, 0.1, 0.5, 8, 0.05, 1000);
  CHECK(r.B == 3.0);
  CHECK(r.term_robust == Approx(0.8));
  // 3 sqrt((16 ln 2 + 2 ln 20) / 1000)
  CHECK(r.term_stat == Approx(0.392094).epsilon(1e-5));
  CHECK(r.bound == Approx(1.192094).epsilon(1e-5));
  CHECK(r.bound == r.term_robust + r.term_stat);
  CHECK_FALSE(r.vacuous);
}

TEST_CASE("bound decomposition and monotonicity") {
  double prev_stat = INFINITY;
  for (std::int64_t n : {10, 100, 1000, 10000}) {
    const auto r = generalization_bound(2.0, 0.3, 0.7, 32, 0.1, n);
    CHECK(r.term_stat < prev_stat);
    CHECK(r.term_robust == Approx(2.0 * 0.3 / 0.7));
    CHECK(r.bound == r.term_robust + r.term_stat);
    prev_stat = r.term_stat;
    CHECK(generalization_bound(2.0, 0.3, 0.7, 32, 0.1, 4 * n).term_stat * 2.0 == r.term_stat);
  }
  CHECK_THROWS_AS(generalization_bound(1, 1, 1, 8, 1.0, 10), UsageError);
  CHECK_THROWS_AS(generalization_bound(1, 1, 1, 8, 0.1, 0), UsageError);
  CHECK_THROWS_AS(generalization_bound(1, 1, 0, 8, 0.1, 10), UsageError);
}

TEST_CASE("shrinking the grid trades term_robust for term_stat") {
  const double l = 1.0, gamma = 0.5;
  double prev_robust = INFINITY, prev_stat = 0.0;
  for (double side : {2.0, 1.0, 0.5, 0.25}) {
    const auto g = make_grid(2, side);
    const auto r = generalization_bound(l, g.rho, gamma, *g.cell_count, 0.05, 500);
    CHECK(r.term_robust < prev_robust);
    CHECK(r.term_stat >= prev_stat);
    prev_robust = r.term_robust;
    prev_stat = r.term_stat;
  }
}

TEST_CASE("same_cell_loss_gap") {
  const auto s = gen_two_gaussians(80, 2, 3.0, 12);
  const auto f = make_similarity(Family::MahalanobisAffine, ParamMatrix::identity(2));
  const auto L = draw_landmarks(s, 8, 3);
  const auto fit = train_lp(embed(s, L, f), 0.5);
  const double l = lipschitz_constant(f);

  const LabeledPoint z{s.points.row(0).transpose(), s.labels[0]};
  CHECK(same_cell_loss_gap(fit.model, f, L, z, z) == 0.0);

  std::mt19937_64 gen(1);
  for (int t = 0; t < 2000; ++t) {
    const LabeledPoint a{sample_unit_ball(2, gen), 1};
    const LabeledPoint b{sample_unit_ball(2, gen), 1};
    const double gap = same_cell_loss_gap(fit.model, f, L, a, b);
    CHECK(gap <= l * (a.x - b.x).norm() / fit.model.gamma + 1e-9);
  }

  const LabeledPoint other{z.x, -z.label};
  CHECK_THROWS_AS(same_cell_loss_gap(fit.model, f, L, z, other), UsageError);
}

TEST_CASE("same-cell gap stays below l rho / gamma") {
  const auto train = gen_two_gaussians(120, 2, 2.0, 21);
  const auto test = gen_two_gaussians(120, 2, 2.0, 22);
  const auto f = make_similarity(Family::Bilinear, random_param_matrix(2, false, 1.0, 5));
  const auto L = draw_landmarks(train, 6, 9);
  const auto fit = train_lp(embed(train, L, f), 0.8);
  const double l = lipschitz_constant(f);

  LabeledSample all;
  all.points.resize(240, 2);
  all.points << train.points, test.points;
  all.labels = train.labels;
  all.labels.insert(all.labels.end(), test.labels.begin(), test.labels.end());
  const auto cover = build_cover(all, 0.5);
  const double eps = robustness_epsilon(l, cover.rho, fit.model.gamma);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (cover.cell_of[i] != cover.cell_of[j]) continue;
      ++pairs;
      const LabeledPoint a{all.points.row(static_cast<Eigen::Index>(i)).transpose(), all.labels[i]};
      const LabeledPoint b{all.points.row(static_cast<Eigen::Index>(j)).transpose(), all.labels[j]};
      CHECK(same_cell_loss_gap(fit.model, f, L, a, b) <= eps + 1e-9);
    }
  CHECK(pairs > 0);
}

TEST_CASE("empirical_gap") {
  const auto s = gen_two_gaussians(50, 2, 2.0, 1);
  const auto t = gen_two_gaussians(50, 2, 2.0, 2);
  const auto f = make_similarity(Family::Bilinear, ParamMatrix::identity(2));
  const auto L = draw_landmarks(s, 5, 1);
  const auto es = embed(s, L, f), et = embed(t, L, f);
  const auto fit = train_lp(es, 1.0);
  CHECK(empirical_gap(fit.model, es, es) == 0.0);
  SeparatorModel zero;
  zero.alpha = Vector::Zero(5);
  CHECK(empirical_gap(zero, es, et) == 0.0);
  CHECK(empirical_gap(fit.model, es, et) ==
        Approx(std::abs(empirical_risk(fit.model, et) - empirical_risk(fit.model, es))));
  CHECK_THROWS_AS(empirical_gap(fit.model, es, EmbeddedSample{Matrix(0, 5), {}}), UsageError);
}
