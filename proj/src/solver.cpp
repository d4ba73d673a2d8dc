#include "simgood/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "simgood/errors.hpp"
#include "simgood/simplex.hpp"

namespace simgood {

namespace {

void check_training_inputs(const EmbeddedSample& data, double gamma) {
  if (!(gamma > 0.0 && std::isfinite(gamma))) throw UsageError("gamma must be positive");
  if (data.size() == 0) throw UsageError("training data is empty");
  if (static_cast<Eigen::Index>(data.size()) != data.features.rows())
    throw UsageError("feature rows and labels disagree");
  if (data.features.cols() == 0) throw UsageError("training data has no landmark columns");
}

// Signed features y_i F_i, one row per example.
Matrix signed_features(const EmbeddedSample& data) {
  Matrix G = data.features;
  for (Eigen::Index i = 0; i < G.rows(); ++i) G.row(i) *= data.labels[static_cast<std::size_t>(i)];
  return G;
}

double mean_hinge(const Matrix& G, const Vector& alpha) {
  return (1.0 - (G * alpha).array()).max(0.0).mean();
}

// Rounding in the LP can leave |alpha|_1 a hair above the radius.
void clip_to_ball(Vector& alpha, double radius) {
  const double l1 = alpha.lpNorm<1>();
  if (l1 > radius) alpha *= radius / l1;
}

}  // namespace

bool SeparatorModel::feasible() const {
  return alpha.allFinite() && l1_norm() <= (1.0 / gamma) * (1.0 + 1e-8);
}

std::string_view backend_tag(Backend backend) {
  return backend == Backend::Lp ? "lp" : "sgd";
}

Backend parse_backend(std::string_view tag) {
  if (tag == "lp") return Backend::Lp;
  if (tag == "sgd" || tag == "subgradient") return Backend::Subgradient;
  throw UsageError("unknown backend '" + std::string(tag) + "' (expected lp or sgd)");
}

double instantaneous_loss(const SeparatorModel& model, const Eigen::Ref<const Vector>& row,
                          int label) {
  if (row.size() != model.alpha.size())
    throw UsageError("feature row has " + std::to_string(row.size()) + " entries, model has " +
                     std::to_string(model.alpha.size()));
  return std::max(0.0, 1.0 - label * model.alpha.dot(row));
}

double empirical_risk(const SeparatorModel& model, const EmbeddedSample& data) {
  if (data.size() == 0) throw UsageError("empirical_risk: data is empty");
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.features.rows(); ++i)
    total += instantaneous_loss(model, data.features.row(i).transpose(),
                                data.labels[static_cast<std::size_t>(i)]);
  return total / static_cast<double>(data.size());
}

double max_instantaneous_loss(const SeparatorModel& model, const EmbeddedSample& data) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < data.features.rows(); ++i)
    worst = std::max(worst, instantaneous_loss(model, data.features.row(i).transpose(),
                                               data.labels[static_cast<std::size_t>(i)]));
  return worst;
}

double dual_lower_bound(const EmbeddedSample& data, double gamma, const Vector& lambda) {
  const Matrix G = signed_features(data);
  const Vector clipped = lambda.cwiseMax(0.0).cwiseMin(1.0 / static_cast<double>(data.size()));
  const double worst_column = (G.transpose() * clipped).cwiseAbs().maxCoeff();
  return clipped.sum() - worst_column / gamma;
}

TrainResult train_lp(const EmbeddedSample& data, double gamma) {
  check_training_inputs(data, gamma);
  const Eigen::Index n = data.features.rows();
  const Eigen::Index k = data.features.cols();
  const Matrix G = signed_features(data);

  // Columns: a+ (k) | a- (k) | xi (n) | surplus s (n) | L1 slack t (1).
  // Rows i < n:  G_i a+ - G_i a- + xi_i - s_i = 1
  // Row n:       sum a+ + sum a- + t = 1/gamma
  const Eigen::Index cols = 2 * k + 2 * n + 1;
  const Eigen::Index xi0 = 2 * k, s0 = 2 * k + n, t_col = 2 * k + 2 * n;
  Matrix A = Matrix::Zero(n + 1, cols);
  A.block(0, 0, n, k) = G;
  A.block(0, k, n, k) = -G;
  A.block(0, xi0, n, n) = Matrix::Identity(n, n);
  A.block(0, s0, n, n) = -Matrix::Identity(n, n);
  A.block(n, 0, 1, 2 * k).setOnes();
  A(n, t_col) = 1.0;
  Vector b = Vector::Ones(n + 1);
  b[n] = 1.0 / gamma;
  Vector c = Vector::Zero(cols);
  c.segment(xi0, n).setConstant(1.0 / static_cast<double>(n));

  // alpha = 0, xi = 1 is a feasible vertex.
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = xi0 + i;
  basis[static_cast<std::size_t>(n)] = t_col;

  const LpSolution sol = solve_standard_form(A, b, c, std::move(basis));

  TrainResult out;
  out.model.gamma = gamma;
  out.model.alpha = sol.x.segment(0, k) - sol.x.segment(k, k);
  clip_to_ball(out.model.alpha, 1.0 / gamma);
  if (!out.model.alpha.allFinite()) throw NumericError("LP returned non-finite coefficients");

  out.report.backend = Backend::Lp;
  out.report.iterations = sol.iterations;
  out.report.objective = mean_hinge(G, out.model.alpha);
  // Reduced cost of the surplus column s_i equals the row multiplier lambda_i.
  const Vector lambda = sol.reduced_costs.segment(s0, n);
  out.report.gap = out.report.objective - dual_lower_bound(data, gamma, lambda);
  return out;
}

Vector project_l1_ball(const Vector& v, double radius) {
  if (!(radius >= 0.0)) throw UsageError("project_l1_ball: radius must be non-negative");
  if (v.lpNorm<1>() <= radius) return v;
  std::vector<double> u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) u[static_cast<std::size_t>(i)] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  Vector w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::max(std::abs(v[i]) - theta, 0.0);
    w[i] = v[i] < 0.0 ? -mag : mag;
  }
  return w;
}

TrainResult train_subgradient(const EmbeddedSample& data, double gamma,
                              const SubgradientOptions& options) {
  check_training_inputs(data, gamma);
  if (options.steps < 1) throw UsageError("train_subgradient: steps must be at least 1");
  const Eigen::Index n = data.features.rows();
  const Eigen::Index k = data.features.cols();
  const double radius = 1.0 / gamma;
  const double scale = options.step_scale > 0.0 ? options.step_scale : radius;
  const Matrix G = signed_features(data);

  Vector alpha = Vector::Zero(k);
  if (options.seed != 0) {
    // Uniform point of the L1 ball: normalized exponentials with random signs.
    std::mt19937_64 gen(options.seed);
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);
    double total = expo(gen);
    for (Eigen::Index j = 0; j < k; ++j) {
      alpha[j] = expo(gen);
      total += alpha[j];
    }
    for (Eigen::Index j = 0; j < k; ++j) alpha[j] *= (coin(gen) ? radius : -radius) / total;
  }

  Vector best = alpha;
  double best_obj = mean_hinge(G, alpha);
  Vector margins(n);
  Vector grad(k);
  std::int64_t t = 1;
  for (; t <= options.steps; ++t) {
    margins.noalias() = G * alpha;
    grad.setZero();
    double obj = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (margins[i] < 1.0) {
        obj += 1.0 - margins[i];
        grad -= G.row(i).transpose();
      }
    }
    obj /= static_cast<double>(n);
    grad /= static_cast<double>(n);
    if (obj < best_obj) {
      best_obj = obj;
      best = alpha;
    }
    if (grad.squaredNorm() == 0.0) break;  // zero subgradient: alpha is optimal
    alpha = project_l1_ball(alpha - (scale / std::sqrt(static_cast<double>(t))) * grad, radius);
  }
  const double last_obj = mean_hinge(G, alpha);
  if (last_obj < best_obj) {
    best_obj = last_obj;
    best = alpha;
  }

  TrainResult out;
  out.model.gamma = gamma;
  out.model.alpha = std::move(best);
  out.report.backend = Backend::Subgradient;
  out.report.iterations = static_cast<int>(std::min(t, options.steps));
  out.report.objective = best_obj;
  Vector lambda(n);
  const Vector final_margins = G * out.model.alpha;
  for (Eigen::Index i = 0; i < n; ++i)
    lambda[i] = final_margins[i] < 1.0 ? 1.0 / static_cast<double>(n) : 0.0;
  out.report.gap = best_obj - dual_lower_bound(data, gamma, lambda);
  return out;
}

}  // namespace simgood
