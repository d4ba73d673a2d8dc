#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace simgood {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Labeled examples, one per row of `points`. Every row lies in the unit
/// L2 ball and every label is -1 or +1.
struct LabeledSample {
  Matrix points;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  Eigen::Index dim() const { return points.cols(); }

  /// Throws UsageError when rows/labels disagree, a label is not +-1 or a
  /// row leaves the unit ball (with a 1e-12 slack for rounding).
  void validate() const;
};

/// Divides every row by the largest row norm when that norm exceeds 1.
/// Returns the applied factor (1 when nothing changed).
double rescale_into_unit_ball(Matrix& points);

/// Balanced classes from isotropic gaussians centred at +-(separation/2) e1,
/// globally rescaled so the largest row norm is exactly 1.
LabeledSample gen_two_gaussians(std::size_t n, std::size_t d, double separation,
                                std::uint64_t seed);

/// Two concentric shells (annuli for d = 2) with isotropic gaussian noise.
/// Label +1 on the inner radius, -1 on the outer one.
LabeledSample gen_circles(std::size_t n, std::size_t d,
                          std::pair<double, double> radii, double noise,
                          std::uint64_t seed);

struct LoadedSample {
  LabeledSample sample;
  double scale = 1.0;  ///< factor applied to bring rows into the unit ball
};

/// Reads `f1,...,fd,label` CSV. Labels must be -1 or 1.
LoadedSample load_csv(const std::filesystem::path& path);

/// Writes `f1,...,fd,label` CSV with 17 significant digits.
void save_csv(const LabeledSample& sample, const std::filesystem::path& path);
void write_csv(const LabeledSample& sample, std::ostream& out);

/// Reads a headerless or `f1,...` headed CSV of reals (one point per row).
Matrix load_points_csv(const std::filesystem::path& path);
void save_points_csv(const Matrix& points, const std::filesystem::path& path);

/// One boolean per line (`0/1` or `true/false`).
std::vector<bool> load_mask_csv(const std::filesystem::path& path);

}  // namespace simgood
