#include "simgood/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "simgood/errors.hpp"

namespace simgood {

namespace {

constexpr double kBallSlack = 1e-12;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_real(const std::string& text, double& value) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

bool looks_like_header(const std::vector<std::string>& fields) {
  double tmp = 0.0;
  return !fields.empty() && !parse_real(fields.front(), tmp);
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17);
  return out;
}

// Parses rows of reals; `trailing_label` splits off the last column.
struct RawTable {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
};

RawTable read_table(const std::filesystem::path& path, bool trailing_label) {
  std::ifstream in = open_for_read(path);
  RawTable table;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (first_content) {
      first_content = false;
      if (looks_like_header(fields)) {
        width = fields.size();
        continue;
      }
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    const std::size_t n_feat = trailing_label ? width - 1 : width;
    if (n_feat == 0) throw ParseError("row has no feature columns", lineno);
    std::vector<double> row(n_feat);
    for (std::size_t k = 0; k < n_feat; ++k) {
      if (!parse_real(fields[k], row[k]))
        throw ParseError("field " + std::to_string(k + 1) + " is not a finite number: '" +
                             trim(fields[k]) + "'",
                         lineno);
    }
    if (trailing_label) {
      double lab = 0.0;
      if (!parse_real(fields.back(), lab) || (lab != 1.0 && lab != -1.0))
        throw ParseError("label must be -1 or 1, got '" + trim(fields.back()) + "'", lineno);
      table.labels.push_back(static_cast<int>(lab));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return m;
}

void write_header(std::ostream& out, Eigen::Index d, bool with_label) {
  for (Eigen::Index k = 0; k < d; ++k) out << (k ? "," : "") << 'f' << (k + 1);
  if (with_label) out << ",label";
  out << '\n';
}

}  // namespace

void LabeledSample::validate() const {
  if (static_cast<std::size_t>(points.rows()) != labels.size())
    throw UsageError("sample has " + std::to_string(points.rows()) + " points but " +
                     std::to_string(labels.size()) + " labels");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1)
      throw UsageError("label " + std::to_string(i) + " is not +-1");
    if (points.row(static_cast<Eigen::Index>(i)).norm() > 1.0 + kBallSlack)
      throw UsageError("point " + std::to_string(i) + " lies outside the unit ball");
  }
}

double rescale_into_unit_ball(Matrix& points) {
  if (points.rows() == 0) return 1.0;
  const double max_norm = points.rowwise().norm().maxCoeff();
  if (max_norm <= 1.0) return 1.0;
  const double scale = 1.0 / max_norm;
  points *= scale;
  return scale;
}

LabeledSample gen_two_gaussians(std::size_t n, std::size_t d, double separation,
                                std::uint64_t seed) {
  if (n < 2) throw UsageError("gen_two_gaussians: n must be at least 2");
  if (d < 1) throw UsageError("gen_two_gaussians: d must be at least 1");
  if (!(separation >= 0.0)) throw UsageError("gen_two_gaussians: separation must be >= 0");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LabeledSample s;
  s.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  s.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = (i % 2 == 0) ? 1 : -1;
    s.labels[i] = label;
    for (std::size_t k = 0; k < d; ++k)
      s.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = normal(gen);
    s.points(static_cast<Eigen::Index>(i), 0) += label * separation / 2.0;
  }
  const double max_norm = s.points.rowwise().norm().maxCoeff();
  if (max_norm > 0.0) s.points /= max_norm;
  return s;
}

LabeledSample gen_circles(std::size_t n, std::size_t d, std::pair<double, double> radii,
                          double noise, std::uint64_t seed) {
  if (n < 2) throw UsageError("gen_circles: n must be at least 2");
  if (d < 2) throw UsageError("gen_circles: d must be at least 2");
  if (!(radii.first >= 0.0 && radii.second >= 0.0) || radii.first == radii.second)
    throw UsageError("gen_circles: radii must be two distinct non-negative values");
  if (!(noise >= 0.0)) throw UsageError("gen_circles: noise must be >= 0");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LabeledSample s;
  s.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  s.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool inner = (i % 2 == 0);
    s.labels[i] = inner ? 1 : -1;
    Vector dir(static_cast<Eigen::Index>(d));
    do {
      for (auto& v : dir) v = normal(gen);
    } while (dir.norm() == 0.0);
    dir *= (inner ? radii.first : radii.second) / dir.norm();
    for (auto& v : dir) v += noise * normal(gen);
    s.points.row(static_cast<Eigen::Index>(i)) = dir.transpose();
  }
  rescale_into_unit_ball(s.points);
  return s;
}

LoadedSample load_csv(const std::filesystem::path& path) {
  RawTable t = read_table(path, /*trailing_label=*/true);
  if (t.rows.empty()) throw ParseError("'" + path.string() + "' contains no examples", 0);
  LoadedSample out;
  out.sample.points = to_matrix(t.rows);
  out.sample.labels = std::move(t.labels);
  out.scale = rescale_into_unit_ball(out.sample.points);
  return out;
}

void write_csv(const LabeledSample& sample, std::ostream& out) {
  const auto old_precision = out.precision(17);
  write_header(out, sample.dim(), true);
  for (Eigen::Index i = 0; i < sample.points.rows(); ++i) {
    for (Eigen::Index k = 0; k < sample.points.cols(); ++k) out << sample.points(i, k) << ',';
    out << sample.labels[static_cast<std::size_t>(i)] << '\n';
  }
  out.precision(old_precision);
}

void save_csv(const LabeledSample& sample, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_csv(sample, out);
}

Matrix load_points_csv(const std::filesystem::path& path) {
  RawTable t = read_table(path, /*trailing_label=*/false);
  if (t.rows.empty()) throw ParseError("'" + path.string() + "' contains no points", 0);
  return to_matrix(t.rows);
}

void save_points_csv(const Matrix& points, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_header(out, points.cols(), false);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index k = 0; k < points.cols(); ++k) out << (k ? "," : "") << points(i, k);
    out << '\n';
  }
}

std::vector<bool> load_mask_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::vector<bool> mask;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "1" || t == "true") mask.push_back(true);
    else if (t == "0" || t == "false") mask.push_back(false);
    else if (lineno == 1) continue;  // header
    else throw ParseError("mask entry must be 0/1 or true/false, got '" + t + "'", lineno);
  }
  return mask;
}

}  // namespace simgood
