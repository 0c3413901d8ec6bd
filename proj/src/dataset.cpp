#include "widenet/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "widenet/errors.hpp"

namespace widenet {

namespace {

// +-0 collapse to one representative; NaN never reaches here (finiteness is
// checked first).
double canonical(double v) { return v == 0.0 ? 0.0 : v; }

bool same_input(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (canonical(a[j]) != canonical(b[j])) return false;
  }
  return true;
}

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  return s.substr(b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) fields.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Dataset::Dataset(std::vector<DataPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw ConfigError("dataset: at least one sample is required");
  dim_ = points_[0].x.size();
  if (dim_ == 0) throw ConfigError("dataset: input dimension must be >= 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.x.size() != dim_) {
      throw ConfigError("dataset: sample " + std::to_string(i) + " has dimension " +
                        std::to_string(p.x.size()) + ", expected " + std::to_string(dim_));
    }
    if (!std::isfinite(p.y)) {
      throw ConfigError("dataset: non-finite target at sample " + std::to_string(i));
    }
    for (double v : p.x) {
      if (!std::isfinite(v)) {
        throw ConfigError("dataset: non-finite coordinate at sample " + std::to_string(i));
      }
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (same_input(points_[i].x, points_[j].x)) {
        throw ConfigError("dataset: duplicate input vectors at samples " + std::to_string(i) +
                          " and " + std::to_string(j));
      }
    }
  }
  inputs_.reserve(points_.size());
  for (const auto& p : points_) inputs_.push_back(p.x);
}

Dataset Dataset::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("dataset: cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file, header required");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "y") {
    throw ConfigError(path + ":1: header must be x_1,...,x_d,y");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j] != "x_" + std::to_string(j + 1)) {
      throw ConfigError(path + ":1: column " + std::to_string(j + 1) + " must be named x_" +
                        std::to_string(j + 1));
    }
  }

  std::vector<DataPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != d + 1) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(d + 1) + " fields, got " + std::to_string(fields.size()));
    }
    DataPoint p;
    p.x.resize(d);
    for (std::size_t j = 0; j <= d; ++j) {
      const std::string& f = fields[j];
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": cannot parse '" + f + "'");
      }
      if (j < d) {
        p.x[j] = v;
      } else {
        p.y = v;
      }
    }
    points.push_back(std::move(p));
  }
  try {
    return Dataset(std::move(points));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Eigen::VectorXd Dataset::targets() const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) y[static_cast<Eigen::Index>(i)] = points_[i].y;
  return y;
}

std::size_t Dataset::sample_index(Rng& rng) const {
  const double u = rng.uniform();
  auto idx = static_cast<std::size_t>(u * static_cast<double>(points_.size()));
  return std::min(idx, points_.size() - 1);
}

}  // namespace widenet
