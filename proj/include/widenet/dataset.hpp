#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "widenet/rng.hpp"

namespace widenet {

struct DataPoint {
  std::vector<double> x;
  double y = 0.0;
};

// Fixed training set (x^(i), y^(i)), i = 0..M-1, defining the uniform sampling
// distribution and the target vector. Index order is construction order and
// never changes: targets, kernel rows and trajectory components all index by
// it. Immutable after construction; shareable across replicas.
class Dataset {
 public:
  // Validates M >= 1, finite coordinates, equal dimensions and pairwise
  // distinct inputs (exact comparison; +-0 compare equal).
  explicit Dataset(std::vector<DataPoint> points);

  // CSV with mandatory header x_1,...,x_d,y. Errors name the offending line.
  static Dataset from_csv(const std::string& path);

  std::size_t size() const { return points_.size(); }  // M
  std::size_t dim() const { return dim_; }             // d

  const DataPoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const DataPoint> points() const { return points_; }

  // Input vectors in index order (kernel estimation needs no targets).
  const std::vector<std::vector<double>>& inputs() const { return inputs_; }

  // (y^(0), ..., y^(M-1)) in index order.
  Eigen::VectorXd targets() const;

  // Uniform index draw; consumes exactly one uniform from the stream.
  std::size_t sample_index(Rng& rng) const;

  const DataPoint& sample_pair(Rng& rng) const { return points_[sample_index(rng)]; }

 private:
  std::vector<DataPoint> points_;
  std::vector<std::vector<double>> inputs_;
  std::size_t dim_ = 0;
};

}  // namespace widenet
