#pragma once

#include <Eigen/Core>
#include <vector>

#include "mdepth/geometry.hpp"

namespace mdepth {

// A multivariate dataset, rows = observations.  Valid samples have n >= d+1
// observations, all finite, and are not carried by a single hyperplane (the
// column-centered matrix has full column rank).
class Sample {
 public:
  explicit Sample(Eigen::MatrixXd data);

  const Eigen::MatrixXd& data() const { return data_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  Eigen::Index n() const { return data_.rows(); }
  Eigen::Index dim() const { return data_.cols(); }

 private:
  Eigen::MatrixXd data_;
  Eigen::VectorXd mean_;
};

// L equispaced unit vectors on the circle, angles 2*pi*l/L.
std::vector<Direction> circle_grid(int count);

// Deterministic, antipodally symmetric covering of the unit sphere in any
// dimension: equispaced circle for d = 2, a Fibonacci spiral plus antipodes
// for d = 3, and a fixed-seed isotropic set plus antipodes for d >= 4.
// Returns at least `count` directions.
std::vector<Direction> sphere_grid(Eigen::Index dim, int count);

}  // namespace mdepth
