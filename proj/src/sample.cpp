#include "mdepth/sample.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <random>

#include "mdepth/errors.hpp"

namespace mdepth {

Sample::Sample(Eigen::MatrixXd data) : data_(std::move(data)) {
  const Eigen::Index n = data_.rows();
  const Eigen::Index d = data_.cols();
  if (d < 1) throw InvalidInput("sample needs at least one coordinate");
  if (n < d + 1) throw InvalidInput("sample needs at least d + 1 observations");
  if (!data_.allFinite()) throw InvalidInput("sample entries must be finite");
  mean_ = data_.colwise().mean();
  const Eigen::MatrixXd centered = data_.rowwise() - mean_.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(centered);
  if (qr.rank() < d) {
    throw RankDeficient("sample is carried by a single hyperplane");
  }
}

std::vector<Direction> circle_grid(int count) {
  if (count < 1) throw InvalidInput("direction grid needs at least one direction");
  std::vector<Direction> grid;
  grid.reserve(count);
  for (int l = 0; l < count; ++l) {
    const double phi = 2.0 * std::numbers::pi * l / count;
    grid.push_back(Direction(Eigen::Vector2d(std::cos(phi), std::sin(phi))));
  }
  return grid;
}

namespace {

std::vector<Direction> fibonacci_sphere(int half) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Direction> grid;
  grid.reserve(2 * half);
  for (int i = 0; i < half; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / (2.0 * half);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    Eigen::Vector3d v(r * std::cos(phi), r * std::sin(phi), z);
    v.normalize();
    grid.push_back(Direction(v));
    grid.push_back(Direction(-v));
  }
  return grid;
}

std::vector<Direction> seeded_isotropic(Eigen::Index dim, int half) {
  std::mt19937_64 rng(0x5deece66dULL);
  auto next_normal = [&rng]() {
    // Box-Muller on the raw 53-bit uniform keeps the stream platform-stable.
    const double u1 = ((rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = ((rng() >> 11) + 0.5) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  };
  std::vector<Direction> grid;
  grid.reserve(2 * half);
  for (int i = 0; i < half; ++i) {
    Eigen::VectorXd v(dim);
    double norm = 0.0;
    do {
      for (Eigen::Index k = 0; k < dim; ++k) v[k] = next_normal();
      norm = v.norm();
    } while (!(norm > 1e-8));
    v /= norm;
    grid.push_back(Direction(v));
    grid.push_back(Direction(-v));
  }
  return grid;
}

}  // namespace

std::vector<Direction> sphere_grid(Eigen::Index dim, int count) {
  if (count < 1) throw InvalidInput("direction grid needs at least one direction");
  if (dim < 1) throw InvalidInput("direction grid needs dimension >= 1");
  if (dim == 1) {
    std::vector<Direction> grid;
    grid.push_back(Direction(Eigen::VectorXd::Constant(1, 1.0)));
    grid.push_back(Direction(Eigen::VectorXd::Constant(1, -1.0)));
    return grid;
  }
  if (dim == 2) return circle_grid(count);
  const int half = (count + 1) / 2;
  if (dim == 3) return fibonacci_sphere(half);
  return seeded_isotropic(dim, half);
}

}  // namespace mdepth
