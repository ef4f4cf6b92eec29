#include "mdepth/simulate.hpp"

#include <cmath>

#include "mdepth/errors.hpp"

namespace mdepth {

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return m;
}

Sample simulate_cigar(int n, std::uint64_t seed) {
  if (n < 3) throw InvalidInput("cigar model needs n >= 3");
  Rng rng(seed);
  Eigen::MatrixXd data(n, 2);
  for (int i = 0; i < n; ++i) {
    data(i, 0) = -1.0 + 2.0 * i / (n - 1);
    data(i, 1) = 0.1 * rng.normal();
  }
  return Sample(std::move(data));
}

RegressionData simulate_hetero(int n, std::uint64_t seed) {
  if (n < 3) throw InvalidInput("heteroskedastic model needs n >= 3");
  Rng rng(seed);
  Eigen::MatrixXd x(n, 1);
  Eigen::MatrixXd y(n, 2);
  for (int i = 0; i < n; ++i) {
    const double xi = rng.uniform();
    const double scale = std::sqrt(xi / 3.0);
    x(i, 0) = xi;
    y(i, 0) = 4.0 * xi + scale * (rng.exponential() - 1.0);
    y(i, 1) = 4.0 * xi + scale * (rng.exponential() - 1.0);
  }
  return RegressionData(std::move(x), std::move(y));
}

}  // namespace mdepth
