#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

#include "mdepth/regression.hpp"
#include "mdepth/sample.hpp"

namespace mdepth {

// Seeded generator with hand-rolled scalar transforms, so streams are
// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on [2^-54, 1 - 2^-54]; never returns an exact endpoint
  double uniform() { return ((gen_() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  double exponential() { return -std::log(1.0 - uniform()); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index n, Eigen::Index d);

// n points with abscissae on the uniform grid over [-1, 1] (endpoints exact)
// and ordinates N(0, 0.01): a nearly one-dimensional cloud of full rank.
Sample simulate_cigar(int n, std::uint64_t seed);

// Heteroskedastic paired-response model: X ~ U[0,1],
// Y_j = 4 X + sqrt(X/3) (E_j - 1) with E_j iid unit exponentials.
RegressionData simulate_hetero(int n, std::uint64_t seed);

}  // namespace mdepth
