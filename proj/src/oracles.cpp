#include "mdepth/oracles.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "mdepth/errors.hpp"

namespace mdepth {

EllipticalSpec::EllipticalSpec(Eigen::VectorXd mean, Eigen::MatrixXd scatter)
    : mu(std::move(mean)), sigma(std::move(scatter)) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != mu.size()) {
    throw ShapeMismatch("scatter matrix shape does not match the mean");
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInput("scatter matrix must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("scatter matrix must be positive definite");
  }
}

double EllipticalSpec::mahalanobis(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  if (z.size() != mu.size()) throw ShapeMismatch("point dimension does not match the law");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  const Eigen::VectorXd w = llt.matrixL().solve(z - mu);
  return w.norm();
}

double ed_uniform_interval(double z) {
  if (z < 0.0 || z > 1.0) return 0.0;
  const double a = z * z;
  const double b = (1.0 - z) * (1.0 - z);
  const double den = a + b;
  return den > 0.0 ? std::min(a, b) / den : 0.5;
}

double ed_uniform_pair(double z) {
  if (z < 0.0 || z > 1.0) return 0.0;
  return std::min(z, 1.0 - z);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ed_gaussian_radial(double r) {
  if (!(r >= 0.0)) throw InvalidInput("radius must be >= 0");
  if (r == 0.0) return 0.5;
  const double brace = (2.0 / r) * normal_pdf(r) + 2.0 * normal_cdf(r) - 1.0;
  return 0.5 - 1.0 / (2.0 * brace);
}

double ed_gaussian(const Eigen::Ref<const Eigen::VectorXd>& z, const EllipticalSpec& spec) {
  return ed_gaussian_radial(spec.mahalanobis(z));
}

double gamma_fn(double x) { return std::tgamma(x); }

double pochhammer(double a, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

double gauss_2f1_series(double b, double x) {
  if (!(x >= 0.0 && x < 1.0)) throw SeriesDiverged("hypergeometric series needs 0 <= x < 1");
  // 2F1(1, b; 3/2; x): term ratio (b+k)/(3/2+k) * x
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 10000; ++k) {
    term *= (b + k) / (1.5 + k) * x;
    sum += term;
    if (std::abs(term) < 1e-14) return sum;
  }
  return sum;  // capped; only reached in the slow r -> 1 corner
}

namespace {

// Radial profile shared by the uniform ball family, indexed so that the unit
// ball in R^d uses index d and the unit sphere in R^d uses index d - 2.
double omega_index(int d, double r) {
  if (!(r >= 0.0)) throw InvalidInput("radius must be >= 0");
  if (d < -1) throw InvalidInput("profile index must be >= -1");
  if (r >= 1.0) return 0.0;
  if (r == 0.0) return 0.5;
  const double r2 = r * r;
  const double f = gauss_2f1_series(0.5 * (d + 2), r2);
  const double prefactor = std::sqrt(std::numbers::pi) * r *
                           std::pow(1.0 - r2, -0.5 * (d + 1)) * gamma_fn(0.5 * (d + 3)) /
                           (2.0 * gamma_fn(0.5 * (d + 2)));
  return 0.5 - prefactor / (1.0 + (d + 1) * r2 * f);
}

}  // namespace

double ed_uniform_ball(double r, int dim) {
  if (dim < 1) throw InvalidInput("ball dimension must be >= 1");
  return omega_index(dim, r);
}

double ed_uniform_sphere(double r, int dim) {
  if (dim < 1) throw InvalidInput("sphere dimension must be >= 1");
  return omega_index(dim - 2, r);
}

double gaussian_depth_radius(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InvalidInput("gaussian depth radius needs alpha in (0, 1/2)");
  }
  double lo = 0.0, hi = 1.0;
  while (ed_gaussian_radial(hi) > alpha) hi *= 2.0;  // profile decreases to 0
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ed_gaussian_radial(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mdepth
