#pragma once

#include <Eigen/Core>

namespace mdepth {

// Elliptical reference law with mean mu and SPD scatter sigma.
struct EllipticalSpec {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;

  EllipticalSpec(Eigen::VectorXd mean, Eigen::MatrixXd scatter);

  // sqrt((z - mu)' sigma^{-1} (z - mu))
  double mahalanobis(const Eigen::Ref<const Eigen::VectorXd>& z) const;
};

// Population expectile depth of z under the uniform law on [0, 1]:
// min(z^2, (1-z)^2) / (z^2 + (1-z)^2), zero outside the interval.
double ed_uniform_interval(double z);

// Same for the symmetric two-point law on {0, 1}: min(z, 1-z) on [0, 1].
double ed_uniform_pair(double z);

// Radial profile of the expectile depth of the standard Gaussian:
// g(r) = 1/2 - 1 / (2 ((2/r) phi(r) + 2 Phi(r) - 1)), with g(0) = 1/2.
double ed_gaussian_radial(double r);

// Expectile depth of z under N(mu, sigma), by elliptical reduction to the
// Mahalanobis radius.
double ed_gaussian(const Eigen::Ref<const Eigen::VectorXd>& z, const EllipticalSpec& spec);

// Expectile depth at radius r for the uniform law on the unit ball in R^d.
double ed_uniform_ball(double r, int dim);

// Expectile depth at radius r for the uniform law on the unit sphere in R^d,
// which shares the radial profile of the (d-2)-indexed ball family.
double ed_uniform_sphere(double r, int dim);

// Radius at which the Gaussian radial profile equals alpha (0 < alpha < 1/2).
double gaussian_depth_radius(double alpha);

// Hypergeometric 2F1(1, b; 3/2; x) for 0 <= x < 1 by direct series.
double gauss_2f1_series(double b, double x);

// Small helpers used by the closed forms, exposed for validation.
double gamma_fn(double x);
double pochhammer(double a, int k);
double normal_pdf(double x);
double normal_cdf(double x);

}  // namespace mdepth
