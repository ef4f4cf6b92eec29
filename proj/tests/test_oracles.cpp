#include <doctest.h>

#include <cmath>

#include "mdepth/errors.hpp"
#include "mdepth/oracles.hpp"

using namespace mdepth;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

TEST_SUITE("oracles") {
  TEST_CASE("interval and pair laws") {
    CHECK(ed_uniform_interval(0.5) == 0.5);
    CHECK(ed_uniform_interval(0.25) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(ed_uniform_interval(0.0) == 0.0);
    CHECK(ed_uniform_interval(1.0) == 0.0);
    CHECK(ed_uniform_interval(-0.1) == 0.0);
    CHECK(ed_uniform_interval(1.1) == 0.0);
    CHECK(ed_uniform_interval(0.3) == doctest::Approx(ed_uniform_interval(0.7)).epsilon(1e-15));

    CHECK(ed_uniform_pair(0.5) == 0.5);
    CHECK(ed_uniform_pair(0.2) == doctest::Approx(0.2));
    CHECK(ed_uniform_pair(0.8) == doctest::Approx(0.2));
    CHECK(ed_uniform_pair(-0.5) == 0.0);
    CHECK(ed_uniform_pair(2.0) == 0.0);
  }

  TEST_CASE("normal helpers") {
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - 0.8413447460685429).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(pochhammer(3.0, 4) == doctest::Approx(360.0));
    CHECK(pochhammer(7.5, 0) == 1.0);
  }

  TEST_CASE("gaussian radial profile") {
    CHECK(ed_gaussian_radial(0.0) == 0.5);
    // frozen to high-precision values of the closed form
    CHECK(ed_gaussian_radial(0.5) == doctest::Approx(0.22085537967193977).epsilon(1e-13));
    CHECK(ed_gaussian_radial(1.0) == doctest::Approx(0.071415447376825561).epsilon(1e-13));
    CHECK(ed_gaussian_radial(2.0) == doctest::Approx(0.0042096087721968976).epsilon(1e-13));
    CHECK(ed_gaussian_radial(3.0) == doctest::Approx(0.00012735232685491208).epsilon(1e-12));
    CHECK_THROWS_AS(ed_gaussian_radial(-0.5), InvalidInput);

    // independent route: E[(U-r)+] / E|U-r| for U standard normal
    for (double r : {0.1, 0.7, 1.3, 2.5}) {
      const double up = normal_pdf(r) - r * (1.0 - normal_cdf(r));
      const double total = 2.0 * normal_pdf(r) + r * (2.0 * normal_cdf(r) - 1.0);
      CHECK(ed_gaussian_radial(r) == doctest::Approx(up / total).epsilon(1e-13));
    }

    // strictly decreasing in the radius
    double prev = 0.5;
    for (int k = 1; k <= 40; ++k) {
      const double g = ed_gaussian_radial(0.1 * k);
      CHECK(g < prev);
      prev = g;
    }
  }

  TEST_CASE("elliptical reduction") {
    MatrixXd sigma(2, 2);
    sigma << 4.0, 0.0, 0.0, 1.0;
    VectorXd mu(2);
    mu << 1.0, -1.0;
    const EllipticalSpec spec(mu, sigma);
    VectorXd z(2);
    z << 3.0, 0.0;  // offset (2, 1) -> mahalanobis sqrt(1 + 1)
    CHECK(spec.mahalanobis(z) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(ed_gaussian(z, spec) ==
          doctest::Approx(ed_gaussian_radial(std::sqrt(2.0))).epsilon(1e-14));
    CHECK(ed_gaussian(mu, spec) == 0.5);

    MatrixXd asym(2, 2);
    asym << 1.0, 0.4, 0.1, 1.0;
    CHECK_THROWS_AS(EllipticalSpec(mu, asym), InvalidInput);
    MatrixXd notpd(2, 2);
    notpd << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(EllipticalSpec(mu, notpd), InvalidInput);
    CHECK_THROWS_AS(EllipticalSpec(VectorXd::Zero(3), sigma), ShapeMismatch);
    CHECK_THROWS_AS(spec.mahalanobis(VectorXd::Zero(3)), ShapeMismatch);
  }

  TEST_CASE("hypergeometric series against closed forms") {
    // 2F1(1, 1/2; 3/2; x^2) = atanh(x)/x; at x = 1/2 this is ln 3
    CHECK(gauss_2f1_series(0.5, 0.25) == doctest::Approx(1.0986122886681097).epsilon(1e-13));
    // 2F1(1, 1; 3/2; x^2) = asin(x)/(x sqrt(1-x^2))
    CHECK(gauss_2f1_series(1.0, 0.25) == doctest::Approx(1.2091995761561452).epsilon(1e-13));
    // 2F1(1, 3/2; 3/2; x) = 1/(1-x)
    for (double x : {0.0, 0.3, 0.8}) {
      CHECK(gauss_2f1_series(1.5, x) == doctest::Approx(1.0 / (1.0 - x)).epsilon(1e-12));
    }
    CHECK(gauss_2f1_series(2.0, 0.0) == 1.0);
    CHECK_THROWS_AS(gauss_2f1_series(1.0, 1.0), SeriesDiverged);
    CHECK_THROWS_AS(gauss_2f1_series(1.0, -0.2), SeriesDiverged);
  }

  TEST_CASE("ball profile against independent integrals") {
    // frozen quadrature of E[(T-r)+]/E|T-r| with the exact 1D marginal density
    CHECK(ed_uniform_ball(0.25, 2) == doctest::Approx(0.23059959708090265).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.5, 2) == doctest::Approx(0.069086869981445418).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.75, 2) == doctest::Approx(0.0095449571594606187).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.25, 3) == doctest::Approx(0.2033603707995365).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.5, 3) == doctest::Approx(0.049295774647887324).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.75, 3) == doctest::Approx(0.0048355899419729207).epsilon(1e-11));
    CHECK(ed_uniform_ball(0.5, 5) == doctest::Approx(0.026802218114602588).epsilon(1e-11));

    for (int d : {1, 2, 3, 4, 7}) {
      CHECK(ed_uniform_ball(0.0, d) == 0.5);
      CHECK(ed_uniform_ball(1.0, d) == 0.0);
      CHECK(ed_uniform_ball(1.7, d) == 0.0);
      double prev = 0.5;
      for (int k = 1; k < 20; ++k) {
        const double v = ed_uniform_ball(0.05 * k, d);
        CHECK(v < prev);
        prev = v;
      }
    }
    CHECK_THROWS_AS(ed_uniform_ball(0.5, 0), InvalidInput);
    CHECK_THROWS_AS(ed_uniform_ball(-0.1, 2), InvalidInput);
  }

  TEST_CASE("sphere profile and cross-family identities") {
    CHECK(ed_uniform_sphere(0.5, 2) == doctest::Approx(0.15180843280867045).epsilon(1e-11));
    CHECK(ed_uniform_sphere(0.3, 4) == doctest::Approx(0.18832805951479762).epsilon(1e-11));
    // sphere in R^3 carries the interval profile; at r = 1/2 it is exactly 1/10
    CHECK(ed_uniform_sphere(0.5, 3) == doctest::Approx(0.1).epsilon(1e-12));

    for (double r : {0.1, 0.4, 0.8}) {
      // two points on a line
      CHECK(ed_uniform_sphere(r, 1) ==
            doctest::Approx(ed_uniform_pair(0.5 * (1.0 + r))).epsilon(1e-12));
      // interval on a line == sphere bounding it in R^3
      CHECK(ed_uniform_ball(r, 1) ==
            doctest::Approx(ed_uniform_interval(0.5 * (1.0 + r))).epsilon(1e-12));
      CHECK(ed_uniform_sphere(r, 3) == doctest::Approx(ed_uniform_ball(r, 1)).epsilon(1e-12));
      // projection of the sphere in R^4 matches the disk in R^2
      CHECK(ed_uniform_sphere(r, 4) == doctest::Approx(ed_uniform_ball(r, 2)).epsilon(1e-12));
    }
    CHECK(ed_uniform_sphere(0.0, 5) == 0.5);
    CHECK(ed_uniform_sphere(1.0, 5) == 0.0);
    CHECK_THROWS_AS(ed_uniform_sphere(0.5, 0), InvalidInput);
  }

  TEST_CASE("gaussian depth radius inverts the profile") {
    CHECK(gaussian_depth_radius(0.2) == doctest::Approx(0.5491558210993039).epsilon(1e-9));
    for (double a : {0.05, 0.2, 0.35, 0.45}) {
      CHECK(ed_gaussian_radial(gaussian_depth_radius(a)) == doctest::Approx(a).epsilon(1e-9));
    }
    CHECK_THROWS_AS(gaussian_depth_radius(0.0), InvalidInput);
    CHECK_THROWS_AS(gaussian_depth_radius(0.5), InvalidInput);
    CHECK_THROWS_AS(gaussian_depth_radius(0.7), InvalidInput);
  }
}
