#pragma once

#include <Eigen/Core>
#include <string>

#include "mdepth/geometry.hpp"
#include "mdepth/loss.hpp"

namespace mdepth {

// Paired covariates (n x p, p >= 0) and responses (n x d).
struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;

  RegressionData(Eigen::MatrixXd covariates, Eigen::MatrixXd responses);

  Eigen::Index n() const { return y.rows(); }
  Eigen::Index p() const { return x.cols(); }
  Eigen::Index d() const { return y.cols(); }
};

enum class Kernel { gaussian, epanechnikov };

// Conditional single-output engine: global linear fit, or kernel-weighted
// local constant fit with bandwidth h.
struct EngineSpec {
  enum class Type { linear, local };
  Type type = Type::linear;
  double bandwidth = 0.0;
  Kernel kernel = Kernel::gaussian;

  static EngineSpec linear() { return {}; }
  static EngineSpec local(double h, Kernel k = Kernel::gaussian);
};

// Parses "linear" | "local:H" | "local:H:gaussian" | "local:H:epanechnikov".
EngineSpec parse_engine(const std::string& text);
std::string to_string(const EngineSpec& engine);

struct FitOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

// Linear expectile fit of the projected responses u'Y on [1, X].
struct RegressionFit {
  Direction u;
  double alpha;
  Eigen::VectorXd beta;  // intercept first
  int iterations = 0;
  bool converged = false;

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

RegressionFit linear_expectile_fit(const RegressionData& data, Order order, const Direction& u,
                                   const FitOptions& opts = {});

// Kernel-weighted constant expectile of u'Y at covariate point x0.
double local_expectile_fit(const RegressionData& data, Order order, const Direction& u,
                           const Eigen::Ref<const Eigen::VectorXd>& x0, double bandwidth,
                           Kernel kernel = Kernel::gaussian);

// Conditional upper halfspace {z : u'z >= theta_alpha(u'Y | X = x)}.
Hyperplane conditional_halfspace(const RegressionData& data, Order order, const Direction& u,
                                 const Eigen::Ref<const Eigen::VectorXd>& x,
                                 const EngineSpec& engine);

// Conditional expectile region at covariate x over a planar direction grid.
Region2D conditional_region_2d(const RegressionData& data, Order order,
                               const Eigen::Ref<const Eigen::VectorXd>& x, int count,
                               const EngineSpec& engine);

}  // namespace mdepth
