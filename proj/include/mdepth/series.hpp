#pragma once

#include <Eigen/Core>
#include <vector>

#include "mdepth/loss.hpp"

namespace mdepth {

// A weighted univariate dataset.  Values are kept sorted ascending with the
// weights permuted to match; weights are normalized to sum to one.
class Series {
 public:
  explicit Series(std::vector<double> values);
  Series(std::vector<double> values, std::vector<double> weights);
  explicit Series(const Eigen::Ref<const Eigen::VectorXd>& values);
  Series(const Eigen::Ref<const Eigen::VectorXd>& values,
         const Eigen::Ref<const Eigen::VectorXd>& weights);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double mean() const;

 private:
  void validate_and_sort();
  std::vector<double> values_;
  std::vector<double> weights_;
};

// Weighted lower psi-mass ratio
//   G(theta) = sum_i w_i |psi_-(z_i - theta)| 1[z_i <= theta] / sum_i w_i |psi_-(z_i - theta)|,
// a CDF in theta whose alpha-level set defines the M-quantile.
double g_function(const Series& s, const LossSpec& loss, double theta);

// Left limit G(theta - 0); differs from g_function only when psi_- jumps at 0
// (absolute loss), where it is the strict lower tail P[Z < theta].
double g_left_limit(const Series& s, const LossSpec& loss, double theta);

// M-quantile of order alpha: inf{theta : G(theta) >= alpha}.
double m_quantile(const Series& s, const LossSpec& loss, Order order);

// Exact weighted expectile by a single scan over the sorted values; the
// quadratic-loss M-quantile with no iteration error.
double expectile_exact(const Series& s, Order order);

// Expectile of an unsorted, uniformly-weighted vector via Newton steps on the
// piecewise-linear first-order condition.  Finite convergence; `theta0` warm
// starts the partition search (useful when sweeping nearby problems).
double expectile_newton(const Eigen::Ref<const Eigen::VectorXd>& values, Order order,
                        double theta0);

// min(G(theta), 1 - G(theta - 0)): depth of theta in the univariate law.
double univariate_mdepth(const Series& s, const LossSpec& loss, double theta);

// Midpoint of the maximum-depth interval.
double univariate_mmedian(const Series& s, const LossSpec& loss);

}  // namespace mdepth
