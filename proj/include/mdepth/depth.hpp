#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "mdepth/geometry.hpp"
#include "mdepth/loss.hpp"
#include "mdepth/sample.hpp"
#include "mdepth/series.hpp"

namespace mdepth {

struct DepthOptions {
  double tol = 1e-9;  // stop when a descent sweep improves by less than this
  int max_iter = 64;  // cap on descent sweeps
  int restarts = 8;   // best pre-scan directions kept as starting points
  int prescan = 64;   // size of the coarse direction pre-scan
};

struct DepthResult {
  double value = 0.0;
  Direction argmin;
  long evals = 0;
  bool converged = true;
  // Truncated means below/above the minimizing hyperplane; when both exist the
  // evaluation point lies on the segment joining them.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> certificate;
};

// G evaluated on the projections u'Z_i at u'z: the mass ratio of the lower
// psi-envelope in direction u.  For the quadratic loss this is the
// directional expectile-depth profile sum (u'(z-Z_i))_+ / sum |u'(Z_i-z)|.
double directional_outlyingness(const Sample& sample, const LossSpec& loss,
                                const Eigen::Ref<const Eigen::VectorXd>& z, const Direction& u);

// Depth as the minimum of directional_outlyingness over an explicit grid.
DepthResult mdepth_grid(const Sample& sample, const LossSpec& loss,
                        const Eigen::Ref<const Eigen::VectorXd>& z,
                        const std::vector<Direction>& directions);

// Quadratic-loss (expectile) depth by direct minimization over the sphere:
// coarse pre-scan, then golden-section descent along great circles.
DepthResult expectile_depth(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& z,
                            const DepthOptions& opts = {});

// Hyperplane {z : u'z = theta} with theta the directional M-quantile.
Hyperplane mquantile_hyperplane(const Sample& sample, const LossSpec& loss, Order order,
                                const Direction& u);

// Intersection of the upper M-quantile halfspaces over a direction grid.
Region2D depth_region_2d(const Sample& sample, const LossSpec& loss, Order order,
                         const std::vector<Direction>& directions);
Region2D depth_region_2d(const Sample& sample, const LossSpec& loss, Order order, int count);

// Deepest point: exact mean for the quadratic loss, max-depth interval
// midpoint for d = 1, region shrinking for d = 2, pattern search above.
Eigen::VectorXd m_median(const Sample& sample, const LossSpec& loss);

// Exact bivariate halfspace (Tukey) depth by an angular sweep; reference
// implementation for the absolute-loss specialization.
double tukey_depth_2d_exact(const Sample& sample, const Eigen::Vector2d& z);

// Largest r with origin + r*u still inside the convex support of the sample.
double support_radius(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& origin,
                      const Direction& u);

// 1/2 minus the expectile depth of mu0: zero iff mu0 is the sample mean.
double mean_test_statistic(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& mu0,
                           const DepthOptions& opts = {});

}  // namespace mdepth
