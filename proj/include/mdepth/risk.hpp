#pragma once

#include <Eigen/Core>

#include "mdepth/depth.hpp"
#include "mdepth/sample.hpp"

namespace mdepth {

// Outcome of one coherency check, serializable as a flat report.
struct RiskCheckReport {
  double alpha = 0.0;
  Eigen::VectorXd u;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double tolerance = 1e-9;
};

// Upper halfspace at the directional expectile of order alpha: the elementary
// building block of the coherent risk region.
Hyperplane risk_halfspace(const Sample& sample, Order order, const Direction& u);

// Intersection of risk halfspaces over `count` directions spanning the closed
// positive quadrant arc; clipped to an inflated data box, with edges lying on
// the clip box flagged as representation artifacts.
Region2D upper_envelope_2d(const Sample& sample, Order order, int count);

// For alpha <= 1/2 the set-level subadditivity reduces to the intercepts:
// theta_alpha(u'(X+Y)) >= theta_alpha(u'X) + theta_alpha(u'Y).
RiskCheckReport check_subadditivity(const Sample& x, const Sample& y, Order order,
                                    const Direction& u);

// Mirror inequality for alpha >= 1/2.
RiskCheckReport check_superadditivity(const Sample& x, const Sample& y, Order order,
                                      const Direction& u);

// Componentwise X <= Y and u in the non-negative orthant imply
// theta_alpha(u'X) <= theta_alpha(u'Y).
RiskCheckReport check_monotonicity(const Sample& x, const Sample& y, Order order,
                                   const Direction& u);

}  // namespace mdepth
