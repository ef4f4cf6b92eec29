#include "mdepth/risk.hpp"

#include <cmath>
#include <numbers>

#include "mdepth/errors.hpp"
#include "mdepth/series.hpp"

namespace mdepth {

namespace {

double directional_expectile(const Sample& sample, Order order, const Direction& u) {
  if (u.dim() != sample.dim()) throw ShapeMismatch("direction dimension mismatch");
  const Eigen::VectorXd proj = sample.data() * u.u;
  return expectile_newton(proj, order, proj.mean());
}

void require_paired(const Sample& x, const Sample& y) {
  if (x.n() != y.n() || x.dim() != y.dim()) {
    throw ShapeMismatch("paired samples must share both n and d");
  }
}

}  // namespace

Hyperplane risk_halfspace(const Sample& sample, Order order, const Direction& u) {
  return Hyperplane{u, directional_expectile(sample, order, u)};
}

Region2D upper_envelope_2d(const Sample& sample, Order order, int count) {
  if (sample.dim() != 2) throw ShapeMismatch("planar envelope needs a bivariate sample");
  if (count < 2) throw InvalidInput("envelope needs at least two directions");

  const Eigen::Vector2d lo = sample.data().colwise().minCoeff();
  const Eigen::Vector2d hi = sample.data().colwise().maxCoeff();
  const Eigen::Vector2d pad = 0.1 * (hi - lo);
  const Eigen::Vector2d box_lo = lo - pad;
  const Eigen::Vector2d box_hi = hi + pad;

  Region2D region;
  region.clip_box = {{box_lo, box_hi}};
  Polygon2D poly = make_box(box_lo, box_hi);
  for (int l = 0; l < count; ++l) {
    const double phi = 0.5 * std::numbers::pi * l / (count - 1);
    const Direction u(Eigen::Vector2d(std::cos(phi), std::sin(phi)));
    const double theta = directional_expectile(sample, order, u);
    region.halfspaces.push_back(Hyperplane{u, theta});
    if (!poly.empty()) poly = clip_polygon_halfplane(poly, u.u.head<2>(), theta);
  }
  region.vertices = std::move(poly);

  // Edges collinear with a side of the clip box are artifacts of the finite
  // representation of the (unbounded) envelope.
  const double tol =
      1e-9 * std::max({1.0, box_hi.cwiseAbs().maxCoeff(), box_lo.cwiseAbs().maxCoeff()});
  const std::size_t nv = region.vertices.size();
  region.edge_clipped.assign(nv, false);
  for (std::size_t i = 0; i < nv; ++i) {
    const Eigen::Vector2d& a = region.vertices[i];
    const Eigen::Vector2d& b = region.vertices[(i + 1) % nv];
    for (int axis = 0; axis < 2; ++axis) {
      for (const double side : {box_lo[axis], box_hi[axis]}) {
        if (std::abs(a[axis] - side) <= tol && std::abs(b[axis] - side) <= tol) {
          region.edge_clipped[i] = true;
        }
      }
    }
  }
  return region;
}

RiskCheckReport check_subadditivity(const Sample& x, const Sample& y, Order order,
                                    const Direction& u) {
  require_paired(x, y);
  if (order.alpha > 0.5) {
    throw PreconditionViolated("subadditivity check needs alpha <= 1/2");
  }
  const Sample sum(x.data() + y.data());
  RiskCheckReport report;
  report.alpha = order.alpha;
  report.u = u.u;
  report.lhs = directional_expectile(sum, order, u);
  report.rhs = directional_expectile(x, order, u) + directional_expectile(y, order, u);
  report.holds = report.lhs >= report.rhs - report.tolerance;
  return report;
}

RiskCheckReport check_superadditivity(const Sample& x, const Sample& y, Order order,
                                      const Direction& u) {
  require_paired(x, y);
  if (order.alpha < 0.5) {
    throw PreconditionViolated("superadditivity check needs alpha >= 1/2");
  }
  const Sample sum(x.data() + y.data());
  RiskCheckReport report;
  report.alpha = order.alpha;
  report.u = u.u;
  report.lhs = directional_expectile(sum, order, u);
  report.rhs = directional_expectile(x, order, u) + directional_expectile(y, order, u);
  report.holds = report.lhs <= report.rhs + report.tolerance;
  return report;
}

RiskCheckReport check_monotonicity(const Sample& x, const Sample& y, Order order,
                                   const Direction& u) {
  require_paired(x, y);
  if (((y.data() - x.data()).array() < -1e-12).any()) {
    throw PreconditionViolated("monotonicity check needs X <= Y componentwise");
  }
  if ((u.u.array() < -1e-12).any()) {
    throw PreconditionViolated("monotonicity check needs a non-negative direction");
  }
  RiskCheckReport report;
  report.alpha = order.alpha;
  report.u = u.u;
  report.lhs = directional_expectile(x, order, u);
  report.rhs = directional_expectile(y, order, u);
  report.holds = report.lhs <= report.rhs + report.tolerance;
  return report;
}

}  // namespace mdepth
