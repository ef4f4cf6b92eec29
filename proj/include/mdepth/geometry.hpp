#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "mdepth/errors.hpp"

namespace mdepth {

// A unit vector; direction of projection.  The constructor validates the norm
// to guard against silently denormalized inputs.
struct Direction {
  Eigen::VectorXd u;

  explicit Direction(Eigen::VectorXd v) : u(std::move(v)) {
    if (u.size() == 0) throw InvalidInput("direction must be non-empty");
    if (std::abs(u.norm() - 1.0) > 1e-12) throw InvalidInput("direction must have unit norm");
  }

  static Direction normalized(const Eigen::VectorXd& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero vector");
    return Direction(v / n);
  }

  Eigen::Index dim() const { return u.size(); }
};

// Oriented hyperplane {z : u'z = theta}; its upper closed halfspace is
// {z : u'z >= theta}.
struct Hyperplane {
  Direction u;
  double theta;

  bool upper_contains(const Eigen::Ref<const Eigen::VectorXd>& z, double tol = 1e-9) const {
    return u.u.dot(z) >= theta - tol;
  }
};

using Polygon2D = std::vector<Eigen::Vector2d>;

// Convex planar region as an intersection of upper halfspaces, realized as a
// CCW vertex polygon.  An empty vertex list means the empty region.  When the
// region had to be clipped to a bounding box to stay finite, `clip_box` holds
// that box and `edge_clipped[i]` marks edges lying on it (artifacts of the
// representation rather than true boundary).
struct Region2D {
  std::vector<Hyperplane> halfspaces;
  Polygon2D vertices;
  std::optional<std::array<Eigen::Vector2d, 2>> clip_box;
  std::vector<bool> edge_clipped;

  bool empty() const { return vertices.empty(); }
  double diameter() const;
  Eigen::Vector2d barycenter() const;  // vertex mean; throws on empty
};

// Clips a convex CCW polygon against {v : u'v >= theta} (Sutherland-Hodgman).
Polygon2D clip_polygon_halfplane(const Polygon2D& poly, const Eigen::Vector2d& u, double theta);

// Strict convex hull (collinear points dropped), CCW order.
Polygon2D convex_hull_2d(const std::vector<Eigen::Vector2d>& points);

bool point_in_convex_polygon(const Polygon2D& poly, const Eigen::Vector2d& z, double tol = 1e-9);

// Distance from a point to the boundary of a polygon (min over edges).
double point_polygon_boundary_distance(const Polygon2D& poly, const Eigen::Vector2d& z);

Polygon2D make_box(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi);

// True iff z satisfies every stored halfspace within tol.
bool region_contains(const Region2D& region, const Eigen::Ref<const Eigen::VectorXd>& z,
                     double tol = 1e-9);

// Hausdorff distance between two non-empty convex regions, computed from
// densely sampled boundary points.  Throws EmptyRegionError on empty inputs.
double region_hausdorff(const Region2D& a, const Region2D& b);

}  // namespace mdepth
