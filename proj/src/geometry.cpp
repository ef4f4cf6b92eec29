#include "mdepth/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mdepth {

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double polygon_scale(const Polygon2D& poly) {
  double s = 1.0;
  for (const auto& v : poly) s = std::max({s, std::abs(v.x()), std::abs(v.y())});
  return s;
}

Polygon2D dedupe(const Polygon2D& poly, double eps) {
  Polygon2D out;
  out.reserve(poly.size());
  for (const auto& v : poly) {
    if (out.empty() || (v - out.back()).norm() > eps) out.push_back(v);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= eps) out.pop_back();
  return out;
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

double Region2D::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      d = std::max(d, (vertices[i] - vertices[j]).norm());
    }
  }
  return d;
}

Eigen::Vector2d Region2D::barycenter() const {
  if (vertices.empty()) throw EmptyRegionError("barycenter of an empty region");
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

Polygon2D clip_polygon_halfplane(const Polygon2D& poly, const Eigen::Vector2d& u, double theta) {
  if (poly.empty()) return {};
  Polygon2D out;
  out.reserve(poly.size() + 2);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    const double da = u.dot(a) - theta;
    const double db = u.dot(b) - theta;
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      out.push_back(a + (da / (da - db)) * (b - a));
    }
  }
  return dedupe(out, 1e-13 * polygon_scale(poly));
}

Polygon2D convex_hull_2d(const std::vector<Eigen::Vector2d>& points) {
  std::vector<Eigen::Vector2d> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Eigen::Vector2d> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_convex_polygon(const Polygon2D& poly, const Eigen::Vector2d& z, double tol) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return (z - poly[0]).norm() <= tol;
  if (poly.size() == 2) return point_segment_distance(z, poly[0], poly[1]) <= tol;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % n];
    const Eigen::Vector2d e = b - a;
    // scale the CCW inside test by the edge length so tol stays a distance
    if (cross2(e, z - a) < -tol * e.norm()) return false;
  }
  return true;
}

double point_polygon_boundary_distance(const Polygon2D& poly, const Eigen::Vector2d& z) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return (z - poly[0]).norm();
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    d = std::min(d, point_segment_distance(z, poly[i], poly[(i + 1) % n]));
  }
  return d;
}

Polygon2D make_box(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  return {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
}

bool region_contains(const Region2D& region, const Eigen::Ref<const Eigen::VectorXd>& z,
                     double tol) {
  if (z.size() != 2) throw ShapeMismatch("region_contains expects a 2-vector");
  for (const auto& h : region.halfspaces) {
    if (!h.upper_contains(z, tol)) return false;
  }
  return !region.halfspaces.empty() || point_in_convex_polygon(region.vertices, z, tol);
}

namespace {

// Distance from a point to a convex region (0 inside).
double point_region_distance(const Eigen::Vector2d& p, const Polygon2D& poly) {
  if (point_in_convex_polygon(poly, p, 0.0)) return 0.0;
  return point_polygon_boundary_distance(poly, p);
}

double directed_hausdorff(const Polygon2D& from, const Polygon2D& to) {
  constexpr int kSubdiv = 64;
  double worst = 0.0;
  const std::size_t n = from.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = from[i];
    const Eigen::Vector2d& b = from[(i + 1) % n];
    for (int s = 0; s < kSubdiv; ++s) {
      const double t = static_cast<double>(s) / kSubdiv;
      worst = std::max(worst, point_region_distance(a + t * (b - a), to));
    }
    if (n == 1) break;
  }
  return worst;
}

}  // namespace

double region_hausdorff(const Region2D& a, const Region2D& b) {
  if (a.empty() || b.empty()) throw EmptyRegionError("hausdorff distance needs non-empty regions");
  return std::max(directed_hausdorff(a.vertices, b.vertices),
                  directed_hausdorff(b.vertices, a.vertices));
}

}  // namespace mdepth
