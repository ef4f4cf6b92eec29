#include "mdepth/depth.hpp"

#include <Eigen/Householder>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mdepth/parallel.hpp"

namespace mdepth {

namespace {

constexpr double kPi = std::numbers::pi;

// Minimizes f over [a, b] by golden-section; returns the best value, leaves
// the best abscissa in xmin.  f is assumed unimodal on the bracket.
template <class F>
double golden_min(F&& f, double a, double b, double xtol, double& xmin) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  if (fc < fd) {
    xmin = c;
    return fc;
  }
  xmin = d;
  return fd;
}

// Quadratic-loss directional objective over a fixed evaluation point.
class ExpectileObjective {
 public:
  ExpectileObjective(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& z)
      : centered_(sample.data().rowwise() - z.transpose()) {
    if (z.size() != sample.dim()) throw ShapeMismatch("evaluation point dimension mismatch");
  }

  double operator()(const Eigen::VectorXd& u) const {
    const Eigen::ArrayXd s = (centered_ * u).array();
    const double den = s.abs().sum();
    if (!(den > 0.0)) {
      throw DegenerateDenominator("all projections coincide with the evaluation point");
    }
    ++evals_;
    return -s.min(0.0).sum() / den;
  }

  long evals() const { return evals_; }
  const Eigen::MatrixXd& centered() const { return centered_; }

 private:
  Eigen::MatrixXd centered_;
  mutable long evals_ = 0;
};

}  // namespace

double directional_outlyingness(const Sample& sample, const LossSpec& loss,
                                const Eigen::Ref<const Eigen::VectorXd>& z, const Direction& u) {
  if (z.size() != sample.dim() || u.dim() != sample.dim()) {
    throw ShapeMismatch("direction/point dimension mismatch");
  }
  const Eigen::VectorXd proj = sample.data() * u.u;
  const double t = u.u.dot(z);
  const Eigen::Index n = proj.size();
  double num = 0.0, den = 0.0;
  switch (loss.kind) {
    case LossSpec::Kind::absolute: {
      Eigen::Index count = 0;
      for (Eigen::Index i = 0; i < n; ++i) count += proj[i] <= t;
      return static_cast<double>(count) / static_cast<double>(n);
    }
    case LossSpec::Kind::quadratic: {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = proj[i] - t;
        den += std::abs(d);
        if (d <= 0.0) num += -d;
      }
      break;
    }
    default: {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double m = std::abs(psi_minus(loss, proj[i] - t));
        den += m;
        if (proj[i] <= t) num += m;
      }
      break;
    }
  }
  if (!(den > 0.0)) {
    throw DegenerateDenominator("all projections coincide with the evaluation point");
  }
  return num / den;
}

DepthResult mdepth_grid(const Sample& sample, const LossSpec& loss,
                        const Eigen::Ref<const Eigen::VectorXd>& z,
                        const std::vector<Direction>& directions) {
  if (directions.empty()) throw InvalidInput("depth needs a non-empty direction grid");
  std::vector<double> values(directions.size());
  parallel_for(directions.size(), [&](std::size_t i) {
    values[i] = directional_outlyingness(sample, loss, z, directions[i]);
  });
  // first minimal index, independent of evaluation order
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  DepthResult result{values[best], directions[best], static_cast<long>(directions.size()), true,
                     std::nullopt};
  return result;
}

namespace {

std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> truncated_means(
    const Sample& sample, const Eigen::MatrixXd& centered, const Eigen::VectorXd& u) {
  const Eigen::VectorXd s = centered * u;
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(sample.dim());
  Eigen::VectorXd upper = Eigen::VectorXd::Zero(sample.dim());
  Eigen::Index n_lower = 0, n_upper = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] <= 0.0) {
      lower += sample.data().row(i).transpose();
      ++n_lower;
    }
    if (s[i] >= 0.0) {
      upper += sample.data().row(i).transpose();
      ++n_upper;
    }
  }
  if (n_lower == 0 || n_upper == 0) return std::nullopt;
  return std::make_pair(lower / static_cast<double>(n_lower),
                        upper / static_cast<double>(n_upper));
}

}  // namespace

DepthResult expectile_depth(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& z,
                            const DepthOptions& opts) {
  const Eigen::Index d = sample.dim();
  const ExpectileObjective objective(sample, z);

  if (d == 1) {
    const Eigen::VectorXd plus = Eigen::VectorXd::Constant(1, 1.0);
    const double ep = objective(plus);
    const double em = objective(-plus);
    Direction arg(ep <= em ? plus : Eigen::VectorXd(-plus));
    DepthResult r{std::min(ep, em), arg, objective.evals(), true, std::nullopt};
    r.certificate = truncated_means(sample, objective.centered(), arg.u);
    return r;
  }

  const std::vector<Direction> scan = sphere_grid(d, std::max(opts.prescan, 4));
  std::vector<double> scan_values(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) scan_values[i] = objective(scan[i].u);
  std::vector<std::size_t> order(scan.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scan_values[a] < scan_values[b]; });
  const int starts = std::min<int>(std::max(opts.restarts, 1), static_cast<int>(scan.size()));

  double best_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_u = scan[order[0]].u;
  bool best_converged = true;

  if (d == 2) {
    const double spacing = 2.0 * kPi / static_cast<double>(scan.size());
    auto on_angle = [&](double phi) {
      return objective(Eigen::Vector2d(std::cos(phi), std::sin(phi)));
    };
    for (int s = 0; s < starts; ++s) {
      const Eigen::VectorXd& u0 = scan[order[s]].u;
      const double phi0 = std::atan2(u0[1], u0[0]);
      double phi_min = phi0;
      const double v = golden_min(on_angle, phi0 - spacing, phi0 + spacing, 1e-10, phi_min);
      if (v < best_value) {
        best_value = v;
        best_u = Eigen::Vector2d(std::cos(phi_min), std::sin(phi_min));
      }
    }
  } else {
    for (int s = 0; s < starts; ++s) {
      Eigen::VectorXd u = scan[order[s]].u;
      double current = scan_values[order[s]];
      bool converged = false;
      for (int sweep = 0; sweep < opts.max_iter; ++sweep) {
        // orthonormal complement of u
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
        const Eigen::MatrixXd Q = qr.householderQ();
        double sweep_gain = 0.0;
        for (Eigen::Index k = 1; k < d; ++k) {
          const Eigen::VectorXd v = Q.col(k);
          auto on_circle = [&](double t) {
            return objective((u * std::cos(t) + v * std::sin(t)).normalized());
          };
          // coarse pass around the whole great circle, then refine
          const int coarse = 16;
          double t_best = 0.0;
          double f_best = current;
          for (int j = 0; j < coarse; ++j) {
            const double t = -kPi + (2.0 * kPi * j) / coarse;
            const double f = on_circle(t);
            if (f < f_best) {
              f_best = f;
              t_best = t;
            }
          }
          const double window = 2.0 * kPi / coarse;
          double t_min = t_best;
          const double f_min = golden_min(on_circle, t_best - window, t_best + window, 1e-9, t_min);
          if (f_min < current) {
            sweep_gain += current - f_min;
            current = f_min;
            u = (u * std::cos(t_min) + v * std::sin(t_min)).normalized();
          }
        }
        if (sweep_gain <= opts.tol) {
          converged = true;
          break;
        }
      }
      if (current < best_value) {
        best_value = current;
        best_u = u;
        best_converged = converged;
      }
    }
  }

  DepthResult result{best_value, Direction::normalized(best_u), objective.evals(), best_converged,
                     std::nullopt};
  result.certificate = truncated_means(sample, objective.centered(), result.argmin.u);
  return result;
}

Hyperplane mquantile_hyperplane(const Sample& sample, const LossSpec& loss, Order order,
                                const Direction& u) {
  if (u.dim() != sample.dim()) throw ShapeMismatch("direction dimension mismatch");
  const Eigen::VectorXd proj = sample.data() * u.u;
  if (loss.kind == LossSpec::Kind::quadratic) {
    return Hyperplane{u, expectile_newton(proj, order, proj.mean())};
  }
  return Hyperplane{u, m_quantile(Series(proj), loss, order)};
}

Region2D depth_region_2d(const Sample& sample, const LossSpec& loss, Order order,
                         const std::vector<Direction>& directions) {
  if (sample.dim() != 2) throw ShapeMismatch("planar regions need a bivariate sample");
  if (directions.empty()) throw InvalidInput("region needs a non-empty direction grid");

  const Eigen::Vector2d lo = sample.data().colwise().minCoeff();
  const Eigen::Vector2d hi = sample.data().colwise().maxCoeff();
  const Eigen::Vector2d pad = 0.1 * (hi - lo);

  Region2D region;
  region.halfspaces.reserve(directions.size());

  // Intercepts per direction.  The quadratic loss takes the Newton path with
  // the previous direction's intercept as warm start; other losses go through
  // the sorted Series solver.
  std::vector<double> theta(directions.size());
  if (loss.kind == LossSpec::Kind::quadratic) {
    double warm = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t l = 0; l < directions.size(); ++l) {
      const Eigen::VectorXd proj = sample.data() * directions[l].u;
      theta[l] = expectile_newton(proj, order, warm);
      warm = theta[l];
    }
  } else {
    parallel_for(directions.size(), [&](std::size_t l) {
      const Eigen::VectorXd proj = sample.data() * directions[l].u;
      theta[l] = m_quantile(Series(proj), loss, order);
    });
  }

  Polygon2D poly = make_box(lo - pad, hi + pad);
  for (std::size_t l = 0; l < directions.size(); ++l) {
    region.halfspaces.push_back(Hyperplane{directions[l], theta[l]});
    if (!poly.empty()) {
      poly = clip_polygon_halfplane(poly, directions[l].u.head<2>(), theta[l]);
    }
  }
  region.vertices = std::move(poly);
  return region;
}

Region2D depth_region_2d(const Sample& sample, const LossSpec& loss, Order order, int count) {
  return depth_region_2d(sample, loss, order, circle_grid(count));
}

namespace {

Eigen::VectorXd median_pattern_search(const Sample& sample, const LossSpec& loss) {
  const Eigen::Index d = sample.dim();
  const std::vector<Direction> grid = sphere_grid(d, 128);
  auto depth_at = [&](const Eigen::VectorXd& z) {
    return mdepth_grid(sample, loss, z, grid).value;
  };
  Eigen::VectorXd z = sample.mean();
  double best = depth_at(z);
  const Eigen::MatrixXd centered = sample.data().rowwise() - sample.mean().transpose();
  const double scale =
      std::sqrt(centered.array().square().sum() / static_cast<double>(sample.n()));
  double step = 0.25 * scale;
  while (step > 1e-4 * std::max(scale, 1e-12)) {
    bool improved = false;
    for (Eigen::Index k = 0; k < d; ++k) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd cand = z;
        cand[k] += sign * step;
        const double v = depth_at(cand);
        if (v > best) {
          best = v;
          z = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return z;
}

Eigen::VectorXd median_region_shrink(const Sample& sample, const LossSpec& loss) {
  const std::vector<Direction> grid = circle_grid(256);
  auto empty_at = [&](double alpha) {
    return depth_region_2d(sample, loss, Order(alpha), grid).empty();
  };
  double lo = 1e-4;
  double hi = 1.0 - 1e-9;
  if (empty_at(lo)) return sample.mean();  // cannot happen for valid samples
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (empty_at(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double alpha = std::max(lo - 1e-3, 1e-4);
  const Region2D region = depth_region_2d(sample, loss, Order(alpha), grid);
  if (region.empty()) return sample.mean();
  return region.barycenter();
}

}  // namespace

Eigen::VectorXd m_median(const Sample& sample, const LossSpec& loss) {
  if (loss.kind == LossSpec::Kind::quadratic) return sample.mean();
  if (sample.dim() == 1) {
    const double med = univariate_mmedian(Series(sample.data().col(0)), loss);
    return Eigen::VectorXd::Constant(1, med);
  }
  if (sample.dim() == 2) return median_region_shrink(sample, loss);
  return median_pattern_search(sample, loss);
}

double tukey_depth_2d_exact(const Sample& sample, const Eigen::Vector2d& z) {
  if (sample.dim() != 2) throw ShapeMismatch("exact sweep needs a bivariate sample");
  const Eigen::Index n = sample.n();
  const Eigen::MatrixXd rel = sample.data().rowwise() - z.transpose();
  const double scale = std::max(1.0, rel.rowwise().norm().maxCoeff());

  std::vector<double> angles;
  angles.reserve(n);
  Eigen::Index at_z = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rel.row(i).norm() <= 1e-12 * scale) {
      ++at_z;  // coincident points lie in every closed halfplane
    } else {
      double a = std::atan2(rel(i, 1), rel(i, 0));
      if (a < 0.0) a += 2.0 * kPi;
      angles.push_back(a);
    }
  }
  const std::size_t m = angles.size();
  if (m == 0) return 1.0;
  std::sort(angles.begin(), angles.end());

  // Critical angles where a rotating open half-circle gains or loses points.
  std::vector<double> critical;
  critical.reserve(2 * m);
  for (double a : angles) {
    critical.push_back(a);
    double b = a - kPi;
    if (b < 0.0) b += 2.0 * kPi;
    critical.push_back(b);
  }
  std::sort(critical.begin(), critical.end());

  // Doubled angle array for wrap-free interval counting.
  std::vector<double> doubled = angles;
  for (double a : angles) doubled.push_back(a + 2.0 * kPi);

  std::size_t max_open = 0;
  for (std::size_t j = 0; j < critical.size(); ++j) {
    const double next = j + 1 < critical.size() ? critical[j + 1] : critical.front() + 2.0 * kPi;
    const double a = 0.5 * (critical[j] + next);
    const auto first = std::upper_bound(doubled.begin(), doubled.end(), a);
    const auto last = std::lower_bound(doubled.begin(), doubled.end(), a + kPi);
    max_open = std::max<std::size_t>(max_open, last - first);
  }

  // A closed half-plane through z misses exactly the points of the opposite
  // open half-circle, so the minimum count is m - max_open (plus ties at z).
  return static_cast<double>(at_z + m - max_open) / static_cast<double>(n);
}

double support_radius(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& origin,
                      const Direction& u) {
  const Eigen::Index d = sample.dim();
  if (origin.size() != d || u.dim() != d) throw ShapeMismatch("support query dimension mismatch");
  const double scale =
      std::max(1.0, (sample.data().rowwise() - origin.transpose()).rowwise().norm().maxCoeff());

  // Membership in the convex support: exact hull test in the plane, smallest
  // directional shadow above it.
  std::function<bool(const Eigen::VectorXd&)> member;
  Polygon2D hull;
  std::vector<Direction> dirs;
  Eigen::VectorXd min_proj;
  if (d == 2) {
    std::vector<Eigen::Vector2d> pts(sample.n());
    for (Eigen::Index i = 0; i < sample.n(); ++i) pts[i] = sample.data().row(i).transpose();
    hull = convex_hull_2d(pts);
    member = [&](const Eigen::VectorXd& p) {
      return point_in_convex_polygon(hull, p.head<2>(), 1e-9 * scale);
    };
  } else if (d == 1) {
    member = [&](const Eigen::VectorXd& p) {
      return p[0] >= sample.data().col(0).minCoeff() - 1e-9 * scale &&
             p[0] <= sample.data().col(0).maxCoeff() + 1e-9 * scale;
    };
  } else {
    dirs = sphere_grid(d, 512);
    min_proj.resize(dirs.size());
    for (std::size_t l = 0; l < dirs.size(); ++l) {
      min_proj[static_cast<Eigen::Index>(l)] = (sample.data() * dirs[l].u).minCoeff();
    }
    member = [&, scale](const Eigen::VectorXd& p) {
      for (std::size_t l = 0; l < dirs.size(); ++l) {
        if (dirs[l].u.dot(p) < min_proj[static_cast<Eigen::Index>(l)] - 1e-9 * scale) return false;
      }
      return true;
    };
  }

  if (!member(origin)) throw OriginOutsideSupport("ray origin lies outside the convex support");
  const double reach = (sample.data().rowwise() - origin.transpose()).rowwise().norm().maxCoeff();
  if (member(origin + reach * u.u)) return reach;
  double lo = 0.0, hi = reach;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (member(origin + mid * u.u)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double mean_test_statistic(const Sample& sample, const Eigen::Ref<const Eigen::VectorXd>& mu0,
                           const DepthOptions& opts) {
  return 0.5 - expectile_depth(sample, mu0, opts).value;
}

}  // namespace mdepth
