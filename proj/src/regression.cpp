#include "mdepth/regression.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mdepth/errors.hpp"
#include "mdepth/sample.hpp"
#include "mdepth/series.hpp"

namespace mdepth {

RegressionData::RegressionData(Eigen::MatrixXd covariates, Eigen::MatrixXd responses)
    : x(std::move(covariates)), y(std::move(responses)) {
  if (x.rows() != y.rows()) throw ShapeMismatch("covariates and responses must pair up");
  if (y.cols() < 1) throw InvalidInput("responses need at least one coordinate");
  if (y.rows() < x.cols() + 2) throw InvalidInput("regression needs n >= p + 2 observations");
  if (!x.allFinite() || !y.allFinite()) throw InvalidInput("regression data must be finite");
}

EngineSpec EngineSpec::local(double h, Kernel k) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("local engine needs bandwidth > 0");
  return {Type::local, h, k};
}

EngineSpec parse_engine(const std::string& text) {
  if (text == "linear") return EngineSpec::linear();
  if (text.rfind("local:", 0) == 0) {
    const std::string rest = text.substr(6);
    const auto colon = rest.find(':');
    const std::string htext = colon == std::string::npos ? rest : rest.substr(0, colon);
    double h = 0.0;
    try {
      std::size_t used = 0;
      h = std::stod(htext, &used);
      if (used != htext.size()) throw std::invalid_argument(htext);
    } catch (const std::exception&) {
      throw InvalidInput("malformed bandwidth in engine '" + text + "'");
    }
    Kernel k = Kernel::gaussian;
    if (colon != std::string::npos) {
      const std::string kname = rest.substr(colon + 1);
      if (kname == "gaussian") {
        k = Kernel::gaussian;
      } else if (kname == "epanechnikov") {
        k = Kernel::epanechnikov;
      } else {
        throw InvalidInput("unknown kernel '" + kname + "'");
      }
    }
    return EngineSpec::local(h, k);
  }
  throw InvalidInput("unknown engine '" + text + "' (expected linear|local:H[:kernel])");
}

std::string to_string(const EngineSpec& engine) {
  if (engine.type == EngineSpec::Type::linear) return "linear";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "local:%.17g:%s", engine.bandwidth,
                engine.kernel == Kernel::gaussian ? "gaussian" : "epanechnikov");
  return buf;
}

double RegressionFit::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() + 1 != beta.size()) throw ShapeMismatch("covariate dimension mismatch");
  return beta[0] + beta.tail(beta.size() - 1).dot(x);
}

RegressionFit linear_expectile_fit(const RegressionData& data, Order order, const Direction& u,
                                   const FitOptions& opts) {
  if (u.dim() != data.d()) throw ShapeMismatch("response direction dimension mismatch");
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  if (p > 0) design.rightCols(p) = data.x;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p + 1) throw RankDeficient("design matrix has collinear columns");

  const Eigen::VectorXd target = data.y * u.u;
  const double a = order.alpha;

  // Asymmetric least squares by iterative reweighting; weights depend on beta
  // only through residual signs, so the iteration settles in finitely many
  // distinct configurations (capped by max_iter).
  Eigen::VectorXd beta = qr.solve(target);
  RegressionFit fit{u, a, beta, 0, false};
  Eigen::VectorXd w(n), sqw(n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    const Eigen::VectorXd resid = target - design * beta;
    for (Eigen::Index i = 0; i < n; ++i) w[i] = resid[i] >= 0.0 ? a : 1.0 - a;
    sqw = w.cwiseSqrt();
    const Eigen::MatrixXd dw = sqw.asDiagonal() * design;
    const Eigen::VectorXd tw = sqw.cwiseProduct(target);
    const Eigen::VectorXd next = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(dw).solve(tw);
    const double change = (next - beta).cwiseAbs().maxCoeff();
    beta = next;
    fit.iterations = it;
    if (change <= opts.tol) {
      fit.converged = true;
      break;
    }
  }
  fit.beta = beta;
  return fit;
}

namespace {

double kernel_weight(Kernel kernel, double t) {
  switch (kernel) {
    case Kernel::gaussian:
      return std::exp(-0.5 * t * t);
    case Kernel::epanechnikov: {
      const double q = 1.0 - t * t;
      return q > 0.0 ? 0.75 * q : 0.0;
    }
  }
  return 0.0;
}

Eigen::VectorXd local_weights(const RegressionData& data,
                              const Eigen::Ref<const Eigen::VectorXd>& x0, double bandwidth,
                              Kernel kernel) {
  if (x0.size() != data.p()) throw ShapeMismatch("covariate dimension mismatch");
  if (!(bandwidth > 0.0)) throw InvalidInput("local engine needs bandwidth > 0");
  const Eigen::Index n = data.n();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (data.x.row(i).transpose() - x0).norm() / bandwidth;
    w[i] = kernel_weight(kernel, t);
  }
  const double total = w.sum();
  const double ess = total > 0.0 ? total * total / w.squaredNorm() : 0.0;
  if (!(ess >= 5.0)) {
    throw InsufficientLocalData("kernel mass at the evaluation point spans fewer than 5 points");
  }
  return w;
}

double weighted_expectile(const Eigen::VectorXd& values, const Eigen::VectorXd& weights,
                          Order order) {
  // Collect the positive-weight subsample; a constant target short-circuits.
  std::vector<double> v, w;
  v.reserve(values.size());
  w.reserve(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) {
      v.push_back(values[i]);
      w.push_back(weights[i]);
    }
  }
  if (v.empty()) throw InsufficientLocalData("no positive kernel weight at evaluation point");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*lo == *hi) return *lo;
  return expectile_exact(Series(std::move(v), std::move(w)), order);
}

}  // namespace

double local_expectile_fit(const RegressionData& data, Order order, const Direction& u,
                           const Eigen::Ref<const Eigen::VectorXd>& x0, double bandwidth,
                           Kernel kernel) {
  if (u.dim() != data.d()) throw ShapeMismatch("response direction dimension mismatch");
  const Eigen::VectorXd w = local_weights(data, x0, bandwidth, kernel);
  return weighted_expectile(data.y * u.u, w, order);
}

Hyperplane conditional_halfspace(const RegressionData& data, Order order, const Direction& u,
                                 const Eigen::Ref<const Eigen::VectorXd>& x,
                                 const EngineSpec& engine) {
  if (engine.type == EngineSpec::Type::linear) {
    const RegressionFit fit = linear_expectile_fit(data, order, u);
    return Hyperplane{u, fit.predict(x)};
  }
  return Hyperplane{u, local_expectile_fit(data, order, u, x, engine.bandwidth, engine.kernel)};
}

Region2D conditional_region_2d(const RegressionData& data, Order order,
                               const Eigen::Ref<const Eigen::VectorXd>& x, int count,
                               const EngineSpec& engine) {
  if (data.d() != 2) throw ShapeMismatch("planar conditional regions need bivariate responses");
  if (count < 1) throw InvalidInput("region needs a non-empty direction grid");

  const Eigen::Vector2d lo = data.y.colwise().minCoeff();
  const Eigen::Vector2d hi = data.y.colwise().maxCoeff();
  const Eigen::Vector2d pad = 0.1 * (hi - lo);

  // Kernel weights depend only on x, so compute them once for local engines.
  Eigen::VectorXd weights;
  if (engine.type == EngineSpec::Type::local) {
    weights = local_weights(data, x, engine.bandwidth, engine.kernel);
  }

  Region2D region;
  region.halfspaces.reserve(count);
  Polygon2D poly = make_box(lo - pad, hi + pad);
  for (const Direction& u : circle_grid(count)) {
    double theta = 0.0;
    if (engine.type == EngineSpec::Type::linear) {
      theta = linear_expectile_fit(data, order, u).predict(x);
    } else {
      theta = weighted_expectile(data.y * u.u, weights, order);
    }
    region.halfspaces.push_back(Hyperplane{u, theta});
    if (!poly.empty()) poly = clip_polygon_halfplane(poly, u.u.head<2>(), theta);
  }
  region.vertices = std::move(poly);
  return region;
}

}  // namespace mdepth
