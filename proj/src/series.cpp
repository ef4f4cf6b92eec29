#include "mdepth/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdepth/errors.hpp"

namespace mdepth {

namespace {

std::vector<double> to_std(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  weights_.assign(values_.size(), 1.0);
  validate_and_sort();
}

Series::Series(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  validate_and_sort();
}

Series::Series(const Eigen::Ref<const Eigen::VectorXd>& values) : Series(to_std(values)) {}

Series::Series(const Eigen::Ref<const Eigen::VectorXd>& values,
               const Eigen::Ref<const Eigen::VectorXd>& weights)
    : Series(to_std(values), to_std(weights)) {}

void Series::validate_and_sort() {
  const std::size_t n = values_.size();
  if (n < 2) throw InvalidInput("series needs at least two observations");
  if (weights_.size() != n) throw ShapeMismatch("series weight count does not match value count");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("series values must be finite");
  }
  double wsum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidInput("series weights must be finite and >= 0");
    wsum += w;
  }
  if (!(wsum > 0.0)) throw InvalidInput("series weights must have positive sum");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
  std::vector<double> v(n), w(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = values_[idx[k]];
    w[k] = weights_[idx[k]] / wsum;
  }
  values_ = std::move(v);
  weights_ = std::move(w);

  if (values_.front() == values_.back()) {
    throw InvalidInput("series values must not be all identical");
  }
}

double Series::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m += weights_[i] * values_[i];
  return m;
}

double g_function(const Series& s, const LossSpec& loss, double theta) {
  const auto& v = s.values();
  const auto& w = s.weights();
  const std::size_t n = v.size();
  double num = 0.0, den = 0.0;
  switch (loss.kind) {
    case LossSpec::Kind::absolute: {
      // |psi_-| is identically one, so G is the weighted ECDF.
      for (std::size_t i = 0; i < n && v[i] <= theta; ++i) num += w[i];
      return std::min(num, 1.0);
    }
    case LossSpec::Kind::quadratic: {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(v[i] - theta);
        den += w[i] * d;
        if (v[i] <= theta) num += w[i] * d;
      }
      break;
    }
    default: {
      for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(psi_minus(loss, v[i] - theta));
        den += w[i] * m;
        if (v[i] <= theta) num += w[i] * m;
      }
      break;
    }
  }
  if (!(den > 0.0)) {
    throw DegenerateDenominator("all psi mass vanished at the evaluation point");
  }
  return num / den;
}

double g_left_limit(const Series& s, const LossSpec& loss, double theta) {
  if (loss.continuous_psi()) return g_function(s, loss, theta);
  // Jump at zero (absolute-type loss): the limit from the left is the strict
  // lower tail P[Z < theta].
  const auto& v = s.values();
  const auto& w = s.weights();
  double num = 0.0;
  for (std::size_t i = 0; i < v.size() && v[i] < theta; ++i) num += w[i];
  return std::min(num, 1.0);
}

namespace {

// Smallest sorted value whose cumulative weight reaches alpha.
double quantile_walk(const Series& s, double alpha) {
  const auto& v = s.values();
  const auto& w = s.weights();
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    cum += w[i];
    if (cum >= alpha) return v[i];
  }
  return v.back();
}

double bisect_g(const Series& s, const LossSpec& loss, double alpha) {
  double lo = s.min();
  double hi = s.max();
  // G(min) = 0 and G(max) = 1 for every continuous-psi loss, so the bracket
  // invariant G(lo) < alpha <= G(hi) holds from the start.
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g_function(s, loss, mid) >= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double m_quantile(const Series& s, const LossSpec& loss, Order order) {
  if (!loss.continuous_psi()) return quantile_walk(s, order.alpha);
  if (loss.kind == LossSpec::Kind::quadratic) return expectile_exact(s, order);
  return bisect_g(s, loss, order.alpha);
}

double expectile_exact(const Series& s, Order order) {
  const auto& v = s.values();
  const auto& w = s.weights();
  const std::size_t n = v.size();
  const double a = order.alpha;

  // Prefix sums S_k = sum_{i<=k} w_i z_i and W_k = sum_{i<=k} w_i.  On the
  // interval [v_k, v_{k+1}] the first-order condition is linear with root
  //   theta = (a (S_n - S_k) + (1-a) S_k) / (a (1 - W_k) + (1-a) W_k),
  // and exactly one interval brackets its own root.
  std::vector<double> S(n), W(n);
  double sv = 0.0, sw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sv += w[i] * v[i];
    sw += w[i];
    S[i] = sv;
    W[i] = sw;
  }
  const double total = S[n - 1];

  double best = v.front();
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double num = a * (total - S[k]) + (1.0 - a) * S[k];
    const double den = a * (1.0 - W[k]) + (1.0 - a) * W[k];
    if (!(den > 0.0)) continue;
    const double theta = num / den;
    if (theta >= v[k] && theta <= v[k + 1]) return theta;
    const double violation = std::max(v[k] - theta, theta - v[k + 1]);
    if (violation < best_violation) {
      best_violation = violation;
      best = std::min(std::max(theta, v[k]), v[k + 1]);
    }
  }
  // Rounding can push the root marginally outside every interval; fall back to
  // the nearest clamped candidate.
  return best;
}

double expectile_newton(const Eigen::Ref<const Eigen::VectorXd>& values, Order order,
                        double theta0) {
  const Eigen::Index n = values.size();
  if (n < 1) throw InvalidInput("expectile of an empty vector");
  const double a = order.alpha;
  double theta = std::isfinite(theta0) ? theta0 : values.mean();

  // Each step solves the first-order condition exactly for the current sign
  // partition; the piecewise-linear structure makes convergence finite.
  for (int it = 0; it < 64; ++it) {
    double s_hi = 0.0, s_lo = 0.0;
    Eigen::Index n_hi = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = values[i];
      if (z > theta) {
        s_hi += z;
        ++n_hi;
      } else {
        s_lo += z;
      }
    }
    const double den = a * static_cast<double>(n_hi) + (1.0 - a) * static_cast<double>(n - n_hi);
    if (!(den > 0.0)) break;
    const double next = (a * s_hi + (1.0 - a) * s_lo) / den;
    if (next == theta) return theta;
    theta = next;
  }
  return expectile_exact(Series(values), order);
}

double univariate_mdepth(const Series& s, const LossSpec& loss, double theta) {
  const double lo = g_function(s, loss, theta);
  const double hi = 1.0 - g_left_limit(s, loss, theta);
  return std::max(0.0, std::min(lo, hi));
}

namespace {

// For continuous-psi losses G is continuous, so the maximum-depth set is
// {G = 1/2}; its edges are the 1/2-quantile of the series and the reflected
// series.
double median_continuous(const Series& s, const LossSpec& loss) {
  const double lo = m_quantile(s, loss, Order(0.5));
  std::vector<double> neg(s.values().size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -s.values()[i];
  const Series reflected(std::move(neg), s.weights());
  const double hi = -m_quantile(reflected, loss, Order(0.5));
  return 0.5 * (lo + hi);
}

}  // namespace

double univariate_mmedian(const Series& s, const LossSpec& loss) {
  if (loss.continuous_psi()) return median_continuous(s, loss);

  // Step-function case: depth is constant between consecutive values, so data
  // points plus gap midpoints exhaust the candidate depths.
  const auto& v = s.values();
  std::vector<double> cand;
  cand.reserve(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    cand.push_back(v[i]);
    if (i + 1 < v.size() && v[i + 1] > v[i]) cand.push_back(0.5 * (v[i] + v[i + 1]));
  }
  double best = -1.0;
  for (double c : cand) best = std::max(best, univariate_mdepth(s, loss, c));
  double lo = 0.0, hi = 0.0;
  bool seen = false;
  for (double c : cand) {
    if (univariate_mdepth(s, loss, c) >= best - 1e-12) {
      if (!seen) lo = c;
      hi = c;
      seen = true;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mdepth
