#pragma once

#include <cmath>
#include <string>

#include "mdepth/errors.hpp"

namespace mdepth {

// Convex, symmetric loss with rho(0) = 0, from the admissible family:
//   absolute   rho(t) = |t|
//   quadratic  rho(t) = t^2
//   power r    rho(t) = |t|^r,  r >= 1
//   huber c    rho(t) = t^2/(2c) for |t| < c,  |t| - c/2 otherwise,  c > 0
struct LossSpec {
  enum class Kind { absolute, quadratic, power, huber };

  Kind kind = Kind::quadratic;
  double param = 0.0;  // exponent for power, threshold for huber

  static LossSpec absolute() { return {Kind::absolute, 0.0}; }
  static LossSpec quadratic() { return {Kind::quadratic, 0.0}; }
  static LossSpec power(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidInput("power loss needs exponent >= 1");
    return {Kind::power, r};
  }
  static LossSpec huber(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("huber loss needs threshold > 0");
    return {Kind::huber, c};
  }

  // True when the left derivative psi_- is continuous everywhere (no jump at 0).
  bool continuous_psi() const {
    switch (kind) {
      case Kind::absolute: return false;
      case Kind::quadratic: return true;
      case Kind::power: return param > 1.0;
      case Kind::huber: return true;
    }
    return true;
  }
};

inline double rho_eval(const LossSpec& loss, double t) {
  const double a = std::abs(t);
  switch (loss.kind) {
    case LossSpec::Kind::absolute: return a;
    case LossSpec::Kind::quadratic: return t * t;
    case LossSpec::Kind::power: return std::pow(a, loss.param);
    case LossSpec::Kind::huber: {
      const double c = loss.param;
      return a < c ? t * t / (2.0 * c) : a - c / 2.0;
    }
  }
  return 0.0;
}

// Left derivative of rho.  At t = 0 this is the left limit: -1 for absolute
// (and power with r = 1), 0 for the smooth members.
inline double psi_minus(const LossSpec& loss, double t) {
  switch (loss.kind) {
    case LossSpec::Kind::absolute: return t > 0.0 ? 1.0 : -1.0;
    case LossSpec::Kind::quadratic: return 2.0 * t;
    case LossSpec::Kind::power: {
      const double r = loss.param;
      if (t == 0.0) return r > 1.0 ? 0.0 : -1.0;
      const double m = r * std::pow(std::abs(t), r - 1.0);
      return t > 0.0 ? m : -m;
    }
    case LossSpec::Kind::huber: {
      const double c = loss.param;
      const double s = t / c;
      return s < -1.0 ? -1.0 : (s > 1.0 ? 1.0 : s);
    }
  }
  return 0.0;
}

// Order of an M-quantile, restricted to the open interval (0, 1).
struct Order {
  double alpha;
  explicit Order(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidInput("order must lie strictly inside (0, 1)");
  }
};

// Asymmetric tilt of rho: weight alpha on positive residuals, 1 - alpha on
// negative ones, zero contribution at t = 0.
inline double rho_alpha(const LossSpec& loss, Order order, double t) {
  if (t == 0.0) return 0.0;
  const double w = t > 0.0 ? order.alpha : 1.0 - order.alpha;
  return w * rho_eval(loss, t);
}

// Parses "absolute" | "quadratic" | "power:R" | "huber:C".
LossSpec parse_loss(const std::string& text);
std::string to_string(const LossSpec& loss);

}  // namespace mdepth
