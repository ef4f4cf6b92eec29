#pragma once

#include <stdexcept>
#include <string>

namespace mdepth {

// All recoverable failures are reported through exceptions rooted here, so
// callers (and the CLI) can map them to structured error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// The |psi_-| mass at the evaluation point vanished; with a valid Series this
// cannot happen, so it signals a degenerate input combination.
struct DegenerateDenominator : Error {
  explicit DegenerateDenominator(const std::string& m) : Error("degenerate_denominator", m) {}
};

struct EmptyRegionError : Error {
  explicit EmptyRegionError(const std::string& m) : Error("empty_region", m) {}
};

struct OriginOutsideSupport : Error {
  explicit OriginOutsideSupport(const std::string& m) : Error("origin_outside_support", m) {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& m) : Error("shape_mismatch", m) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& m) : Error("precondition_violated", m) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& m) : Error("rank_deficient", m) {}
};

struct InsufficientLocalData : Error {
  explicit InsufficientLocalData(const std::string& m) : Error("insufficient_local_data", m) {}
};

struct SeriesDiverged : Error {
  explicit SeriesDiverged(const std::string& m) : Error("series_diverged", m) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& m) : Error("invalid_input", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace mdepth
