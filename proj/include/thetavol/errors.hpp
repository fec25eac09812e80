#ifndef THETAVOL_ERRORS_HPP
#define THETAVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thetavol {

// Base class for numerical failures. The CLI maps these to exit code 3.
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : ComputeError {
  explicit NotPositiveDefinite(const std::string& msg) : ComputeError(msg) {}
};

struct TailBoundFailure : ComputeError {
  explicit TailBoundFailure(const std::string& msg) : ComputeError(msg) {}
};

struct EnumerationBudgetExceeded : ComputeError {
  explicit EnumerationBudgetExceeded(const std::string& msg) : ComputeError(msg) {}
};

struct DimensionUnsupported : ComputeError {
  explicit DimensionUnsupported(const std::string& msg) : ComputeError(msg) {}
};

struct TailNotDominated : ComputeError {
  explicit TailNotDominated(const std::string& msg) : ComputeError(msg) {}
};

struct WeightNotSmooth : ComputeError {
  explicit WeightNotSmooth(const std::string& msg) : ComputeError(msg) {}
};

struct SlopeRangeTooNarrow : ComputeError {
  explicit SlopeRangeTooNarrow(const std::string& msg) : ComputeError(msg) {}
};

struct GridNotConverged : ComputeError {
  explicit GridNotConverged(const std::string& msg) : ComputeError(msg) {}
};

// Bad user input (config files, CLI arguments). Exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thetavol

#endif
