#pragma once

#include <stdexcept>
#include <string>

namespace thresholdscope {

/// Base class for all numerical failures raised by this library. `kind()`
/// names the failure class for error reporting at the tool boundary.
struct NumericsError : std::runtime_error {
    NumericsError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

#define THRESHOLDSCOPE_ERROR(Name)                                           \
    struct Name : NumericsError {                                            \
        explicit Name(const std::string& what) : NumericsError(#Name, what) {} \
    }

THRESHOLDSCOPE_ERROR(NonConvergence);
THRESHOLDSCOPE_ERROR(StepUnderflow);
THRESHOLDSCOPE_ERROR(NoRoot);
THRESHOLDSCOPE_ERROR(TruncationFailure);
THRESHOLDSCOPE_ERROR(InconsistentWronskian);
THRESHOLDSCOPE_ERROR(BoundViolation);
THRESHOLDSCOPE_ERROR(WronskianTooSmall);
THRESHOLDSCOPE_ERROR(ResidualTooLarge);
THRESHOLDSCOPE_ERROR(NearBranchPoint);
THRESHOLDSCOPE_ERROR(MonotonicityViolation);
THRESHOLDSCOPE_ERROR(DomainError);
THRESHOLDSCOPE_ERROR(EigenvalueLost);
THRESHOLDSCOPE_ERROR(GridTooCoarse);
THRESHOLDSCOPE_ERROR(Inconclusive);

#undef THRESHOLDSCOPE_ERROR

}  // namespace thresholdscope
