#pragma once
#include <stdexcept>
#include <string>

namespace rollframe {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };            // point outside chart domain
struct RankError : Error { using Error::Error; };              // jacobian rank-deficient
struct SingularMetricError : Error { using Error::Error; };
struct DegenerateCurveError : Error { using Error::Error; };   // velocity vanishes
struct IntervalError : Error { using Error::Error; };
struct GridError : Error { using Error::Error; };              // query outside grid span
struct SingularSolutionError : Error { using Error::Error; };  // X(t) not safely invertible
struct NotClosedError : Error { using Error::Error; };
struct DegenerateTraceError : Error { using Error::Error; };
struct DriftError : Error { using Error::Error; };             // oracle constraint violation
struct UnknownManifoldError : Error { using Error::Error; };
struct ParamError : Error { using Error::Error; };

} // namespace rollframe
