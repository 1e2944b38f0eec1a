#pragma once
#include "rollframe/rolling.hpp"

namespace rollframe {

// Brute-force first-order reference implementations.  Deliberately share no
// machinery with the rolling kernel: no Christoffel symbols, no linear ODE.

struct OracleConfig {
    double step = 1e-3;      // h_oracle
    double fd_step = 1e-5;   // h_fd for numeric chart derivatives
    double max_drift = 1e-3; // abort threshold on constraint violation
};

/// Rolling development by explicit ambient stepping: from x_k in H_{t_k} move
/// to the point of H_{t_{k+1}} reached along the normal space of H_{t_k}.
std::vector<TraceSample> develop_direct(const Chart& chart, const ChartCurve& curve,
                                        const Vec& x0_coords, double s,
                                        const TimeGrid& grid,
                                        const OracleConfig& cfg = {});

/// Parallel transport by project-then-renormalize; exactly norm preserving.
std::vector<TraceSample> transport_direct(const Chart& chart, const ChartCurve& curve,
                                          const Vec& v0_coords, double s,
                                          const TimeGrid& grid,
                                          const OracleConfig& cfg = {});

/// Central-difference jacobian and (symmetrized) hessian of a chart that only
/// supplies evaluation.
struct FdDerivatives {
    Mat jac;
    Hessian hess;
};
FdDerivatives fd_derivatives(const Chart& chart, const Vec& x, double h = tol::h_fd);

/// Completes an evaluation-only chart with finite-difference derivatives.
/// The step is scaled by max(1, |x|).
Chart with_numeric_derivatives(Chart chart, double h = tol::h_fd);

} // namespace rollframe
