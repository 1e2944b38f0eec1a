#pragma once
#include "rollframe/geometry.hpp"
#include <optional>

namespace rollframe {

/// Uniform time grid t_0 < ... < t_N over a subinterval of the curve domain.
class TimeGrid {
public:
    TimeGrid(double t0, double t1, int steps);

    double front() const { return t0_; }
    double back() const { return t0_ + h_ * steps_; }
    double step() const { return h_; }
    int steps() const { return steps_; }          // number of intervals
    int node_count() const { return steps_ + 1; }
    double node(int k) const { return t0_ + h_ * k; }
    bool contains(double t) const;

private:
    double t0_;
    double h_;
    int steps_;
};

/// A development point or vector expressed both in the frame of a fixed
/// tangent space and in ambient coordinates.
struct TraceSample {
    double s = 0.0;
    Vec coords;   // n, frame coordinates
    Vec ambient;  // nu
};

/// Sampled fundamental solution of X' = -B X with X(t_0) = identity, plus the
/// prefix integral needed for the affine shift a(t,s).  Immutable after
/// construction; all queries are const and thread-safe.
class RollingSolution {
public:
    RollingSolution(Chart chart, ChartCurve curve, TimeGrid grid);

    const TimeGrid& grid() const { return grid_; }
    const Chart& chart() const { return chart_; }
    const ChartCurve& curve() const { return curve_; }
    int dim() const { return chart_.dim_domain; }

    const Mat& x_node(int k) const { return x_nodes_[k]; }
    const Vec& b_node(int k) const { return b_nodes_[k]; }

    /// X(t); node values are exact, interior values cubic-interpolated.
    Mat x_at(double t) const;
    /// Prefix integral F(t) = int_{t_0}^t X(tau)^-1 b(tau) dtau.
    Vec prefix_at(double t) const;

private:
    Chart chart_;
    ChartCurve curve_;
    TimeGrid grid_;
    std::vector<Mat> x_nodes_;
    std::vector<Vec> b_nodes_;
    std::vector<Vec> prefix_;  // per node, Simpson using stored midpoints

    friend RollingSolution fundamental_solution(const Chart&, const ChartCurve&, const TimeGrid&);
};

/// RK4 integration (two half steps per grid interval) of X' = -B(t) X.
RollingSolution fundamental_solution(const Chart& chart, const ChartCurve& curve,
                                     const TimeGrid& grid);

struct RollingCoeffs {
    Mat A;  // A(t,s) = X(t) X(s)^-1
    Vec a;  // a(t,s) = -int_s^t A(t,tau) b(tau) dtau
};
RollingCoeffs rolling_coeffs(const RollingSolution& sol, double t, double s);

/// Rolling map: the point gamma(s) + sum e_i(s) lambda_i of H_s carried to H_t.
TraceSample apply_rolling(const RollingSolution& sol, double t, double s, const Vec& lambda);

/// Parallel transport: the linear part of the rolling map.
TraceSample apply_transport(const RollingSolution& sol, double t, double s, const Vec& v_coords);

/// Trace curve s -> Phi(t,s)(gamma(s)) sampled on s_grid, all points in H_t.
std::vector<TraceSample> trace_curve(const RollingSolution& sol, double t, const TimeGrid& s_grid);

/// Trace vector field s -> P(t,s)(v(s)).
std::vector<TraceSample> trace_vector_field(const RollingSolution& sol, double t,
                                            const TangentField& field, const TimeGrid& s_grid);

/// Covariant derivative coefficients w'_i + sum Gamma^i_kl c'_k w_l and their
/// ambient realization.
TraceSample covariant_derivative(const Chart& chart, const ChartCurve& curve,
                                 const TangentField& field, double t);

/// Checks that the ordinary s-derivative of the trace field equals the
/// transported covariant derivative.  lhs is a central difference at step h.
struct TraceDerivativeCheck {
    Vec lhs;
    Vec rhs;
    double gap = 0.0;
};
TraceDerivativeCheck trace_derivative_check(const RollingSolution& sol, double t,
                                            const TangentField& field, double s, double h);

/// Distance of the samples from their least-squares line, normalized by the
/// polyline length.
struct Straightness {
    double max_deviation = 0.0;
    bool is_line = false;
};
Straightness straightness(const std::vector<TraceSample>& samples);

/// Transport around a closed loop, expressed in a metric-orthonormalized
/// frame (so the matrix is orthogonal up to integration error).  The angle is
/// defined for n = 2 only, counterclockwise positive in the (e_1,e_2) frame.
struct Holonomy {
    Mat matrix;
    std::optional<double> angle;
};
Holonomy holonomy(const RollingSolution& sol, double s_start, double s_end);

} // namespace rollframe
