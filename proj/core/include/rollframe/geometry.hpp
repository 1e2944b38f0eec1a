#pragma once
#include "rollframe/chart.hpp"
#include "rollframe/errors.hpp"

namespace rollframe {

/// Frame quantities along a curve at one time: e_i(t) = (d_i psi)(c(t)),
/// g_ij = <e_i, e_j>, ghat its inverse, Gamma_ij = <e_i, e_j'>,
/// B_ik = sum_j ghat_ij Gamma_jk and b_i = sum_j ghat_ij <e_j, gamma'>.
struct FrameData {
    double time = 0.0;
    Mat frame;       // nu x n
    Mat gram;        // n x n
    Mat gram_inv;    // n x n
    Mat frame_conn;  // n x n, Gamma_ij = <e_i, e_j'>
    Mat b_matrix;    // n x n
    Vec b_vector;    // n
};

struct ChartJet {
    Vec point;    // psi(x)
    Mat jac;      // D psi(x)
    Hessian hess;
};

/// psi, D psi and the second derivatives at x.  Throws DomainError if the
/// guard rejects x, RankError if the jacobian's smallest singular value is
/// below rank_tol.
ChartJet chart_derivatives(const Chart& chart, const Vec& x);

/// Metric tensor g_ij(x) = <d_i psi, d_j psi> and its inverse.
struct MetricPair {
    Mat metric;
    Mat metric_inv;
};
MetricPair metric_tensor(const Chart& chart, const Vec& x);

/// Christoffel symbols: result[i](j,k) = sum_l ginv_il <d_l psi, d_j d_k psi>.
std::vector<Mat> christoffel(const Chart& chart, const Vec& x);

/// All frame quantities along the curve at time t.
FrameData frame_data(const Chart& chart, const ChartCurve& curve, double t);

/// Curvature vector k = |g'|^-2 (g'' - <g'',g'> |g'|^-2 g') of a regular
/// curve from its ambient derivatives; zero exactly for straight lines.
Vec curvature_vector(const Vec& gamma_d1, const Vec& gamma_d2);

/// Orthogonal projection onto the tangent space spanned by the frame columns.
Vec project_tangent(const FrameData& frame, const Vec& u);

/// Composite-Simpson length of gamma = psi o c over [a,b] with quad_steps
/// panels (each panel samples its midpoint).
double curve_length(const Chart& chart, const ChartCurve& curve,
                    double a, double b, int quad_steps);

/// Geodesic residuals at time t.  arclength_j = c''_j + sum Gamma^j_lk c'_l c'_k;
/// general removes the metric projection of that vector onto c', so its zero
/// set is parametrization independent.
struct GeodesicResidual {
    Vec general;
    Vec arclength;
};
GeodesicResidual geodesic_residual(const Chart& chart, const ChartCurve& curve, double t);

} // namespace rollframe
