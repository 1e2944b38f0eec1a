#include "rollframe/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace rollframe {

namespace {

std::string point_str(const Vec& x) {
    std::ostringstream os;
    os << "(" << x.transpose() << ")";
    return os.str();
}

} // namespace

ChartJet chart_derivatives(const Chart& chart, const Vec& x) {
    if (!chart.domain_guard(x))
        throw DomainError("point outside chart domain: " + point_str(x));
    ChartJet jet;
    jet.point = chart.eval(x);
    jet.jac = chart.jacobian(x);
    jet.hess = chart.hessian(x);
    Eigen::JacobiSVD<Mat> svd(jet.jac);
    const double sigma_min = svd.singularValues().tail(1)(0);
    if (sigma_min <= tol::rank)
        throw RankError("chart jacobian rank-deficient at " + point_str(x));
    return jet;
}

MetricPair metric_tensor(const Chart& chart, const Vec& x) {
    if (!chart.domain_guard(x))
        throw DomainError("point outside chart domain: " + point_str(x));
    const Mat jac = chart.jacobian(x);
    MetricPair out;
    out.metric = jac.transpose() * jac;
    Eigen::FullPivLU<Mat> lu(out.metric);
    if (!lu.isInvertible())
        throw SingularMetricError("metric not invertible at " + point_str(x));
    out.metric_inv = lu.inverse();
    return out;
}

std::vector<Mat> christoffel(const Chart& chart, const Vec& x) {
    const MetricPair mp = metric_tensor(chart, x);
    const Mat jac = chart.jacobian(x);
    const Hessian hess = chart.hessian(x);
    const int n = chart.dim_domain;

    // inner[l](j,k) = <d_l psi, d_j d_k psi>
    std::vector<Mat> inner(n, Mat::Zero(n, n));
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                inner[l](j, k) = jac.col(l).dot(hess[j].col(k));

    std::vector<Mat> gamma(n, Mat::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            gamma[i] += mp.metric_inv(i, l) * inner[l];
    return gamma;
}

FrameData frame_data(const Chart& chart, const ChartCurve& curve, double t) {
    const Vec x = curve.eval(t);
    const ChartJet jet = chart_derivatives(chart, x);
    const Vec c1 = curve.d1(t);
    const int n = chart.dim_domain;

    FrameData fd;
    fd.time = t;
    fd.frame = jet.jac;
    fd.gram = jet.jac.transpose() * jet.jac;
    Eigen::FullPivLU<Mat> lu(fd.gram);
    if (!lu.isInvertible())
        throw SingularMetricError("singular gram matrix along curve at t=" + std::to_string(t));
    fd.gram_inv = lu.inverse();

    // e_j'(t) = sum_k (d_k d_j psi)(c(t)) c'_k(t)
    Mat eprime = Mat::Zero(chart.dim_ambient, n);
    for (int j = 0; j < n; ++j)
        eprime.col(j) = jet.hess[j] * c1;

    fd.frame_conn = fd.frame.transpose() * eprime;   // Gamma_ij = <e_i, e_j'>
    fd.b_matrix = fd.gram_inv * fd.frame_conn;       // B_ik = sum_j ghat_ij Gamma_jk
    const Vec gamma_d1 = jet.jac * c1;
    fd.b_vector = fd.gram_inv * (fd.frame.transpose() * gamma_d1);
    return fd;
}

Vec curvature_vector(const Vec& gamma_d1, const Vec& gamma_d2) {
    const double speed2 = gamma_d1.squaredNorm();
    if (std::sqrt(speed2) <= tol::rank)
        throw DegenerateCurveError("curvature vector of a curve with vanishing velocity");
    return (gamma_d2 - (gamma_d2.dot(gamma_d1) / speed2) * gamma_d1) / speed2;
}

Vec project_tangent(const FrameData& frame, const Vec& u) {
    return frame.frame * (frame.gram_inv * (frame.frame.transpose() * u));
}

double curve_length(const Chart& chart, const ChartCurve& curve,
                    double a, double b, int quad_steps) {
    if (quad_steps < 1)
        throw IntervalError("curve_length: quad_steps must be >= 1");
    const double eps = 1e-12 * std::max(1.0, std::abs(curve.t_max - curve.t_min));
    if (a > b || a < curve.t_min - eps || b > curve.t_max + eps)
        throw IntervalError("curve_length: [a,b] outside the curve interval");

    auto speed = [&](double t) {
        return (chart.jacobian(curve.eval(t)) * curve.d1(t)).norm();
    };
    const double h = (b - a) / quad_steps;
    double total = 0.0;
    for (int k = 0; k < quad_steps; ++k) {
        const double lo = a + k * h;
        total += h / 6.0 * (speed(lo) + 4.0 * speed(lo + 0.5 * h) + speed(lo + h));
    }
    return total;
}

GeodesicResidual geodesic_residual(const Chart& chart, const ChartCurve& curve, double t) {
    const Vec x = curve.eval(t);
    const Vec c1 = curve.d1(t);
    const Vec c2 = curve.d2(t);
    const std::vector<Mat> gamma = christoffel(chart, x);
    const Mat g = metric_tensor(chart, x).metric;
    const int n = chart.dim_domain;

    GeodesicResidual res;
    res.arclength = c2;
    for (int j = 0; j < n; ++j)
        res.arclength(j) += c1.dot(gamma[j] * c1);

    const double speed2 = c1.dot(g * c1);
    if (std::sqrt(speed2) <= tol::rank)
        throw DegenerateCurveError("geodesic residual at a point of vanishing velocity");
    res.general = res.arclength - (c1.dot(g * res.arclength) / speed2) * c1;
    return res;
}

} // namespace rollframe
