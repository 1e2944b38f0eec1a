#include "rollframe/oracle.hpp"

#include <cmath>

namespace rollframe {

namespace {

struct AmbientFrame {
    Vec base;   // gamma(t)
    Mat frame;  // nu x n, columns span the tangent space
};

AmbientFrame ambient_frame(const Chart& chart, const ChartCurve& curve, double t) {
    const Vec x = curve.eval(t);
    if (!chart.domain_guard(x))
        throw DomainError("oracle: curve point leaves the chart domain");
    return {chart.eval(x), chart.jacobian(x)};
}

Vec frame_coords(const Mat& frame, const Vec& v) {
    // least-squares coordinates in the (non-orthonormal) frame
    return (frame.transpose() * frame).ldlt().solve(frame.transpose() * v);
}

} // namespace

std::vector<TraceSample> develop_direct(const Chart& chart, const ChartCurve& curve,
                                        const Vec& x0_coords, double s,
                                        const TimeGrid& grid, const OracleConfig& cfg) {
    if (std::abs(grid.front() - s) > 1e-9 * std::max(1.0, std::abs(s)))
        throw GridError("develop_direct: grid must start at s");

    AmbientFrame cur = ambient_frame(chart, curve, s);
    Vec x = cur.base + cur.frame * x0_coords;

    std::vector<TraceSample> out;
    out.reserve(grid.node_count());
    out.push_back({s, x0_coords, x});

    for (int k = 1; k < grid.node_count(); ++k) {
        const AmbientFrame next = ambient_frame(chart, curve, grid.node(k));
        // The point of H_{t_{k+1}} reached from x along the normal space of
        // H_{t_k}:  y = gamma_{k+1} + E_{k+1} alpha  with  E_k^T (y - x) = 0.
        const Mat m = cur.frame.transpose() * next.frame;
        const Vec rhs = cur.frame.transpose() * (x - next.base);
        const Vec alpha = m.fullPivLu().solve(rhs);
        x = next.base + next.frame * alpha;

        const Vec tangential = frame_coords(next.frame, x - next.base);
        const double drift = (x - next.base - next.frame * tangential).norm();
        if (drift > cfg.max_drift)
            throw DriftError("develop_direct: affine-plane constraint drift exceeded");

        out.push_back({grid.node(k), alpha, x});
        cur = next;
    }
    return out;
}

std::vector<TraceSample> transport_direct(const Chart& chart, const ChartCurve& curve,
                                          const Vec& v0_coords, double s,
                                          const TimeGrid& grid, const OracleConfig& cfg) {
    (void)cfg;
    if (std::abs(grid.front() - s) > 1e-9 * std::max(1.0, std::abs(s)))
        throw GridError("transport_direct: grid must start at s");

    AmbientFrame cur = ambient_frame(chart, curve, s);
    Vec v = cur.frame * v0_coords;
    const double norm0 = v.norm();

    std::vector<TraceSample> out;
    out.reserve(grid.node_count());
    out.push_back({s, v0_coords, v});

    for (int k = 1; k < grid.node_count(); ++k) {
        const AmbientFrame next = ambient_frame(chart, curve, grid.node(k));
        const Vec coords = frame_coords(next.frame, v);
        Vec projected = next.frame * coords;
        const double norm_p = projected.norm();
        if (norm_p <= tol::rank)
            throw DriftError("transport_direct: projection collapsed the vector");
        v = projected * (norm0 / norm_p);
        out.push_back({grid.node(k), frame_coords(next.frame, v), v});
        cur = next;
    }
    return out;
}

FdDerivatives fd_derivatives(const Chart& chart, const Vec& x, double h) {
    const int n = chart.dim_domain;
    const int nu = chart.dim_ambient;
    const double step = h * std::max(1.0, x.norm());

    auto guarded_eval = [&](const Vec& p) {
        if (!chart.domain_guard(p))
            throw DomainError("fd_derivatives: stencil point leaves the chart domain");
        return chart.eval(p);
    };

    FdDerivatives out;
    out.jac.resize(nu, n);
    for (int i = 0; i < n; ++i) {
        Vec p = x, m = x;
        p(i) += step;
        m(i) -= step;
        out.jac.col(i) = (guarded_eval(p) - guarded_eval(m)) / (2.0 * step);
    }

    const Vec f0 = guarded_eval(x);
    out.hess.assign(n, Mat::Zero(nu, n));
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            Vec d;
            if (j == k) {
                Vec p = x, m = x;
                p(j) += step;
                m(j) -= step;
                d = (guarded_eval(p) - 2.0 * f0 + guarded_eval(m)) / (step * step);
            } else {
                Vec pp = x, pm = x, mp = x, mm = x;
                pp(j) += step; pp(k) += step;
                pm(j) += step; pm(k) -= step;
                mp(j) -= step; mp(k) += step;
                mm(j) -= step; mm(k) -= step;
                d = (guarded_eval(pp) - guarded_eval(pm) - guarded_eval(mp) + guarded_eval(mm)) /
                    (4.0 * step * step);
            }
            out.hess[j].col(k) = d;
            out.hess[k].col(j) = d;
        }
    }
    return out;
}

Chart with_numeric_derivatives(Chart chart, double h) {
    Chart base = chart;
    chart.jacobian = [base, h](const Vec& x) { return fd_derivatives(base, x, h).jac; };
    chart.hessian = [base, h](const Vec& x) { return fd_derivatives(base, x, h).hess; };
    return chart;
}

} // namespace rollframe
