#include "rollframe/rolling.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace rollframe {

namespace {

constexpr double kCondLimit = 1e12;

// Cubic Lagrange interpolation of per-node samples at time t.  The stencil is
// the four nodes surrounding t, clamped at the ends of the grid.
template <typename T>
T interp4(const TimeGrid& grid, const std::vector<T>& samples, double t) {
    const double h = grid.step();
    int j = static_cast<int>(std::floor((t - grid.front()) / h));
    j = std::clamp(j, 0, grid.steps() - 1);
    int lo = std::clamp(j - 1, 0, grid.node_count() - 4);

    T out = samples[lo];
    out.setZero();
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        const double ti = grid.node(lo + i);
        for (int m = 0; m < 4; ++m) {
            if (m == i) continue;
            const double tm = grid.node(lo + m);
            w *= (t - tm) / (ti - tm);
        }
        out += w * samples[lo + i];
    }
    return out;
}

int nearest_node(const TimeGrid& grid, double t) {
    const int k = static_cast<int>(std::lround((t - grid.front()) / grid.step()));
    if (k < 0 || k >= grid.node_count()) return -1;
    if (std::abs(grid.node(k) - t) <= 1e-9 * std::max(1.0, std::abs(t))) return k;
    return -1;
}

} // namespace

TimeGrid::TimeGrid(double t0, double t1, int steps) : t0_(t0), steps_(steps) {
    if (steps < 2)
        throw GridError("TimeGrid needs at least 2 steps");
    if (!(t1 > t0))
        throw GridError("TimeGrid needs t1 > t0");
    h_ = (t1 - t0) / steps;
}

bool TimeGrid::contains(double t) const {
    const double slack = 1e-9 * std::max(1.0, back() - front());
    return t >= front() - slack && t <= back() + slack;
}

RollingSolution::RollingSolution(Chart chart, ChartCurve curve, TimeGrid grid)
    : chart_(std::move(chart)), curve_(std::move(curve)), grid_(grid) {}

Mat RollingSolution::x_at(double t) const {
    if (!grid_.contains(t))
        throw GridError("time outside the solution span");
    const int k = nearest_node(grid_, t);
    if (k >= 0) return x_nodes_[k];
    return interp4(grid_, x_nodes_, t);
}

Vec RollingSolution::prefix_at(double t) const {
    if (!grid_.contains(t))
        throw GridError("time outside the solution span");
    const int k = nearest_node(grid_, t);
    if (k >= 0) return prefix_[k];
    return interp4(grid_, prefix_, t);
}

RollingSolution fundamental_solution(const Chart& chart, const ChartCurve& curve,
                                     const TimeGrid& grid) {
    const double eps = 1e-9 * std::max(1.0, curve.t_max - curve.t_min);
    if (grid.front() < curve.t_min - eps || grid.back() > curve.t_max + eps)
        throw GridError("grid outside the curve interval");

    const int n = chart.dim_domain;
    auto b_of = [&](double t) { return frame_data(chart, curve, t).b_matrix; };

    // One classical RK4 step of X' = -B X.
    auto rk4 = [&](const Mat& x, double t, double dt,
                   const Mat& b_lo, const Mat& b_mid, const Mat& b_hi) {
        const Mat k1 = -(b_lo * x);
        const Mat k2 = -(b_mid * (x + 0.5 * dt * k1));
        const Mat k3 = -(b_mid * (x + 0.5 * dt * k2));
        const Mat k4 = -(b_hi * (x + dt * k3));
        return (x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };

    RollingSolution sol(chart, curve, grid);
    const int N = grid.steps();
    const double h = grid.step();
    sol.x_nodes_.reserve(N + 1);
    sol.b_nodes_.reserve(N + 1);
    sol.prefix_.reserve(N + 1);

    std::vector<Mat> x_mids(N);
    std::vector<Vec> b_mids(N);

    FrameData fd = frame_data(chart, curve, grid.node(0));
    sol.x_nodes_.push_back(Mat::Identity(n, n));
    sol.b_nodes_.push_back(fd.b_vector);
    Mat b_prev = fd.b_matrix;

    for (int k = 0; k < N; ++k) {
        const double t = grid.node(k);
        const Mat b_q1 = b_of(t + 0.25 * h);
        const FrameData fd_mid = frame_data(chart, curve, t + 0.5 * h);
        const Mat b_q3 = b_of(t + 0.75 * h);
        const FrameData fd_next = frame_data(chart, curve, t + h);

        Mat x_mid = rk4(sol.x_nodes_.back(), t, 0.5 * h, b_prev, b_q1, fd_mid.b_matrix);
        Mat x_next = rk4(x_mid, t + 0.5 * h, 0.5 * h, fd_mid.b_matrix, b_q3, fd_next.b_matrix);

        x_mids[k] = std::move(x_mid);
        b_mids[k] = fd_mid.b_vector;
        sol.x_nodes_.push_back(std::move(x_next));
        sol.b_nodes_.push_back(fd_next.b_vector);
        b_prev = fd_next.b_matrix;
    }

    // Prefix integral of X^-1 b by per-interval Simpson with the midpoints.
    std::vector<Vec> y_nodes(N + 1), y_mids(N);
    for (int k = 0; k <= N; ++k) {
        Eigen::PartialPivLU<Mat> lu(sol.x_nodes_[k]);
        if (lu.rcond() < 1.0 / kCondLimit)
            throw SingularSolutionError("fundamental solution lost invertibility at node " +
                                        std::to_string(k));
        y_nodes[k] = lu.solve(sol.b_nodes_[k]);
    }
    for (int k = 0; k < N; ++k)
        y_mids[k] = Eigen::PartialPivLU<Mat>(x_mids[k]).solve(b_mids[k]);

    sol.prefix_.push_back(Vec::Zero(n));
    for (int k = 0; k < N; ++k)
        sol.prefix_.push_back(sol.prefix_.back() +
                              h / 6.0 * (y_nodes[k] + 4.0 * y_mids[k] + y_nodes[k + 1]));
    return sol;
}

RollingCoeffs rolling_coeffs(const RollingSolution& sol, double t, double s) {
    const Mat xt = sol.x_at(t);
    const Mat xs = sol.x_at(s);
    Eigen::PartialPivLU<Mat> lu(xs);
    if (lu.rcond() < 1.0 / kCondLimit)
        throw SingularSolutionError("X(s) not safely invertible");
    RollingCoeffs rc;
    rc.A = xt * lu.inverse();
    rc.a = -xt * (sol.prefix_at(t) - sol.prefix_at(s));
    return rc;
}

TraceSample apply_rolling(const RollingSolution& sol, double t, double s, const Vec& lambda) {
    const RollingCoeffs rc = rolling_coeffs(sol, t, s);
    const FrameData fd = frame_data(sol.chart(), sol.curve(), t);
    TraceSample out;
    out.s = s;
    out.coords = rc.A * lambda + rc.a;
    out.ambient = sol.chart().eval(sol.curve().eval(t)) + fd.frame * out.coords;
    return out;
}

TraceSample apply_transport(const RollingSolution& sol, double t, double s, const Vec& v_coords) {
    const RollingCoeffs rc = rolling_coeffs(sol, t, s);
    const FrameData fd = frame_data(sol.chart(), sol.curve(), t);
    TraceSample out;
    out.s = s;
    out.coords = rc.A * v_coords;
    out.ambient = fd.frame * out.coords;
    return out;
}

std::vector<TraceSample> trace_curve(const RollingSolution& sol, double t, const TimeGrid& s_grid) {
    const FrameData fd = frame_data(sol.chart(), sol.curve(), t);
    const Vec base = sol.chart().eval(sol.curve().eval(t));
    std::vector<TraceSample> out;
    out.reserve(s_grid.node_count());
    for (int k = 0; k < s_grid.node_count(); ++k) {
        const double s = s_grid.node(k);
        const RollingCoeffs rc = rolling_coeffs(sol, t, s);
        TraceSample sample;
        sample.s = s;
        sample.coords = rc.a;   // gamma(s) has lambda = 0 in H_s
        sample.ambient = base + fd.frame * sample.coords;
        out.push_back(std::move(sample));
    }
    return out;
}

std::vector<TraceSample> trace_vector_field(const RollingSolution& sol, double t,
                                            const TangentField& field, const TimeGrid& s_grid) {
    const FrameData fd = frame_data(sol.chart(), sol.curve(), t);
    std::vector<TraceSample> out;
    out.reserve(s_grid.node_count());
    for (int k = 0; k < s_grid.node_count(); ++k) {
        const double s = s_grid.node(k);
        const RollingCoeffs rc = rolling_coeffs(sol, t, s);
        TraceSample sample;
        sample.s = s;
        sample.coords = rc.A * field.coeffs(s);
        sample.ambient = fd.frame * sample.coords;
        out.push_back(std::move(sample));
    }
    return out;
}

TraceSample covariant_derivative(const Chart& chart, const ChartCurve& curve,
                                 const TangentField& field, double t) {
    const Vec x = curve.eval(t);
    const Vec c1 = curve.d1(t);
    const std::vector<Mat> gamma = christoffel(chart, x);
    const int n = chart.dim_domain;

    Vec w1;
    if (field.d1) {
        w1 = field.d1(t);
    } else {
        const double h = field.fd_step;
        w1 = (field.coeffs(t + h) - field.coeffs(t - h)) / (2.0 * h);
    }
    const Vec w = field.coeffs(t);

    TraceSample out;
    out.s = t;
    out.coords = w1;
    for (int i = 0; i < n; ++i)
        out.coords(i) += c1.dot(gamma[i] * w);
    out.ambient = chart.jacobian(x) * out.coords;
    return out;
}

TraceDerivativeCheck trace_derivative_check(const RollingSolution& sol, double t,
                                            const TangentField& field, double s, double h) {
    const Vec plus = rolling_coeffs(sol, t, s + h).A * field.coeffs(s + h);
    const Vec minus = rolling_coeffs(sol, t, s - h).A * field.coeffs(s - h);
    TraceDerivativeCheck out;
    out.lhs = (plus - minus) / (2.0 * h);
    const TraceSample dv = covariant_derivative(sol.chart(), sol.curve(), field, s);
    out.rhs = rolling_coeffs(sol, t, s).A * dv.coords;
    out.gap = (out.lhs - out.rhs).norm();
    return out;
}

Straightness straightness(const std::vector<TraceSample>& samples) {
    if (samples.size() < 3)
        throw DegenerateTraceError("straightness needs at least 3 samples");

    double length = 0.0;
    for (size_t k = 1; k < samples.size(); ++k)
        length += (samples[k].ambient - samples[k - 1].ambient).norm();
    if (length <= tol::rank)
        throw DegenerateTraceError("trace has vanishing length");

    const int nu = static_cast<int>(samples.front().ambient.size());
    Vec centroid = Vec::Zero(nu);
    for (const auto& s : samples) centroid += s.ambient;
    centroid /= static_cast<double>(samples.size());

    Mat centered(nu, static_cast<int>(samples.size()));
    for (size_t k = 0; k < samples.size(); ++k)
        centered.col(static_cast<int>(k)) = samples[k].ambient - centroid;
    Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeThinU);
    const Vec dir = svd.matrixU().col(0);

    double max_dev = 0.0;
    for (int k = 0; k < centered.cols(); ++k) {
        const Vec d = centered.col(k);
        max_dev = std::max(max_dev, (d - dir * dir.dot(d)).norm());
    }

    Straightness out;
    out.max_deviation = max_dev / length;
    out.is_line = out.max_deviation <= tol::straight;
    return out;
}

Holonomy holonomy(const RollingSolution& sol, double s_start, double s_end) {
    const Vec p0 = sol.chart().eval(sol.curve().eval(s_start));
    const Vec p1 = sol.chart().eval(sol.curve().eval(s_end));
    if ((p0 - p1).norm() > tol::lin * std::max(1.0, p0.norm()))
        throw NotClosedError("curve endpoints do not coincide");
    const FrameData f0 = frame_data(sol.chart(), sol.curve(), s_start);
    const FrameData f1 = frame_data(sol.chart(), sol.curve(), s_end);
    if ((f0.frame - f1.frame).norm() > tol::lin * std::max(1.0, f0.frame.norm()))
        throw NotClosedError("endpoint frames do not coincide");

    const Mat A = rolling_coeffs(sol, s_end, s_start).A;

    // Metric-orthonormalize: v = E w, u = L^T w with g = L L^T, so the
    // transport in orthonormal coordinates is L^T A L^-T.
    Eigen::LLT<Mat> llt(f0.gram);
    const Mat lt = llt.matrixU();
    const int n = sol.dim();
    const Mat lt_inv = lt.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));

    Holonomy out;
    out.matrix = lt * A * lt_inv;
    if (n == 2)
        out.angle = std::atan2(out.matrix(1, 0), out.matrix(0, 0));
    return out;
}

} // namespace rollframe
