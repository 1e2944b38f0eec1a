#include "rollframe/rolling.hpp"
#include "rollframe/oracle.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <cmath>

using namespace rollframe;
using namespace rollframe::testing;

namespace {

RollingSolution latitude_solution(int steps = 1024, double theta = kPi / 3.0) {
    const ZooEntry e = make_chart("sphere");
    const ChartCurve c = make_curve(e, "latitude", {{"value", theta}}, 0.0, 2.0 * kPi);
    return fundamental_solution(e.chart, c, TimeGrid(0.0, 2.0 * kPi, steps));
}

} // namespace

TEST_CASE("TimeGrid validation") {
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), GridError);
    CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 16), GridError);
    const TimeGrid g(0.0, 1.0, 16);
    CHECK(g.node(16) == doctest::Approx(1.0));
    CHECK(g.contains(0.999999999));
    CHECK(!g.contains(1.1));
}

TEST_CASE("fundamental_solution is the identity on flat data") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 1.0);
    const RollingSolution sol =
        fundamental_solution(plane.chart, line, TimeGrid(0.0, 1.0, 32));
    for (int k = 0; k <= 32; ++k)
        CHECK((sol.x_node(k) - Mat::Identity(2, 2)).norm() <= 1e-14);

    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve equator = make_curve(sphere, "great_circle", {}, 0.0, 2.0 * kPi);
    const RollingSolution se =
        fundamental_solution(sphere.chart, equator, TimeGrid(0.0, 2.0 * kPi, 64));
    for (int k = 0; k <= 64; ++k)
        CHECK((se.x_node(k) - Mat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("fundamental_solution satisfies X' = -BX in the discrete residual") {
    const RollingSolution sol = latitude_solution(128);
    const TimeGrid& g = sol.grid();
    const double h = g.step();
    for (int k = 0; k < g.steps(); k += 7) {
        const Mat x_mid = 0.5 * (sol.x_node(k) + sol.x_node(k + 1));
        const Mat b_mid =
            frame_data(sol.chart(), sol.curve(), g.node(k) + 0.5 * h).b_matrix;
        const Mat residual = (sol.x_node(k + 1) - sol.x_node(k)) / h + b_mid * x_mid;
        CHECK(residual.norm() <= 10.0 * h * h);
    }
}

TEST_CASE("rolling_coeffs basics") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 1.0);
    const RollingSolution sol =
        fundamental_solution(plane.chart, line, TimeGrid(0.0, 1.0, 64));

    const RollingCoeffs same = rolling_coeffs(sol, 0.5, 0.5);
    CHECK(same.A.isIdentity(1e-14));
    CHECK(same.a.norm() <= 1e-14);

    const RollingCoeffs rc = rolling_coeffs(sol, 1.0, 0.0);
    CHECK(rc.A.isIdentity(1e-13));
    CHECK(rc.a.isApprox(vec2(-1.0, 0.0), 1e-12));

    CHECK_THROWS_AS(rolling_coeffs(sol, 2.0, 0.0), GridError);
}

TEST_CASE("cocycle identity at nodes") {
    const RollingSolution sol = latitude_solution(256);
    const TimeGrid& g = sol.grid();
    const Mat lhs = rolling_coeffs(sol, g.node(200), g.node(100)).A *
                    rolling_coeffs(sol, g.node(100), g.node(30)).A;
    const Mat rhs = rolling_coeffs(sol, g.node(200), g.node(30)).A;
    CHECK((lhs - rhs).norm() <= 1e-12);
}

TEST_CASE("apply_rolling flat development fixes the ground point") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 1.0);
    const RollingSolution sol =
        fundamental_solution(plane.chart, line, TimeGrid(0.0, 1.0, 64));

    const TraceSample fixed = apply_rolling(sol, 0.25, 0.25, vec2(0.7, -0.3));
    CHECK(fixed.coords.isApprox(vec2(0.7, -0.3), 1e-13));

    const TraceSample rolled = apply_rolling(sol, 1.0, 0.0, vec2(0.0, 1.0));
    CHECK(rolled.coords.isApprox(vec2(-1.0, 1.0), 1e-12));
    CHECK(rolled.ambient.isApprox(vec3(0.0, 1.0, 0.0), 1e-12));
}

TEST_CASE("group law and inverse on the sphere latitude") {
    const RollingSolution sol = latitude_solution();
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 50; ++i) {
        const double s = dist(rng), t = dist(rng), u = dist(rng);
        const Vec lambda = vec2(gauss(rng), gauss(rng));

        const Vec once = rolling_coeffs(sol, u, s).A * lambda + rolling_coeffs(sol, u, s).a;
        const Vec mid = rolling_coeffs(sol, t, s).A * lambda + rolling_coeffs(sol, t, s).a;
        const Vec twice = rolling_coeffs(sol, u, t).A * mid + rolling_coeffs(sol, u, t).a;
        CHECK((once - twice).norm() <= 10.0 * tol::ode);

        const Vec back = rolling_coeffs(sol, s, t).A * mid + rolling_coeffs(sol, s, t).a;
        CHECK((back - lambda).norm() <= 10.0 * tol::ode);
    }
}

TEST_CASE("apply_transport isometry and latitude holonomy rotation") {
    const RollingSolution sol = latitude_solution(2048);
    const Vec v = vec2(1.0, 0.0);
    const TraceSample start = apply_transport(sol, 0.0, 0.0, v);
    CHECK(start.coords.isApprox(v));

    const TraceSample looped = apply_transport(sol, 2.0 * kPi, 0.0, v);
    CHECK(std::abs(looped.ambient.norm() - start.ambient.norm()) <= 1e-6);

    // full loop rotates by pi in the orthonormalized frame
    const FrameData fd = frame_data(sol.chart(), sol.curve(), 0.0);
    const Mat u = orthonormalizer(fd.gram);
    const Vec u0 = u * start.coords;
    const Vec u1 = u * looped.coords;
    const double angle = std::atan2(u0(0) * u1(1) - u0(1) * u1(0), u0.dot(u1));
    CHECK(std::abs(std::abs(angle) - kPi) <= 1e-4);
}

TEST_CASE("transport is an isometry across the zoo") {
    std::mt19937 rng(37);
    std::normal_distribution<double> gauss;
    for (const auto& pair : standard_pairs()) {
        const TimeGrid grid(pair.curve.t_min, pair.curve.t_max, 512);
        const RollingSolution sol = fundamental_solution(pair.entry.chart, pair.curve, grid);
        std::uniform_real_distribution<double> dist(pair.curve.t_min, pair.curve.t_max);
        for (int i = 0; i < 20; ++i) {
            const double t = dist(rng), s = dist(rng);
            const Vec v = vec2(gauss(rng), gauss(rng));
            const double n0 = (frame_data(pair.entry.chart, pair.curve, s).frame * v).norm();
            const double n1 = apply_transport(sol, t, s, v).ambient.norm();
            CHECK(std::abs(n1 - n0) <= 10.0 * tol::ode * std::max(1.0, n0));
        }
    }
}

TEST_CASE("trace_curve: equator develops to a straight segment of equal length") {
    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve equator = make_curve(sphere, "great_circle", {}, 0.0, 2.0 * kPi);
    const TimeGrid grid(0.0, 2.0 * kPi, 1024);
    const RollingSolution sol = fundamental_solution(sphere.chart, equator, grid);

    const auto samples = trace_curve(sol, 0.0, grid);
    CHECK((samples.front().ambient - sphere.chart.eval(equator.eval(0.0))).norm() <= 1e-12);

    const Straightness st = straightness(samples);
    CHECK(st.is_line);

    double length = 0.0;
    for (size_t k = 1; k < samples.size(); ++k)
        length += (samples[k].ambient - samples[k - 1].ambient).norm();
    CHECK(length == doctest::Approx(2.0 * kPi).epsilon(1e-5));
}

TEST_CASE("trace_curve: latitude develops onto a circle of radius tan(theta)") {
    const RollingSolution sol = latitude_solution(2048);
    const auto samples = trace_curve(sol, 0.0, sol.grid());
    const FrameData fd = frame_data(sol.chart(), sol.curve(), 0.0);
    const CircleFit fit = fit_circle(trace_points_2d(samples, fd.gram));
    CHECK(std::abs(fit.radius - std::sqrt(3.0)) <= 1e-4);
    CHECK(!straightness(samples).is_line);
}

TEST_CASE("trace_curve samples stay in the affine plane H_t") {
    const RollingSolution sol = latitude_solution(512);
    const double t = 1.0;
    const auto samples = trace_curve(sol, t, sol.grid());
    const FrameData fd = frame_data(sol.chart(), sol.curve(), t);
    const Vec base = sol.chart().eval(sol.curve().eval(t));
    const Vec normal = base.normalized();  // unit sphere
    for (size_t k = 0; k < samples.size(); k += 31)
        CHECK(std::abs((samples[k].ambient - base).dot(normal)) <= 1e-9);
}

TEST_CASE("trace_vector_field: constant for parallel and flat fields") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 1.0);
    const TimeGrid pg(0.0, 1.0, 64);
    const RollingSolution psol = fundamental_solution(plane.chart, line, pg);
    TangentField constant;
    constant.coeffs = [](double) { return testing::vec2(0.3, 0.4); };
    constant.d1 = [](double) { return testing::vec2(0.0, 0.0); };
    for (const auto& s : trace_vector_field(psol, 0.0, constant, pg))
        CHECK(s.coords.isApprox(vec2(0.3, 0.4), 1e-12));

    // velocity field along the equator geodesic is parallel
    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve equator = make_curve(sphere, "great_circle", {}, 0.0, 2.0 * kPi);
    const TimeGrid eg(0.0, 2.0 * kPi, 512);
    const RollingSolution esol = fundamental_solution(sphere.chart, equator, eg);
    TangentField velocity;
    velocity.coeffs = [equator](double s) { return equator.d1(s); };
    velocity.d1 = [equator](double s) { return equator.d2(s); };
    const auto traced = trace_vector_field(esol, 0.0, velocity, eg);
    for (const auto& s : traced)
        CHECK((s.coords - traced.front().coords).norm() <= 10.0 * tol::ode);
}

TEST_CASE("trace_vector_field: oracle-built parallel field is constant") {
    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve lat = make_curve(sphere, "latitude", {{"value", kPi / 3.0}}, 0.0, 2.0 * kPi);
    const TimeGrid grid(0.0, 2.0 * kPi, 2048);
    const RollingSolution sol = fundamental_solution(sphere.chart, lat, grid);

    const auto parallel = transport_direct(sphere.chart, lat, vec2(1.0, 0.0), 0.0,
                                           TimeGrid(0.0, 2.0 * kPi, 40000));
    // sample the oracle field at solution nodes via nearest oracle node
    const double oh = 2.0 * kPi / 40000;
    TangentField field;
    field.coeffs = [parallel, oh](double s) {
        const int k = static_cast<int>(std::lround(s / oh));
        return parallel[static_cast<size_t>(k)].coords;
    };
    field.d1 = nullptr;
    const TimeGrid coarse(0.0, 2.0 * kPi, 64);
    const auto traced = trace_vector_field(sol, 0.0, field, coarse);
    for (const auto& s : traced)
        CHECK((s.coords - traced.front().coords).norm() <= 1e-3);  // oracle is order 1
}

TEST_CASE("covariant_derivative closed forms") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 1.0);
    TangentField constant;
    constant.coeffs = [](double) { return testing::vec2(2.0, -1.0); };
    constant.d1 = [](double) { return testing::vec2(0.0, 0.0); };
    CHECK(covariant_derivative(plane.chart, line, constant, 0.5).coords.norm() <= 1e-14);

    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve lat = make_curve(sphere, "latitude", {{"value", kPi / 3.0}}, 0.0, 2.0 * kPi);
    TangentField phi_unit;
    phi_unit.coeffs = [](double) { return testing::vec2(0.0, 1.0); };
    phi_unit.d1 = [](double) { return testing::vec2(0.0, 0.0); };
    const TraceSample dv = covariant_derivative(sphere.chart, lat, phi_unit, 1.1);
    CHECK(dv.coords(0) == doctest::Approx(-std::sqrt(3.0) / 4.0).epsilon(1e-12));
    CHECK(dv.coords(1) == doctest::Approx(0.0));
}

TEST_CASE("covariant derivative of an oracle-parallel field vanishes") {
    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve lat = make_curve(sphere, "latitude", {{"value", kPi / 3.0}}, 0.0, 2.0 * kPi);
    const auto parallel = transport_direct(sphere.chart, lat, vec2(1.0, 0.5), 0.0,
                                           TimeGrid(0.0, 2.0 * kPi, 80000));
    const double oh = 2.0 * kPi / 80000;
    TangentField field;
    field.coeffs = [parallel, oh](double s) {
        const int k = static_cast<int>(std::lround(s / oh));
        return parallel[static_cast<size_t>(k)].coords;
    };
    field.fd_step = oh;  // differentiate on the oracle's own grid
    const TraceSample dv = covariant_derivative(sphere.chart, lat, field, 2.0);
    CHECK(dv.coords.norm() <= 1e-3);  // oracle is order 1
}

TEST_CASE("trace_derivative_check examples") {
    const ZooEntry plane = make_chart("plane");
    const ChartCurve line = make_curve(plane, "coordinate_line", {}, 0.0, 2.0);
    const RollingSolution sol =
        fundamental_solution(plane.chart, line, TimeGrid(0.0, 2.0, 256));
    TangentField field;
    field.coeffs = [](double s) { return testing::vec2(s, s * s); };
    field.d1 = [](double s) { return testing::vec2(1.0, 2.0 * s); };
    const auto check = trace_derivative_check(sol, 0.5, field, 1.0, 1e-3);
    CHECK(check.lhs.isApprox(vec2(1.0, 2.0), 1e-6));
    CHECK(check.rhs.isApprox(vec2(1.0, 2.0), 1e-10));
    CHECK(check.gap <= 1e-6);
}

TEST_CASE("trace derivative equals transported covariant derivative on the sphere") {
    const RollingSolution sol = latitude_solution(4096);
    TangentField field;
    field.coeffs = [](double) { return testing::vec2(0.4, -0.2); };
    field.d1 = [](double) { return testing::vec2(0.0, 0.0); };
    const auto full = trace_derivative_check(sol, 0.0, field, 2.5, 1e-3);
    CHECK(full.gap <= 1e-5);
    const auto half = trace_derivative_check(sol, 0.0, field, 2.5, 5e-4);
    CHECK(half.gap <= full.gap / 2.0 + 1e-9);  // order-2 central difference
}

TEST_CASE("trace-velocity identity") {
    const RollingSolution sol = latitude_solution(2048);
    const double t = 0.0, h = 1e-4;
    for (double s : {0.5, 2.0, 4.0}) {
        const Vec plus = rolling_coeffs(sol, t, s + h).a;
        const Vec minus = rolling_coeffs(sol, t, s - h).a;
        const Vec lhs = (plus - minus) / (2.0 * h);
        const Vec rhs = rolling_coeffs(sol, t, s).A * sol.curve().d1(s);
        CHECK((lhs - rhs).norm() <= 1e-6);
    }
}

TEST_CASE("curvature transfer between curve and trace") {
    const RollingSolution sol = latitude_solution(4096);
    const double t = 0.0, s = 2.0, h = 1e-4;
    // second-order finite differences of the trace in frame coordinates of H_t
    const Vec c0 = rolling_coeffs(sol, t, s).a;
    const Vec cp = rolling_coeffs(sol, t, s + h).a;
    const Vec cm = rolling_coeffs(sol, t, s - h).a;
    const FrameData ft = frame_data(sol.chart(), sol.curve(), t);
    const Vec d1 = ft.frame * ((cp - cm) / (2.0 * h));
    const Vec d2 = ft.frame * ((cp - 2.0 * c0 + cm) / (h * h));
    const Vec k_trace = curvature_vector(d1, d2);

    const FrameData fs = frame_data(sol.chart(), sol.curve(), s);
    const Vec k_trace_coords = fs.gram_inv * (ft.frame.transpose() * k_trace);
    // transport back to T_{gamma(s)}M; frame coords of k_trace in H_t basis
    const Vec kt_in_t = ft.gram_inv * (ft.frame.transpose() * k_trace);
    const Vec back = rolling_coeffs(sol, s, t).A * kt_in_t;
    const double g_norm = std::sqrt(back.dot(fs.gram * back));

    const ChartJet jet = chart_derivatives(sol.chart(), sol.curve().eval(s));
    const Vec gamma_d1 = jet.jac * sol.curve().d1(s);
    Vec gamma_d2 = jet.jac * sol.curve().d2(s);
    for (int j = 0; j < 2; ++j)
        gamma_d2 += jet.hess[j] * sol.curve().d1(s) * sol.curve().d1(s)(j);
    const Vec k_gamma = curvature_vector(gamma_d1, gamma_d2);
    const double target = project_tangent(fs, k_gamma).norm();

    CHECK(std::abs(g_norm - target) <= 10.0 * tol::ode + 1e-4);
    (void)k_trace_coords;
}

TEST_CASE("straightness guards") {
    std::vector<TraceSample> two(2);
    two[0] = {0.0, vec2(0, 0), vec3(0, 0, 0)};
    two[1] = {1.0, vec2(1, 0), vec3(1, 0, 0)};
    CHECK_THROWS_AS(straightness(two), DegenerateTraceError);

    std::vector<TraceSample> still(3, TraceSample{0.0, vec2(0, 0), vec3(0, 0, 0)});
    CHECK_THROWS_AS(straightness(still), DegenerateTraceError);
}

TEST_CASE("holonomy: plane loop is the identity, sphere loops match closed forms") {
    const ZooEntry plane = make_chart("plane");
    std::map<std::string, double> loop = {{"c1x", 0.0}, {"c2x", 0.0}};
    // closed loop in the plane: c(t) = (cos t, sin t) as a custom curve
    ChartCurve circle;
    circle.t_min = 0.0;
    circle.t_max = 2.0 * kPi;
    circle.eval = [](double t) { return testing::vec2(std::cos(t), std::sin(t)); };
    circle.d1 = [](double t) { return testing::vec2(-std::sin(t), std::cos(t)); };
    circle.d2 = [](double t) { return testing::vec2(-std::cos(t), -std::sin(t)); };
    const RollingSolution psol =
        fundamental_solution(plane.chart, circle, TimeGrid(0.0, 2.0 * kPi, 256));
    const Holonomy hp = holonomy(psol, 0.0, 2.0 * kPi);
    CHECK((hp.matrix - Mat::Identity(2, 2)).norm() <= 1e-10);
    CHECK(std::abs(*hp.angle) <= 1e-10);

    const RollingSolution lat = latitude_solution(2048);
    const Holonomy hl = holonomy(lat, 0.0, 2.0 * kPi);
    CHECK(std::abs(std::abs(*hl.angle) - kPi) <= 1e-4);
    // orthogonal up to integration error
    CHECK((hl.matrix * hl.matrix.transpose() - Mat::Identity(2, 2)).norm() <= tol::ode);

    const ZooEntry sphere = make_chart("sphere");
    const ChartCurve equator = make_curve(sphere, "great_circle", {}, 0.0, 2.0 * kPi);
    const RollingSolution esol =
        fundamental_solution(sphere.chart, equator, TimeGrid(0.0, 2.0 * kPi, 2048));
    const Holonomy he = holonomy(esol, 0.0, 2.0 * kPi);
    CHECK(std::abs(*he.angle) <= 1e-4);

    CHECK_THROWS_AS(holonomy(lat, 0.0, kPi), NotClosedError);
    (void)loop;
}
