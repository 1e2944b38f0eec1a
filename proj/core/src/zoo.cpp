#include "rollframe/zoo.hpp"
#include "rollframe/geometry.hpp"

#include <cmath>

namespace rollframe {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleMargin = 1e-3;  // sphere poles / cone apex exclusion

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

Chart plane_chart() {
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [](const Vec& x) { return v3(x(0), x(1), 0.0); };
    ch.jacobian = [](const Vec&) {
        Mat j(3, 2);
        j << 1, 0, 0, 1, 0, 0;
        return j;
    };
    ch.hessian = [](const Vec&) { return Hessian(2, Mat::Zero(3, 2)); };
    ch.domain_guard = [](const Vec&) { return true; };
    return ch;
}

Chart sphere_chart(double R) {
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [R](const Vec& x) {
        const double th = x(0), ph = x(1);
        return v3(R * std::sin(th) * std::cos(ph), R * std::sin(th) * std::sin(ph),
                  R * std::cos(th));
    };
    ch.jacobian = [R](const Vec& x) {
        const double th = x(0), ph = x(1);
        Mat j(3, 2);
        j.col(0) = v3(R * std::cos(th) * std::cos(ph), R * std::cos(th) * std::sin(ph),
                      -R * std::sin(th));
        j.col(1) = v3(-R * std::sin(th) * std::sin(ph), R * std::sin(th) * std::cos(ph), 0.0);
        return j;
    };
    ch.hessian = [R](const Vec& x) {
        const double th = x(0), ph = x(1);
        Hessian h(2, Mat::Zero(3, 2));
        h[0].col(0) = v3(-R * std::sin(th) * std::cos(ph), -R * std::sin(th) * std::sin(ph),
                         -R * std::cos(th));
        const Vec thph =
            v3(-R * std::cos(th) * std::sin(ph), R * std::cos(th) * std::cos(ph), 0.0);
        h[0].col(1) = thph;
        h[1].col(0) = thph;
        h[1].col(1) = v3(-R * std::sin(th) * std::cos(ph), -R * std::sin(th) * std::sin(ph), 0.0);
        return h;
    };
    ch.domain_guard = [](const Vec& x) {
        return x(0) > kPoleMargin && x(0) < kPi - kPoleMargin;
    };
    return ch;
}

Chart cylinder_chart(double R) {
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [R](const Vec& x) {
        return v3(R * std::cos(x(1)), R * std::sin(x(1)), x(0));
    };
    ch.jacobian = [R](const Vec& x) {
        Mat j(3, 2);
        j.col(0) = v3(0, 0, 1);
        j.col(1) = v3(-R * std::sin(x(1)), R * std::cos(x(1)), 0.0);
        return j;
    };
    ch.hessian = [R](const Vec& x) {
        Hessian h(2, Mat::Zero(3, 2));
        h[1].col(1) = v3(-R * std::cos(x(1)), -R * std::sin(x(1)), 0.0);
        return h;
    };
    ch.domain_guard = [](const Vec&) { return true; };
    return ch;
}

Chart cone_chart(double alpha) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [sa, ca](const Vec& x) {
        const double r = x(0), ph = x(1);
        return v3(r * sa * std::cos(ph), r * sa * std::sin(ph), r * ca);
    };
    ch.jacobian = [sa, ca](const Vec& x) {
        const double r = x(0), ph = x(1);
        Mat j(3, 2);
        j.col(0) = v3(sa * std::cos(ph), sa * std::sin(ph), ca);
        j.col(1) = v3(-r * sa * std::sin(ph), r * sa * std::cos(ph), 0.0);
        return j;
    };
    ch.hessian = [sa](const Vec& x) {
        const double r = x(0), ph = x(1);
        Hessian h(2, Mat::Zero(3, 2));
        const Vec rph = v3(-sa * std::sin(ph), sa * std::cos(ph), 0.0);
        h[0].col(1) = rph;
        h[1].col(0) = rph;
        h[1].col(1) = v3(-r * sa * std::cos(ph), -r * sa * std::sin(ph), 0.0);
        return h;
    };
    ch.domain_guard = [](const Vec& x) { return x(0) > kPoleMargin; };
    return ch;
}

Chart torus_chart(double R, double r) {
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [R, r](const Vec& x) {
        const double u = x(0), v = x(1);
        const double w = R + r * std::cos(u);
        return v3(w * std::cos(v), w * std::sin(v), r * std::sin(u));
    };
    ch.jacobian = [R, r](const Vec& x) {
        const double u = x(0), v = x(1);
        const double w = R + r * std::cos(u);
        Mat j(3, 2);
        j.col(0) = v3(-r * std::sin(u) * std::cos(v), -r * std::sin(u) * std::sin(v),
                      r * std::cos(u));
        j.col(1) = v3(-w * std::sin(v), w * std::cos(v), 0.0);
        return j;
    };
    ch.hessian = [R, r](const Vec& x) {
        const double u = x(0), v = x(1);
        const double w = R + r * std::cos(u);
        Hessian h(2, Mat::Zero(3, 2));
        h[0].col(0) = v3(-r * std::cos(u) * std::cos(v), -r * std::cos(u) * std::sin(v),
                         -r * std::sin(u));
        const Vec uv = v3(r * std::sin(u) * std::sin(v), -r * std::sin(u) * std::cos(v), 0.0);
        h[0].col(1) = uv;
        h[1].col(0) = uv;
        h[1].col(1) = v3(-w * std::cos(v), -w * std::sin(v), 0.0);
        return h;
    };
    ch.domain_guard = [](const Vec&) { return true; };
    return ch;
}

Chart graph_chart() {
    Chart ch;
    ch.dim_domain = 2;
    ch.dim_ambient = 3;
    ch.eval = [](const Vec& x) { return v3(x(0), x(1), x(0) * x(0) + x(1) * x(1)); };
    ch.jacobian = [](const Vec& x) {
        Mat j(3, 2);
        j.col(0) = v3(1, 0, 2.0 * x(0));
        j.col(1) = v3(0, 1, 2.0 * x(1));
        return j;
    };
    ch.hessian = [](const Vec&) {
        Hessian h(2, Mat::Zero(3, 2));
        h[0].col(0) = v3(0, 0, 2);
        h[1].col(1) = v3(0, 0, 2);
        return h;
    };
    ch.domain_guard = [](const Vec&) { return true; };
    return ch;
}

} // namespace

const std::vector<std::string>& zoo_chart_names() {
    static const std::vector<std::string> names = {"plane",  "sphere", "cylinder",
                                                   "cone",   "torus",  "graph"};
    return names;
}

ZooEntry make_chart(const std::string& name, const std::map<std::string, double>& params) {
    ZooEntry entry;
    entry.name = name;
    entry.params = params;

    if (name == "plane") {
        entry.chart = plane_chart();
        entry.reference_facts = "flat; metric = identity; Christoffel symbols vanish; "
                                "development is the identity";
    } else if (name == "sphere") {
        const double R = param_or(params, "radius", 1.0);
        if (R <= 0.0) throw ParamError("sphere: radius must be positive");
        entry.chart = sphere_chart(R);
        entry.reference_facts =
            "metric diag(R^2, R^2 sin^2 theta); great circles are geodesics; "
            "latitude at colatitude theta has holonomy angle 2*pi*(1 - cos theta) and "
            "develops onto a circle of slant radius R*tan(theta)";
    } else if (name == "cylinder") {
        const double R = param_or(params, "radius", 1.0);
        if (R <= 0.0) throw ParamError("cylinder: radius must be positive");
        entry.chart = cylinder_chart(R);
        entry.reference_facts = "metric diag(1, R^2); flat, so helices unroll to straight lines";
    } else if (name == "cone") {
        const double alpha = param_or(params, "half_angle", kPi / 6.0);
        if (alpha <= 0.0 || alpha >= kPi / 2.0)
            throw ParamError("cone: half_angle must be in (0, pi/2)");
        entry.chart = cone_chart(alpha);
        entry.reference_facts =
            "flat away from the apex; a loop around the apex has angular defect "
            "2*pi*(1 - sin(half_angle)); circles develop to circular arcs";
    } else if (name == "torus") {
        const double R = param_or(params, "R", 2.0);
        const double r = param_or(params, "r", 0.5);
        if (!(r > 0.0 && R > r)) throw ParamError("torus: requires 0 < r < R");
        entry.chart = torus_chart(R, r);
        entry.reference_facts = "outer and inner equators (u = 0, pi) are geodesics";
    } else if (name == "graph") {
        entry.chart = graph_chart();
        entry.reference_facts = "paraboloid graph z = x^2 + y^2; rotationally symmetric";
    } else {
        std::string known;
        for (const auto& n : zoo_chart_names()) known += (known.empty() ? "" : ", ") + n;
        throw UnknownManifoldError("unknown manifold '" + name + "' (known: " + known + ")");
    }
    return entry;
}

ChartCurve make_curve(const ZooEntry& entry, const std::string& kind,
                      const std::map<std::string, double>& params,
                      double t_min, double t_max) {
    if (!(t_max > t_min)) throw ParamError("make_curve: t_max must exceed t_min");

    ChartCurve curve;
    curve.t_min = t_min;
    curve.t_max = t_max;

    auto vec2 = [](double a, double b) {
        Vec v(2);
        v << a, b;
        return v;
    };

    if (kind == "coordinate_line") {
        const double x0 = param_or(params, "x0", 0.0);
        const double y0 = param_or(params, "y0", 0.0);
        const double dx = param_or(params, "dx", 1.0);
        const double dy = param_or(params, "dy", 0.0);
        curve.eval = [=](double t) { return vec2(x0 + dx * t, y0 + dy * t); };
        curve.d1 = [=](double) { return vec2(dx, dy); };
        curve.d2 = [=](double) { return vec2(0.0, 0.0); };
    } else if (kind == "latitude") {
        const double value = param_or(params, "value", kPi / 3.0);
        curve.eval = [=](double t) { return vec2(value, t); };
        curve.d1 = [=](double) { return vec2(0.0, 1.0); };
        curve.d2 = [=](double) { return vec2(0.0, 0.0); };
    } else if (kind == "great_circle") {
        curve.eval = [=](double t) { return vec2(kPi / 2.0, t); };
        curve.d1 = [=](double) { return vec2(0.0, 1.0); };
        curve.d2 = [=](double) { return vec2(0.0, 0.0); };
    } else if (kind == "helix") {
        const double slope = param_or(params, "slope", 1.0);
        curve.eval = [=](double t) { return vec2(slope * t, t); };
        curve.d1 = [=](double) { return vec2(slope, 1.0); };
        curve.d2 = [=](double) { return vec2(0.0, 0.0); };
    } else if (kind == "custom_polynomial") {
        const Vec c0 = vec2(param_or(params, "c0x", 0.0), param_or(params, "c0y", 0.0));
        const Vec c1 = vec2(param_or(params, "c1x", 1.0), param_or(params, "c1y", 0.0));
        const Vec c2 = vec2(param_or(params, "c2x", 0.0), param_or(params, "c2y", 0.0));
        const Vec c3 = vec2(param_or(params, "c3x", 0.0), param_or(params, "c3y", 0.0));
        curve.eval = [=](double t) -> Vec { return c0 + t * (c1 + t * (c2 + t * c3)); };
        curve.d1 = [=](double t) -> Vec { return c1 + t * (2.0 * c2 + t * 3.0 * c3); };
        curve.d2 = [=](double t) -> Vec { return 2.0 * c2 + t * 6.0 * c3; };
    } else {
        throw ParamError("unknown curve kind '" + kind + "'");
    }

    // Reject curves that leave the domain or violate regularity anywhere on a
    // dense sample of the interval.
    const int samples = 256;
    for (int k = 0; k <= samples; ++k) {
        const double t = t_min + (t_max - t_min) * k / samples;
        const Vec x = curve.eval(t);
        if (!entry.chart.domain_guard(x))
            throw DomainError("make_curve: curve leaves the chart domain at t=" +
                              std::to_string(t));
        if ((entry.chart.jacobian(x) * curve.d1(t)).norm() <= tol::rank)
            throw DegenerateCurveError("make_curve: curve velocity vanishes at t=" +
                                       std::to_string(t));
    }
    return curve;
}

} // namespace rollframe
