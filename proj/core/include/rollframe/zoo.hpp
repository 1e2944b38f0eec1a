#pragma once
#include "rollframe/chart.hpp"
#include "rollframe/errors.hpp"
#include <map>
#include <string>

namespace rollframe {

/// A ready-made chart with documented closed-form ground truth.
struct ZooEntry {
    std::string name;
    std::map<std::string, double> params;
    Chart chart;
    std::string reference_facts;  // human-readable closed forms used by tests
};

/// Names accepted by make_chart.
const std::vector<std::string>& zoo_chart_names();

/// Construct a zoo chart with analytic derivatives and a safe domain guard.
///
///   plane                 psi(x,y) = (x, y, 0)
///   sphere   {radius}     psi(theta,phi), theta in (1e-3, pi-1e-3)
///   cylinder {radius}     psi(u,phi) = (R cos phi, R sin phi, u)
///   cone     {half_angle} psi(r,phi), slant coordinate r > 1e-3
///   torus    {R, r}       0 < r < R
///   graph                 psi(x,y) = (x, y, x^2 + y^2)
ZooEntry make_chart(const std::string& name, const std::map<std::string, double>& params = {});

/// Construct an analytic curve in a zoo chart's domain.
///
///   coordinate_line   {x0,y0,dx,dy}        c(t) = (x0 + dx t, y0 + dy t)
///   latitude          {value}              c(t) = (value, t)
///   great_circle      {}                   c(t) = (pi/2, t)  (sphere equator)
///   helix             {slope}              c(t) = (slope t, t)
///   custom_polynomial {c0x..c3x, c0y..c3y} cubic in each coordinate
///
/// Every sampled point must pass the chart's domain guard and the curve must
/// be regular on the interval.
ChartCurve make_curve(const ZooEntry& entry, const std::string& kind,
                      const std::map<std::string, double>& params,
                      double t_min, double t_max);

} // namespace rollframe
