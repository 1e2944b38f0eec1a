#pragma once
#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace rollframe {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Third-order array of chart second derivatives.  hess[j] is a nu x n matrix
// whose column k holds the ambient vector d_j d_k psi; symmetric in (j,k).
using Hessian = std::vector<Mat>;

// Default tolerances.  lin_tol is relative; fd_tol matches the O(h^2) central
// difference schemes at h_fd = 1e-5.
namespace tol {
inline constexpr double rank = 1e-9;
inline constexpr double lin = 1e-9;
inline constexpr double fd = 1e-5;
inline constexpr double quad = 1e-8;
inline constexpr double ode = 1e-6;
inline constexpr double straight = 1e-5;  // normalized line-fit deviation
inline constexpr double h_fd = 1e-5;      // central-difference base step
} // namespace tol

/// A parametrization psi: U subset R^n -> R^nu together with its first and
/// second derivatives and a domain predicate.  Analytic derivatives come from
/// the zoo; evaluation-only charts can be completed with finite differences
/// (see with_numeric_derivatives in oracle.hpp).
struct Chart {
    int dim_domain = 0;   // n
    int dim_ambient = 0;  // nu
    std::function<Vec(const Vec&)> eval;
    std::function<Mat(const Vec&)> jacobian;      // nu x n, columns d_i psi
    std::function<Hessian(const Vec&)> hessian;
    std::function<bool(const Vec&)> domain_guard;
};

/// A coordinate curve c: [t_min, t_max] -> U with derivatives; the ambient
/// curve is gamma = psi o c.
struct ChartCurve {
    double t_min = 0.0;
    double t_max = 1.0;
    std::function<Vec(double)> eval;
    std::function<Vec(double)> d1;
    std::function<Vec(double)> d2;
};

/// A tangent field along a curve given by its frame coefficients w(t), so
/// v(t) = sum_i e_i(t) w_i(t).  d1 is optional; when absent, consumers fall
/// back to central differences with step fd_step.
struct TangentField {
    std::function<Vec(double)> coeffs;
    std::function<Vec(double)> d1;   // may be empty
    double fd_step = 1e-6;
};

} // namespace rollframe
