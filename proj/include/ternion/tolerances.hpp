#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace ternion::tol {

inline constexpr double machine_eps = std::numeric_limits<double>::epsilon();

//! Relative factor of the singularity predicate, scaled by (1+max|x_i|)^3.
inline constexpr double singular_rel = 1e-12;
//! Relative tolerance for round trips (exp/log, polar, duality).
inline constexpr double round_trip = 1e-10;
//! Agreement required between finite differences at two step sizes.
inline constexpr double fd = 1e-6;
//! Absolute tolerance for third-order stencils.
inline constexpr double fd3 = 1e-3;
//! Default absolute quadrature tolerance per component.
inline constexpr double quad_abs = 1e-10;
//! Integrand evaluation budget for one quadrature call.
inline constexpr long quad_budget = 1'000'000;
//! Closed-curve detection.
inline constexpr double geo = 1e-9;
//! Admissibility margin around the singular sets of the field.
inline constexpr double field = 1e-8;
//! Divergence residual on O(1) points.
inline constexpr double div = 1e-5;
//! Allowed imaginary residue of quantities that must be real.
inline constexpr double imag = 1e-10;
//! Singularity threshold of the Jacobian in the scattering map.
inline constexpr double jacobian = 1e-12;
//! Singular-approach guard factor: stop when |l|*|r|^2 < factor * scale^3.
inline constexpr double singular_approach = 1e-6;

inline double singular_threshold(double max_abs_component) {
    const double s = 1.0 + max_abs_component;
    return singular_rel * s * s * s;
}

}  // namespace ternion::tol
