#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace ternion::fd {

using Point = std::array<double, 3>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;  //!< m[i][j] = d f_i / d x_j

using VectorField = std::function<Vec3(const Point&)>;
using ScalarField = std::function<double(const Point&)>;

//! Step for first derivatives: eps^{1/3} (1 + |p|).
double first_step(double scale);
//! Step for third derivatives: eps^{1/5} (1 + |p|).
double third_step(double scale);
double norm(const Point& p);

/*!
 * Jacobian of a vector field by Richardson-extrapolated central differences.
 *
 * Throws NumericalBreakdown when the estimates at steps h and 2h differ by
 * more than agreement * (1 + largest |entry|).
 */
Mat3 jacobian(const VectorField& f, const Point& p, double agreement);

double divergence(const VectorField& f, const Point& p, double agreement);
Vec3 curl(const VectorField& f, const Point& p, double agreement);

//! Derivative of a scalar function of one variable, same scheme as jacobian.
double derivative(const std::function<double(double)>& f, double x, double agreement);

//! Gradient of a scalar field.
Vec3 gradient(const ScalarField& f, const Point& p, double agreement);

//! Pure third derivative d^3 f / dx_i^3.
double third_pure(const ScalarField& f, const Point& p, int i, double h);
//! Mixed derivative d^3 f / dx0 dx1 dx2.
double third_mixed(const ScalarField& f, const Point& p, double h);

}  // namespace ternion::fd
