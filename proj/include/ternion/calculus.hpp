#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ternion/algebra.hpp"
#include "ternion/tolerances.hpp"

namespace ternion {

using Point = std::array<double, 3>;

inline Ternary as_ternary(const Point& p) { return Ternary(p); }
inline Point as_point(const Ternary& z) { return z.components(); }

//---------------------------------------------------------------------------//
/*!
 * Ternary-valued field F = f0 + f1 q + f2 q^2 on R^3.
 *
 * The optional derivative is the analytic F'(z) of a holomorphic field.
 */
struct TernaryField {
    std::function<Ternary(const Point&)> value;
    std::function<Ternary(const Point&)> derivative;

    Ternary operator()(const Point& p) const { return value(p); }

    //! Field F(z) = f(z) for a function of the ternary variable.
    static TernaryField of_z(std::function<Ternary(const Ternary&)> f,
                             std::function<Ternary(const Ternary&)> df = {});
};

//! Parametrized curve t -> gamma(t) on [ta, tb].
class Curve {
  public:
    using Map = std::function<Point(double)>;

    //! Throws DomainError if marked closed and the endpoints differ by more than 1e-9.
    Curve(Map gamma, double ta, double tb, bool closed, Map tangent = {});

    Point operator()(double t) const { return gamma_(t); }
    Point tangent(double t) const;
    double ta() const { return ta_; }
    double tb() const { return tb_; }
    bool closed() const { return closed_; }

  private:
    Map gamma_;
    Map tangent_;
    double ta_, tb_;
    bool closed_;
};

//! Parametrized surface g(u, v) over a rectangle; (d_u g, d_v g) fixes positive orientation.
class SurfacePatch {
  public:
    using Map = std::function<Point(double, double)>;

    //! Checks continuity of the partials at interior sample points (DomainError otherwise).
    SurfacePatch(Map g, std::array<double, 2> u_range, std::array<double, 2> v_range,
                 int orientation = 1, Map du = {}, Map dv = {});

    Point operator()(double u, double v) const { return g_(u, v); }
    Point du(double u, double v) const;
    Point dv(double u, double v) const;
    const std::array<double, 2>& u_range() const { return u_; }
    const std::array<double, 2>& v_range() const { return v_; }
    int orientation() const { return orientation_; }

  private:
    Map g_, du_, dv_;
    std::array<double, 2> u_, v_;
    int orientation_;
};

struct Box {
    std::array<double, 2> x0, x1, x2;
};

//---------------------------------------------------------------------------//
// Differential operators
//---------------------------------------------------------------------------//

/*!
 * Derivatives with respect to z and its two conjugates.
 *
 * dF/dz is real; the conjugate derivatives live in the complexified algebra.
 */
struct WirtingerPartials {
    Ternary dz;
    ComplexTernary dz_tilde;
    ComplexTernary dz_tilde_tilde;
};

//! Cartesian derivatives d_j F as ternary numbers, computed by finite differences.
std::array<Ternary, 3> cartesian_partials(const TernaryField& F, const Point& p);

WirtingerPartials wirtinger_partials(const TernaryField& F, const Point& p);

struct Type1Report {
    std::array<double, 9> cartesian{};
    std::optional<std::array<double, 9>> polar;  //!< residuals for z F in (ln rho, phi1, phi2)
    double max_residual = 0;
    bool pass = false;
};

//! Nine pairwise residuals of the double-analyticity system from d_j f_i.
std::array<double, 9> type1_residuals(const std::array<Ternary, 3>& partials);

Type1Report check_holo_type1(const TernaryField& F, const Point& p, double tolerance);

enum class Type2Class { none, type2_only, type2_real };
std::string to_string(Type2Class c);

struct Type2Report {
    std::array<double, 3> single{};   //!< components of dF/dz
    std::array<double, 3> reality{};  //!< |components of z~ dF/dz~ - z~~ dF/dz~~|
    Type2Class classification = Type2Class::none;
};

Type2Report check_holo_type2(const TernaryField& F, const Point& p, double tolerance);

//! d^3/dx0^3 + d^3/dx1^3 + d^3/dx2^3 - 3 d^3/dx0 dx1 dx2 by central differences.
double ternary_laplacian(const std::function<double(const Point&)>& f, const Point& p);

//! Determinant of d(f0,f1,f2)/d(x0,x1,x2); throws NotHolomorphic if the type-1 check fails.
double conformal_jacobian(const TernaryField& F, const Point& p);

//---------------------------------------------------------------------------//
// Integration of forms
//---------------------------------------------------------------------------//

//! Integral of F dz along the curve (ternary product of F and the tangent).
Ternary line_integral(const TernaryField& F, const Curve& L, double tolerance = tol::quad_abs);

//! Jacobians (J12, J20, J01) of the map at (u, v).
std::array<double, 3> jacobians_2form(const SurfacePatch& S, double u, double v);

//! Integral of Omega0 + Omega1 q + Omega2 q^2 built from Phi and the Jacobians.
Ternary surface_integral_2form(const TernaryField& Phi, const SurfacePatch& S,
                               double tolerance = tol::quad_abs);

//! Componentwise volume integral of W over a box.
Ternary volume_integral_3form(const TernaryField& W, const Box& V, double tolerance = tol::quad_abs);

//---------------------------------------------------------------------------//
// Cubic surface x0^3 + x1^3 + x2^3 - 3 x0 x1 x2 = rho^3
//---------------------------------------------------------------------------//

struct CubicSurfaceGeometry {
    Point x;                          //!< surface point
    double r = 0;                     //!< transverse radius, a r^2 = rho^3
    double g_rr = 0;                  //!< metric coefficient of dr^2
    double g_thetatheta = 0;          //!< metric coefficient of d theta^2
    double gauss_curvature = 0;
    std::array<double, 3> jacobians;  //!< (J12, J20, J01) for the (a, theta) parametrization
};

CubicSurfaceGeometry cubic_surface_geometry(double rho, double a, double theta);

//! Gauss curvature of the cubic surface, -9 a^4 / (2 a^3 + rho^3)^2.
double cubic_surface_curvature(double rho, double a);

//---------------------------------------------------------------------------//
// Curve and surface presets
//---------------------------------------------------------------------------//
namespace presets {

//! Closed loop z = rho exp((phi + t) q + (phi - t) q^2), t in [0, 2 pi / sqrt 3].
Curve trisectrice_loop(double rho, double phi = 0);
//! Straight segment between two points.
Curve segment(const Point& a, const Point& b);
//! Cubic-surface band a in [a1, a2], theta in [0, 2 pi], ordered (a, theta).
SurfacePatch cubic_band(double rho, double a1, double a2);
//! Polar band (theta, phi) in [0, 2 pi / sqrt 3] x [phi_lo, phi_hi] at fixed rho.
SurfacePatch polar_band(double rho, double phi_lo, double phi_hi);
//! Sphere with outward orientation.
SurfacePatch sphere(const Point& center, double radius);
//! The six faces of a box, oriented outward.
std::vector<SurfacePatch> box_faces(const Box& box);
//! Field 1/(z~ z~~) = z / |z|^3.
TernaryField inverse_tilde_product();

}  // namespace presets

}  // namespace ternion
