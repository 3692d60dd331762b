#include "ternion/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "ternion/errors.hpp"
#include "ternion/finite_difference.hpp"
#include "ternion/quadrature.hpp"

namespace ternion {

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;
constexpr double pi = std::numbers::pi;

Point axpy(const Point& x, double s, const Point& d) {
    return {x[0] + s * d[0], x[1] + s * d[1], x[2] + s * d[2]};
}

double max_abs(const Point& p) {
    return std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
}

// Richardson central difference of a point-valued map of one variable.
Point differentiate(const std::function<Point(double)>& f, double t, double agreement) {
    Point d{};
    for (int i = 0; i < 3; ++i) {
        d[i] = fd::derivative([&](double s) { return f(s)[i]; }, t, agreement);
    }
    return d;
}

// Closeness test used when validating user-supplied partials.
bool close(const Point& a, const Point& b, double rel) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(a[i] - b[i]) > rel * (1.0 + std::abs(a[i]))) return false;
    }
    return true;
}

constexpr double parametrization_agreement = 1e-4;

}  // namespace

//---------------------------------------------------------------------------//
TernaryField TernaryField::of_z(std::function<Ternary(const Ternary&)> f,
                                std::function<Ternary(const Ternary&)> df) {
    TernaryField F;
    F.value = [f](const Point& p) { return f(as_ternary(p)); };
    if (df) F.derivative = [df](const Point& p) { return df(as_ternary(p)); };
    return F;
}

Curve::Curve(Map gamma, double ta, double tb, bool closed, Map tangent)
    : gamma_(std::move(gamma)), tangent_(std::move(tangent)), ta_(ta), tb_(tb), closed_(closed) {
    if (!(tb > ta)) throw DomainError("curve parameter range must be increasing");
    if (closed_) {
        const Point a = gamma_(ta_);
        const Point b = gamma_(tb_);
        if (max_abs(axpy(a, -1.0, b)) > tol::geo * (1.0 + max_abs(a))) {
            throw DomainError("curve marked closed but its endpoints differ");
        }
    }
}

Point Curve::tangent(double t) const {
    if (tangent_) return tangent_(t);
    return differentiate(gamma_, t, parametrization_agreement);
}

SurfacePatch::SurfacePatch(Map g, std::array<double, 2> u_range, std::array<double, 2> v_range,
                           int orientation, Map du, Map dv)
    : g_(std::move(g)), du_(std::move(du)), dv_(std::move(dv)), u_(u_range), v_(v_range),
      orientation_(orientation >= 0 ? 1 : -1) {
    if (!(u_[1] > u_[0]) || !(v_[1] > v_[0])) {
        throw DomainError("surface parameter ranges must be increasing");
    }
    // Sample interior points: differences at two step sizes must agree, and
    // supplied partials must match them.
    for (double fu : {0.25, 0.5, 0.75}) {
        for (double fv : {0.25, 0.5, 0.75}) {
            const double u = u_[0] + fu * (u_[1] - u_[0]);
            const double v = v_[0] + fv * (v_[1] - v_[0]);
            Point nu, nv;
            try {
                nu = differentiate([&](double s) { return g_(s, v); }, u, parametrization_agreement);
                nv = differentiate([&](double s) { return g_(u, s); }, v, parametrization_agreement);
            } catch (const NumericalBreakdown&) {
                throw DomainError("surface parametrization is not continuously differentiable");
            }
            if ((du_ && !close(du_(u, v), nu, 1e-5)) || (dv_ && !close(dv_(u, v), nv, 1e-5))) {
                throw DomainError("supplied surface partials disagree with finite differences");
            }
        }
    }
}

Point SurfacePatch::du(double u, double v) const {
    if (du_) return du_(u, v);
    return differentiate([&](double s) { return g_(s, v); }, u, parametrization_agreement);
}

Point SurfacePatch::dv(double u, double v) const {
    if (dv_) return dv_(u, v);
    return differentiate([&](double s) { return g_(u, s); }, v, parametrization_agreement);
}

//---------------------------------------------------------------------------//
std::array<Ternary, 3> cartesian_partials(const TernaryField& F, const Point& p) {
    const fd::Mat3 m = fd::jacobian([&](const Point& x) { return F(x).components(); }, p, tol::fd);
    std::array<Ternary, 3> d;
    for (int j = 0; j < 3; ++j) d[j] = Ternary(m[0][j], m[1][j], m[2][j]);
    return d;
}

WirtingerPartials wirtinger_partials(const TernaryField& F, const Point& p) {
    const auto d = cartesian_partials(F, p);
    // Coefficients invert x0 = (z + z~ + z~~)/3 and its cyclic companions.
    const Complex j = cube_root_j();
    const Complex j2 = j * j;
    const ComplexTernary c0 = complexify(d[0]);
    const ComplexTernary c1 = mul(ComplexTernary{0.0, 0.0, 1.0}, complexify(d[1]));
    const ComplexTernary c2 = mul(ComplexTernary{0.0, 1.0, 0.0}, complexify(d[2]));
    const Ternary dz = scale(1.0 / 3, d[0] + Ternary::q2() * d[1] + Ternary::q() * d[2]);
    const ComplexTernary dzt = scale(1.0 / 3, add(add(c0, scale(j2, c1)), scale(j, c2)));
    const ComplexTernary dztt = scale(1.0 / 3, add(add(c0, scale(j, c1)), scale(j2, c2)));
    return {dz, dzt, dztt};
}

std::array<double, 9> type1_residuals(const std::array<Ternary, 3>& d) {
    // m(i, j) = d_j f_i
    auto m = [&](int i, int j) { return d[j][i]; };
    const std::array<std::array<double, 3>, 3> chains = {{
        {m(0, 0), m(1, 1), m(2, 2)},
        {m(0, 1), m(1, 2), m(2, 0)},
        {m(0, 2), m(1, 0), m(2, 1)},
    }};
    std::array<double, 9> r{};
    int k = 0;
    for (const auto& c : chains) {
        r[k++] = std::abs(c[0] - c[1]);
        r[k++] = std::abs(c[1] - c[2]);
        r[k++] = std::abs(c[0] - c[2]);
    }
    return r;
}

Type1Report check_holo_type1(const TernaryField& F, const Point& p, double tolerance) {
    Type1Report report;
    report.cartesian = type1_residuals(cartesian_partials(F, p));
    report.max_residual = *std::max_element(report.cartesian.begin(), report.cartesian.end());

    const Ternary z = as_ternary(p);
    if (!is_singular(z) && z.x0() + z.x1() + z.x2() > 0) {
        // z F as a function of (ln rho, phi1, phi2) obeys the same system.
        TernaryField polar;
        polar.value = [&F](const Point& w) {
            const Ternary e = exp(as_ternary(w));
            return mul(e, F(as_point(e)));
        };
        const auto residuals = type1_residuals(cartesian_partials(polar, as_point(log(z))));
        report.polar = residuals;
        report.max_residual =
            std::max(report.max_residual, *std::max_element(residuals.begin(), residuals.end()));
    }
    report.pass = report.max_residual <= tolerance;
    return report;
}

std::string to_string(Type2Class c) {
    switch (c) {
        case Type2Class::none: return "not type-2";
        case Type2Class::type2_only: return "type-2 only";
        case Type2Class::type2_real: return "type-2 + reality";
    }
    return "unknown";
}

Type2Report check_holo_type2(const TernaryField& F, const Point& p, double tolerance) {
    const auto d = cartesian_partials(F, p);
    auto m = [&](int i, int j) { return d[j][i]; };
    Type2Report report;
    report.single = {m(0, 0) + m(1, 1) + m(2, 2), m(0, 2) + m(1, 0) + m(2, 1),
                     m(0, 1) + m(1, 2) + m(2, 0)};

    const WirtingerPartials w = wirtinger_partials(F, p);
    const Ternary z = as_ternary(p);
    const ComplexTernary diff =
        sub(mul(tilde(z), w.dz_tilde), mul(tilde_tilde(z), w.dz_tilde_tilde));
    report.reality = {std::abs(diff.c0), std::abs(diff.c1), std::abs(diff.c2)};

    const auto largest = [](const std::array<double, 3>& r) {
        return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    };
    if (largest(report.single) <= tolerance) {
        report.classification = largest(report.reality) <= tolerance ? Type2Class::type2_real
                                                                      : Type2Class::type2_only;
    }
    return report;
}

double ternary_laplacian(const std::function<double(const Point&)>& f, const Point& p) {
    auto at = [&](double h) {
        return fd::third_pure(f, p, 0, h) + fd::third_pure(f, p, 1, h) +
               fd::third_pure(f, p, 2, h) - 3.0 * fd::third_mixed(f, p, h);
    };
    const double h = fd::third_step(fd::norm(p));
    const double fine = at(h);
    const double coarse = at(2 * h);
    if (!std::isfinite(fine) || !std::isfinite(coarse) ||
        std::abs(fine - coarse) > tol::fd3 * (1.0 + std::abs(fine))) {
        throw NumericalBreakdown("third-order differences disagree across step sizes");
    }
    return fine;
}

double conformal_jacobian(const TernaryField& F, const Point& p) {
    const auto d = cartesian_partials(F, p);
    double scale_ref = 1.0;
    for (const auto& t : d) scale_ref = std::max(scale_ref, t.max_abs());
    const auto residuals = type1_residuals(d);
    if (*std::max_element(residuals.begin(), residuals.end()) > tol::fd * scale_ref) {
        throw NotHolomorphic("field is not type-1 holomorphic at the point");
    }
    Matrix3 m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m(i, j) = d[j][i];
    }
    return m.determinant();
}

//---------------------------------------------------------------------------//
namespace {

template<class F>
auto guard_singular(F&& f) {
    try {
        return f();
    } catch (const SingularNumber& e) {
        throw SingularOnPath(std::string("integration path meets the singular set: ") + e.what());
    } catch (const OnSingularSet& e) {
        throw SingularOnPath(std::string("integration path meets the singular set: ") + e.what());
    }
}

}  // namespace

Ternary line_integral(const TernaryField& F, const Curve& L, double tolerance) {
    auto integrand = [&](double t) {
        return mul(F(L(t)), as_ternary(L.tangent(t))).components();
    };
    return guard_singular([&] {
        return Ternary(quad::integrate<3>(integrand, L.ta(), L.tb(), {tolerance}).value);
    });
}

std::array<double, 3> jacobians_2form(const SurfacePatch& S, double u, double v) {
    const Point a = S.du(u, v);
    const Point b = S.dv(u, v);
    auto J = [&](int i, int j) { return a[i] * b[j] - a[j] * b[i]; };
    return {J(1, 2), J(2, 0), J(0, 1)};
}

Ternary surface_integral_2form(const TernaryField& Phi, const SurfacePatch& S, double tolerance) {
    const double sign = S.orientation();
    auto integrand = [&](double u, double v) {
        const Ternary f = Phi(S(u, v));
        const auto [j12, j20, j01] = jacobians_2form(S, u, v);
        return quad::Vec<3>{sign * (f[0] * j12 + f[1] * j20 + f[2] * j01),
                            sign * (f[1] * j12 + f[2] * j20 + f[0] * j01),
                            sign * (f[2] * j12 + f[0] * j20 + f[1] * j01)};
    };
    return guard_singular([&] {
        const auto& ur = S.u_range();
        const auto& vr = S.v_range();
        return Ternary(
            quad::integrate_2d<3>(integrand, ur[0], ur[1], vr[0], vr[1], {tolerance}).value);
    });
}

Ternary volume_integral_3form(const TernaryField& W, const Box& V, double tolerance) {
    auto integrand = [&](double x, double y, double z) { return W(Point{x, y, z}).components(); };
    return guard_singular([&] {
        return Ternary(quad::integrate_3d<3>(integrand, V.x0, V.x1, V.x2, {tolerance}).value);
    });
}

//---------------------------------------------------------------------------//
double cubic_surface_curvature(double rho, double a) {
    const double d = 2 * a * a * a + rho * rho * rho;
    return -9.0 * a * a * a * a / (d * d);
}

namespace {

struct BandPoint {
    Point x, da, dtheta;
};

BandPoint cubic_band_point(double rho, double a, double theta) {
    const double R = std::pow(rho, 1.5) / std::sqrt(a);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    BandPoint b;
    b.x = {a / 3 - (2.0 / 3) * R * c, a / 3 + (R / 3) * (c + sqrt3 * s),
           a / 3 + (R / 3) * (c - sqrt3 * s)};
    const double Ra = R / a;
    b.da = {1.0 / 3 + Ra * c / 3, 1.0 / 3 - Ra * (c + sqrt3 * s) / 6,
            1.0 / 3 - Ra * (c - sqrt3 * s) / 6};
    b.dtheta = {(2.0 / 3) * R * s, (R / 3) * (sqrt3 * c - s), -(R / 3) * (sqrt3 * c + s)};
    return b;
}

}  // namespace

CubicSurfaceGeometry cubic_surface_geometry(double rho, double a, double theta) {
    if (!(a > 0)) throw DomainError("cubic surface requires a > 0");
    if (!(rho > 0)) throw DomainError("cubic surface requires rho > 0");
    const BandPoint b = cubic_band_point(rho, a, theta);
    CubicSurfaceGeometry g;
    g.x = b.x;
    g.r = std::pow(rho, 1.5) / std::sqrt(a);
    const double ratio = std::pow(rho / g.r, 6);
    g.g_rr = (2.0 + 4.0 * ratio) / 3.0;
    g.g_thetatheta = (2.0 / 3.0) * g.r * g.r;
    g.gauss_curvature = cubic_surface_curvature(rho, a);
    auto J = [&](int i, int j) { return b.da[i] * b.dtheta[j] - b.da[j] * b.dtheta[i]; };
    g.jacobians = {J(1, 2), J(2, 0), J(0, 1)};
    return g;
}

//---------------------------------------------------------------------------//
namespace presets {

Curve trisectrice_loop(double rho, double phi) {
    auto gamma = [rho, phi](double t) {
        return as_point(from_polar(PolarForm(rho, phi + t, phi - t)));
    };
    auto tangent = [gamma](double t) {
        return as_point(mul(as_ternary(gamma(t)), Ternary(0, 1, -1)));
    };
    return Curve(gamma, 0.0, theta_period(), true, tangent);
}

Curve segment(const Point& a, const Point& b) {
    const Point d{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    return Curve([a, d](double t) { return axpy(a, t, d); }, 0.0, 1.0, false,
                 [d](double) { return d; });
}

SurfacePatch cubic_band(double rho, double a1, double a2) {
    if (!(a1 > 0)) throw DomainError("cubic band requires a1 > 0");
    return SurfacePatch([rho](double a, double t) { return cubic_band_point(rho, a, t).x; },
                        {a1, a2}, {0.0, 2 * pi}, 1,
                        [rho](double a, double t) { return cubic_band_point(rho, a, t).da; },
                        [rho](double a, double t) { return cubic_band_point(rho, a, t).dtheta; });
}

SurfacePatch polar_band(double rho, double phi_lo, double phi_hi) {
    auto point = [rho](double theta, double phi) {
        return from_polar(PolarForm(rho, phi + theta, phi - theta));
    };
    return SurfacePatch([point](double t, double p) { return as_point(point(t, p)); },
                        {0.0, theta_period()}, {phi_lo, phi_hi}, 1,
                        [point](double t, double p) {
                            return as_point(mul(point(t, p), Ternary(0, 1, -1)));
                        },
                        [point](double t, double p) {
                            return as_point(mul(point(t, p), Ternary(0, 1, 1)));
                        });
}

SurfacePatch sphere(const Point& c, double R) {
    return SurfacePatch(
        [c, R](double t, double p) {
            return Point{c[0] + R * std::sin(t) * std::cos(p), c[1] + R * std::sin(t) * std::sin(p),
                         c[2] + R * std::cos(t)};
        },
        {0.0, pi}, {0.0, 2 * pi}, 1,
        [R](double t, double p) {
            return Point{R * std::cos(t) * std::cos(p), R * std::cos(t) * std::sin(p),
                         -R * std::sin(t)};
        },
        [R](double t, double p) {
            return Point{-R * std::sin(t) * std::sin(p), R * std::sin(t) * std::cos(p), 0.0};
        });
}

std::vector<SurfacePatch> box_faces(const Box& box) {
    const std::array<std::array<double, 2>, 3> r = {box.x0, box.x1, box.x2};
    std::vector<SurfacePatch> faces;
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        for (int side = 0; side < 2; ++side) {
            const double level = r[k][side];
            auto g = [=](double u, double v) {
                Point x{};
                x[k] = level;
                x[i] = u;
                x[j] = v;
                return x;
            };
            auto du = [=](double, double) {
                Point e{};
                e[i] = 1;
                return e;
            };
            auto dv = [=](double, double) {
                Point e{};
                e[j] = 1;
                return e;
            };
            faces.emplace_back(g, r[i], r[j], side == 1 ? 1 : -1, du, dv);
        }
    }
    return faces;
}

TernaryField inverse_tilde_product() {
    TernaryField F;
    F.value = [](const Point& p) {
        const Ternary z = as_ternary(p);
        if (is_singular(z)) throw SingularNumber("1/(z~ z~~) at a singular point");
        return scale(1.0 / norm_cubed(z), z);
    };
    return F;
}

}  // namespace presets

}  // namespace ternion
