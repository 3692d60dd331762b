#include "ternion/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ternion/quadrature.hpp"
#include "ternion/roots.hpp"
#include "ternion/tolerances.hpp"

namespace ternion {

namespace {

constexpr double e_const = std::numbers::e;
using cplx = std::complex<double>;

// Integral of a positive, possibly steep integrand to a relative tolerance.
double integrate_relative(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    quad::Budget probe(15);
    double guess = std::abs(quad::integrate<1>([&](double x) { return quad::Vec<1>{f(x)}; }, a,
                                               b, std::numeric_limits<double>::infinity(), probe)
                                .value[0]);
    for (int pass = 0; pass < 6; ++pass) {
        const double abs_tol = rel_tol * std::max(guess, 1e-300);
        const double value = quad::integrate_scalar(f, a, b, {abs_tol, tol::quad_budget});
        if (std::abs(value) >= 0.5 * guess) return value;
        guess = std::abs(value);
    }
    throw QuadratureFailure("relative-tolerance quadrature did not settle");
}

// Integral of 1/((1+y^2)(M1+M2 y)) from ya to yb by complex partial fractions.
double slope_integral(double M1, double M2, double ya, double yb) {
    const cplx I(0, 1);
    const cplx c1 = -(I / 2.0) / (M1 + I * M2);
    const cplx c2 = (I / 2.0) / (M1 - I * M2);
    const double c3 = M2 / (M1 * M1 + M2 * M2);
    const cplx k = c1 * std::log((yb - I) / (ya - I)) + c2 * std::log((yb + I) / (ya + I)) +
                   c3 * std::log(std::abs((M1 + yb * M2) / (M1 + ya * M2)));
    if (std::abs(k.imag()) > tol::imag * (1.0 + std::abs(k.real()))) {
        throw NumericalBreakdown("closed-form slope integral has an imaginary residue");
    }
    return k.real();
}

double sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

//---------------------------------------------------------------------------//
AngularMomentum AngularMomentum::of(const MonopoleState& s) {
    const auto& [l, r1, r2] = s.r;
    const auto& [v0, v1, v2] = s.v;
    return {r1 * v2 - r2 * v1, r2 * v0 - l * v2, l * v1 - r1 * v0};
}

double AngularMomentum::norm() const { return std::sqrt(M0 * M0 + M1 * M1 + M2 * M2); }

double kinetic_energy(const MonopoleState& s) {
    return 0.5 * (s.v[0] * s.v[0] + s.v[1] * s.v[1] + s.v[2] * s.v[2]);
}

Vec3 newton_rhs(const MonopoleState& s, double g) {
    const Vec3 h = field_h(FrameVector::from_array(s.r));
    return {-g * h[0], -g * h[1], -g * h[2]};
}

double Trajectory::relative_momentum_drift() const {
    if (momentum.empty()) return 0;
    const AngularMomentum& m0 = momentum.front();
    const double ref = std::max(m0.norm(), std::numeric_limits<double>::min());
    double worst = 0;
    for (const auto& m : momentum) {
        worst = std::max({worst, std::abs(m.M0 - m0.M0), std::abs(m.M1 - m0.M1),
                          std::abs(m.M2 - m0.M2)});
    }
    return worst / ref;
}

Trajectory integrate(const MonopoleState& s0, double g, double t_end, double tol,
                     const IntegrateOptions& options) {
    const FrameVector p0 = FrameVector::from_array(s0.r);
    if (!is_admissible(p0)) throw OnSingularSet("initial position is not admissible");
    // Length scale: the initial distance, or the impact distance |M| / |v| when smaller.
    double scale = p0.R_norm();
    const double speed = std::sqrt(2 * kinetic_energy(s0));
    const double impact = AngularMomentum::of(s0).norm() / speed;
    if (speed > 0 && impact > 0) scale = std::min(scale, impact);
    const double guard = tol::singular_approach * scale * scale * scale;

    Trajectory traj;
    bool approached = false;
    auto rhs = [g](const ode::State& x, ode::State& d, double) {
        const Vec3 h = field_h({x[0], x[1], x[2]});
        d = {x[3], x[4], x[5], -g * h[0], -g * h[1], -g * h[2]};
    };
    auto observer = [&](double t, const ode::State& x) {
        const MonopoleState s = MonopoleState::unpack(t, x);
        traj.samples.push_back(s);
        traj.momentum.push_back(AngularMomentum::of(s));
        traj.energy.push_back(kinetic_energy(s));
        const double rr = x[1] * x[1] + x[2] * x[2];
        if (std::abs(x[0]) * rr < guard) {
            approached = true;
            return false;
        }
        return true;
    };

    ode::Options opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.initial_step = options.initial_step;
    opt.max_step = options.max_step;
    opt.max_steps = options.max_steps;
    ode::State x = s0.packed();
    try {
        const ode::Stats stats = ode::integrate(rhs, x, s0.t, t_end, opt, observer);
        traj.accepted_steps = stats.accepted;
        traj.rejected_steps = stats.rejected;
    } catch (const OnSingularSet&) {
        approached = true;
    }
    if (approached) {
        const double t_stop = traj.samples.empty() ? s0.t : traj.samples.back().t;
        throw SingularApproach("trajectory approaches the singular set at t = " +
                                   std::to_string(t_stop),
                               std::move(traj));
    }
    return traj;
}

//---------------------------------------------------------------------------//
double asymptote_function(double z, double z0) {
    if (z == 0) return 0;
    return z * (std::log(std::abs(z / z0)) - 1.0);
}

double asymptote_solve(double z0, double z1) {
    if (z0 == 0 || !std::isfinite(z0)) throw DomainError("asymptote equation requires z0 != 0");
    const double s = sign(z0);
    const double a0 = std::abs(z0);
    const double a1 = s * z1;
    if (!(a1 > 0)) throw DomainError("z0 and z1 must share their sign");
    if (a1 >= e_const * a0) throw NoSecondSolution("|z1| >= e |z0|: no second asymptote");
    if (a1 == a0) throw NoSecondSolution("z1 = z0 is a double root");

    const double target = asymptote_function(a1, a0);
    auto F = [&](double z) { return asymptote_function(z, a0) - target; };

    // Geometric grids clustering at both ends of the interval holding the root.
    std::vector<double> grid;
    constexpr int per_decade = 8;
    constexpr int decades = 16;
    if (a1 > a0) {
        for (int k = 1; k <= per_decade * decades; ++k) {
            const double d = std::pow(10.0, -static_cast<double>(k) / per_decade);
            grid.push_back(a0 * d);
            grid.push_back(a0 * (1.0 - d));
        }
    } else {
        for (int k = 0; k <= per_decade * decades; ++k) {
            const double d = std::pow(10.0, -static_cast<double>(k) / per_decade);
            grid.push_back(a0 + (e_const - 1.0) * a0 * d);
            grid.push_back(e_const * a0 - (e_const - 1.0) * a0 * d);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const auto bracket = roots::scan_sign_change(F, grid);
    if (!bracket) throw RootFindingFailure("no sign change found for the second asymptote");
    const auto root =
        roots::solve_bracketed(F, bracket->first, bracket->second, 1e-12 * std::max(1.0, a0));
    return s * root.x;
}

std::string to_string(PlanarBranch b) {
    return b == PlanarBranch::turnaround ? "turnaround" : "center-reaching";
}

PlanarSolution::PlanarSolution(double g, double M2, double z0, double z1)
    : g_(g), M2_(M2), z0_(z0), z1_(z1) {
    if (M2 == 0) throw DomainError("planar solution requires M2 != 0");
    if (!(g != 0)) throw DomainError("planar solution requires g != 0");
    if (!(z0 > 0) || !(z1 > 0)) throw DomainError("planar solution requires z0 > 0 and z1 > 0");
    if (z1 == z0) throw DomainError("planar solution requires z1 != z0");
    if (z1 < e_const * z0) {
        branch_ = PlanarBranch::turnaround;
        z_tilde1_ = asymptote_solve(z0, z1);
        range_ = {std::min(z1, *z_tilde1_), std::max(z1, *z_tilde1_)};
    } else {
        branch_ = PlanarBranch::center_reaching;
        range_ = {0.0, z1};
    }
}

double PlanarSolution::denominator(double z) const {
    return asymptote_function(z, z0_) - asymptote_function(z1_, z0_);
}

void PlanarSolution::require_in_range(double z) const {
    if (!in_range(z)) {
        throw DomainError("slope " + std::to_string(z) + " lies outside the trajectory branch (" +
                          std::to_string(range_.first) + ", " + std::to_string(range_.second) +
                          ")");
    }
}

double PlanarSolution::v1(double z) const {
    if (z == 0) throw DomainError("v1 is singular at z = 0");
    return (g_ / M2_) * std::log(std::abs(z / z0_));
}

double PlanarSolution::r1(double z) const {
    require_in_range(z);
    return M2_ * M2_ / (g_ * denominator(z));
}

double PlanarSolution::t(double z, double tol) const {
    require_in_range(z);
    const double c = -M2_ * M2_ * M2_ / (g_ * g_);
    auto f = [this](double x) {
        const double b = denominator(x);
        return 1.0 / (b * b);
    };
    return c * integrate_relative(f, z0_, z, tol);
}

MonopoleState PlanarSolution::state_at(double z) const {
    const double r1v = r1(z);
    const double v1v = v1(z);
    const double zdot = -M2_ / (r1v * r1v);
    MonopoleState s;
    s.r = {z * r1v, r1v, 0.0};
    s.v = {zdot * r1v + z * v1v, v1v, 0.0};
    return s;
}

//---------------------------------------------------------------------------//
GeneralSolution::GeneralSolution(double g, double M0, double M1, double M2, double y0, double y1)
    : g_(g), M0_(M0), M1_(M1), M2_(M2), y0_(y0), y1_(y1) {
    if (M0 == 0) throw DomainError("general solution requires M0 != 0");
    if (!(g != 0)) throw DomainError("general solution requires g != 0");
    if (M1 == 0 && M2 == 0) throw DomainError("general solution requires (M1, M2) != 0");
    require_pole_free(y0, y1);
}

std::optional<double> GeneralSolution::pole() const {
    if (M2_ == 0) return std::nullopt;
    return -M1_ / M2_;
}

void GeneralSolution::require_pole_free(double a, double b) const {
    const auto p = pole();
    if (!p) return;
    if (*p >= std::min(a, b) && *p <= std::max(a, b)) {
        throw PoleOnRange("M1 + M2 y vanishes at y = " + std::to_string(*p) +
                          " inside the slope range");
    }
}

std::complex<double> GeneralSolution::K_complex(double y) const {
    return slope_integral(M1_, M2_, y0_, y);
}

double GeneralSolution::K(double y) const {
    require_pole_free(y0_, y);
    return K_complex(y).real();
}

std::complex<double> GeneralSolution::A_complex(double y) const {
    const cplx I(0, 1);
    const cplx c1 = -(I / 2.0) / (M1_ + I * M2_);
    const cplx c2 = (I / 2.0) / (M1_ - I * M2_);
    const double lin = M1_ + y * M2_;
    return c1 * (y - I) * std::log((y - I) / (e_const * (y0_ - I))) +
           c2 * (y + I) * std::log((y + I) / (e_const * (y0_ + I))) +
           lin / (M1_ * M1_ + M2_ * M2_) *
               std::log(std::abs(lin / (e_const * (M1_ + y0_ * M2_))));
}

double GeneralSolution::A(double y) const {
    require_pole_free(y0_, y);
    const cplx a = A_complex(y);
    if (std::abs(a.imag()) > tol::imag * (1.0 + std::abs(a.real()))) {
        throw NumericalBreakdown("closed-form antiderivative has an imaginary residue");
    }
    return a.real();
}

double GeneralSolution::r1(double y) const {
    const double d = A(y) - A(y1_);
    if (d == 0) throw DomainError("r1 is unbounded at an asymptotic slope");
    return -(M0_ / g_) / d;
}

double GeneralSolution::t(double y, double tol) const {
    require_pole_free(y0_, y);
    const double a1 = A(y1_);
    auto f = [this, a1](double x) {
        const double d = A(x) - a1;
        return 1.0 / (d * d);
    };
    return (M0_ / (g_ * g_)) * integrate_relative(f, y0_, y, tol);
}

MonopoleState GeneralSolution::state_at(double y) const {
    const double r1v = r1(y);
    const double v1v = v1(y);
    const double ydot = M0_ / (r1v * r1v);
    MonopoleState s;
    s.r = {-(M1_ * r1v + M2_ * y * r1v) / M0_, r1v, y * r1v};
    const double v2 = ydot * r1v + y * v1v;
    s.v = {-(M1_ * v1v + M2_ * v2) / M0_, v1v, v2};
    return s;
}

//---------------------------------------------------------------------------//
ScatteringSetup ScatteringSetup::from_incoming(double g, const Vec3& v_in, double M1, double M2) {
    const auto& [v0, v1, v2] = v_in;
    if (v0 == 0 || v1 == 0) throw DomainError("incoming velocity needs nonzero v0 and v1");
    if (M2 == 0) throw DomainError("scattering setup requires M2 != 0");
    ScatteringSetup s;
    s.g = g;
    s.v_in = v_in;
    s.M1 = M1;
    s.M2 = M2;
    s.M0 = -(M1 * v1 + M2 * v2) / v0;
    if (s.M0 == 0) throw DomainError("scattering setup requires M0 != 0");
    s.y1 = v2 / v1;
    const double yp = -M1 / M2;
    if (sign(yp - s.y1) != sign(s.M0)) {
        throw DomainError("slope moves away from the l = 0 plane; normalize M2 > 0 first");
    }
    auto G = [&](double y0) { return g * slope_integral(M1, M2, y0, s.y1) - v1; };
    const auto grid = roots::geometric_toward(s.y1, yp, 15, 240);
    const auto bracket = roots::scan_sign_change(G, grid);
    if (!bracket) throw RootFindingFailure("no slope with vanishing v1 before the pole");
    s.y0 = roots::solve_bracketed(G, bracket->first, bracket->second,
                                  1e-10 * (1.0 + std::abs(v1)))
               .x;
    return s;
}

double ScatteringSetup::constraint_residual() const {
    return M0 * v_in[0] + M1 * v_in[1] + M2 * v_in[2];
}

GeneralSolution ScatteringSetup::solution() const {
    return GeneralSolution(g, M0, M1, M2, y0, y1);
}

FinalState final_state(const ScatteringSetup& s) {
    const GeneralSolution sol = s.solution();
    const double yp = *sol.pole();
    const double a1 = sol.A(s.y1);
    auto D = [&](double y) { return sol.A(y) - a1; };
    auto grid = roots::geometric_toward(s.y0, yp, 15, 480);
    grid.erase(grid.begin());
    const auto bracket = roots::scan_sign_change(D, grid);
    if (!bracket) {
        throw NoSecondSolution("no outgoing asymptote: the trajectory reaches the l = 0 plane");
    }
    FinalState f;
    f.y_tilde1 = roots::solve_bracketed(D, bracket->first, bracket->second,
                                        1e-11 * (1.0 + std::abs(a1)))
                     .x;
    const double v1 = sol.v1(f.y_tilde1);
    const double v2 = f.y_tilde1 * v1;
    f.v_out = {-(s.M1 * v1 + s.M2 * v2) / s.M0, v1, v2};
    f.E_in = 0.5 * (s.v_in[0] * s.v_in[0] + s.v_in[1] * s.v_in[1] + s.v_in[2] * s.v_in[2]);
    f.E_out = 0.5 * (f.v_out[0] * f.v_out[0] + v1 * v1 + v2 * v2);
    return f;
}

Vec3 impact_parameter(const Vec3& v, const AngularMomentum& M) {
    const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    return {(v[1] * M.M2 - v[2] * M.M1) / vv, (v[2] * M.M0 - v[0] * M.M2) / vv,
            (v[0] * M.M1 - v[1] * M.M0) / vv};
}

ScatteringResult scattering_map(const ScatteringSetup& s) {
    const FinalState center = final_state(s);
    ScatteringResult r;
    r.y_tilde1 = center.y_tilde1;
    r.E = center.E_out;
    r.v_out = center.v_out;
    r.impact = impact_parameter(s.v_in, {s.M0, s.M1, s.M2});

    auto observe = [&](double M1, double M2) {
        try {
            const FinalState f = final_state(ScatteringSetup::from_incoming(s.g, s.v_in, M1, M2));
            return std::array<double, 2>{f.y_tilde1, f.E_out};
        } catch (const Error& e) {
            throw JacobianSingular(std::string("Jacobian stencil leaves the scattering domain: ") +
                                   e.what());
        }
    };
    const double h1 = 1e-5 * (1.0 + std::abs(s.M1));
    const double h2 = 1e-5 * (1.0 + std::abs(s.M2));
    const auto p1 = observe(s.M1 + h1, s.M2);
    const auto m1 = observe(s.M1 - h1, s.M2);
    const auto p2 = observe(s.M1, s.M2 + h2);
    const auto m2 = observe(s.M1, s.M2 - h2);
    const double dy_dM1 = (p1[0] - m1[0]) / (2 * h1);
    const double dE_dM1 = (p1[1] - m1[1]) / (2 * h1);
    const double dy_dM2 = (p2[0] - m2[0]) / (2 * h2);
    const double dE_dM2 = (p2[1] - m2[1]) / (2 * h2);
    r.J = dy_dM1 * dE_dM2 - dy_dM2 * dE_dM1;
    if (!(std::abs(r.J) >= tol::jacobian)) {
        throw JacobianSingular("scattering Jacobian vanishes: J = " + std::to_string(r.J));
    }
    const double speed = std::sqrt(2 * center.E_in);
    r.dsigma = 1.0 / (r.J * std::abs(s.v_in[0]) * speed);
    return r;
}

}  // namespace ternion
