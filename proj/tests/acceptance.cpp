// Acceptance suite: one PASS/FAIL line per criterion; exit code 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "oracles.hpp"
#include "ternion/calculus.hpp"
#include "ternion/dynamics.hpp"
#include "ternion/errors.hpp"
#include "ternion/field.hpp"

using namespace ternion;
using std::numbers::e;
using std::numbers::pi;
using std::numbers::sqrt3;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("%s [%2d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

//! Runs a criterion body; a library exception is a failure of that criterion.
void criterion(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [pass, detail] = body();
        report(id, title, pass, detail);
    } catch (const std::exception& ex) {
        report(id, title, false, std::string("exception: ") + ex.what());
    }
}

double max_diff(const Ternary& a, const Ternary& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}
double max_abs(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

//! Cubic form evaluated as (a + b + c) times half the sum of squared differences.
double cubic_form_factored(double a, double b, double c) {
    return (a + b + c) * 0.5 * ((a - b) * (a - b) + (b - c) * (b - c) + (a - c) * (a - c));
}

// Fourth-order central differences on an independent stencil.
using VecField = std::function<Vec3(const Vec3&)>;

std::array<Vec3, 3> jacobian5(const VecField& f, const Vec3& p) {
    std::array<Vec3, 3> d{};  // d[j][i] = d f_i / d x_j
    for (int j = 0; j < 3; ++j) {
        const double h = 1e-3 * (1 + std::abs(p[j]));
        auto at = [&](double s) {
            Vec3 q = p;
            q[j] += s * h;
            return f(q);
        };
        const Vec3 p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
        for (int i = 0; i < 3; ++i) d[j][i] = (8 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12 * h);
    }
    return d;
}
double div5(const VecField& f, const Vec3& p) {
    const auto d = jacobian5(f, p);
    return d[0][0] + d[1][1] + d[2][2];
}
Vec3 curl5(const VecField& f, const Vec3& p) {
    const auto d = jacobian5(f, p);
    return {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
}

FrameVector random_frame(oracle::Rng& rng, bool positive_l) {
    while (true) {
        double l = rng.uniform(0.3, 2.0);
        if (!positive_l && rng.uniform(0, 1) < 0.5) l = -l;
        const FrameVector v{l, rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (v.r_norm() > 0.3) return v;
    }
}

//! Sixth-order central difference of a point-valued map along one parameter.
Point d6(const std::function<Point(double)>& f, double x, double h) {
    const Point a1 = f(x + h), b1 = f(x - h), a2 = f(x + 2 * h), b2 = f(x - 2 * h), a3 = f(x + 3 * h),
                b3 = f(x - 3 * h);
    Point d{};
    for (int i = 0; i < 3; ++i)
        d[i] = (45 * (a1[i] - b1[i]) - 9 * (a2[i] - b2[i]) + (a3[i] - b3[i])) / (60 * h);
    return d;
}

//! Root of z (ln z - 1) = c for small z > 0 by the fixed point z = -c / (1 - ln z).
double small_root_fixed_point(double c) {
    double z = -c;
    for (int i = 0; i < 200; ++i) z = -c / (1 - std::log(z));
    return z;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "cubic identity of the multisines", [] {
        oracle::Rng rng(101);
        double worst = 0;
        for (int n = 0; n < 10000; ++n) {
            const double p1 = rng.uniform(-3, 3), p2 = rng.uniform(-3, 3);
            const double v =
                cubic_form_factored(multisine(0, p1, p2), multisine(1, p1, p2), multisine(2, p1, p2));
            worst = std::max(worst, std::abs(v - 1));
        }
        return std::pair{worst <= 1e-10, fmt("max |m0^3+m1^3+m2^3-3m0m1m2 - 1| = %.3g (tol 1e-10, 10^4 samples)", worst)};
    });

    criterion(2, "norm multiplicativity and matrix oracle", [] {
        oracle::Rng rng(102);
        double worst_mul = 0, worst_det = 0;
        for (int n = 0; n < 10000; ++n) {
            const Ternary z = rng.ternary(), w = rng.ternary();
            const double nz = oracle::cubic_form(z[0], z[1], z[2]), nw = oracle::cubic_form(w[0], w[1], w[2]);
            const Ternary zw = oracle::poly_mul(z, w);
            const double rhs = nz * nw;
            worst_mul = std::max(worst_mul, std::abs(norm_cubed(zw) - norm_cubed(z) * norm_cubed(w)) / std::abs(rhs));
            worst_det = std::max(worst_det, std::abs(characteristic_matrix(z).determinant() - norm_cubed(z)) /
                                                std::abs(norm_cubed(z)));
        }
        const bool pass = worst_mul <= 1e-10 && worst_det <= 1e-10;
        return std::pair{pass, fmt("max rel |zw|^3 error %.3g", worst_mul) +
                                   fmt(", max rel det error %.3g (tol 1e-10, 10^4 pairs)", worst_det)};
    });

    criterion(3, "exp/log round trip", [] {
        oracle::Rng rng(103);
        double worst = 0;
        int n = 0;
        while (n < 10000) {
            const Ternary z = rng.ternary(-3, 3);
            if (z.x0() + z.x1() + z.x2() <= 0 || is_singular(z)) continue;
            ++n;
            const double norm = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
            worst = std::max(worst, max_diff(exp(log(z)), z) / (1 + norm));
        }
        return std::pair{worst <= 1e-9, fmt("max |exp(log z) - z| / (1+|z|) = %.3g (tol 1e-9, 10^4 samples)", worst)};
    });

    criterion(4, "trisectrice residue", [] {
        const auto inv = TernaryField::of_z([](const Ternary& z) { return inverse(z); });
        const Ternary v = line_integral(inv, presets::trisectrice_loop(1.0));
        const double err = max_diff(v, Ternary(0, 2 * pi / sqrt3, -2 * pi / sqrt3));
        return std::pair{err <= 1e-8, fmt("loop integral of dz/z off (0, 2pi/sqrt3, -2pi/sqrt3) by %.3g (tol 1e-8)", err)};
    });

    criterion(5, "surface integrals", [] {
        const TernaryField phi = presets::inverse_tilde_product();
        const double band = surface_integral_2form(phi, presets::cubic_band(1.0, 1.0, e))[0];
        const double band_ref = 2 * pi / sqrt3;
        const double e_band = std::abs(band - band_ref) / band_ref;
        const double lo = 0.2, hi = 0.9;
        const double polar = surface_integral_2form(phi, presets::polar_band(1.0, lo, hi))[0];
        const double polar_ref = 4 * pi / sqrt3 * (hi - lo);
        const double e_polar = std::abs(polar - polar_ref) / polar_ref;
        const double closed =
            std::abs(surface_integral_2form(phi, presets::sphere(from_frame({3, 2, 0}), 1.0))[0]);
        const bool pass = e_band <= 1e-6 && e_polar <= 1e-6 && closed <= 1e-8;
        return std::pair{pass, fmt("band rel err %.3g", e_band) + fmt(", polar band rel err %.3g (tol 1e-6)", e_polar) +
                                   fmt(", closed sphere %.3g (tol 1e-8)", closed)};
    });

    criterion(6, "holomorphy suites", [] {
        oracle::Rng rng(106);
        const TernaryField sq = TernaryField::of_z([](const Ternary& z) { return z * z; });
        const TernaryField cu = TernaryField::of_z([](const Ternary& z) { return pow(z, 3); });
        const TernaryField lg = TernaryField::of_z([](const Ternary& z) { return log(z); });
        // analytic derivatives for the independent Jacobian check: d_j F = F'(z) q^j
        const std::vector<std::pair<const TernaryField*, std::function<Ternary(const Ternary&)>>> fs{
            {&sq, [](const Ternary& z) { return 2.0 * z; }},
            {&cu, [](const Ternary& z) { return 3.0 * z * z; }},
            {&lg, [](const Ternary& z) { return inverse(z); }}};
        const auto both = TernaryField::of_z([](const Ternary& z) { return pow(tilde_product(z), 2); });
        const auto only =
            TernaryField::of_z([](const Ternary& z) { return mul(pow(tilde(z), 2), tilde_tilde(z)).real(); });
        const auto ident = TernaryField::of_z([](const Ternary& z) { return z; });
        double worst_res = 0, worst_jac = 0, worst_lap = 0;
        int type2_ok = 0;
        const Ternary qs[3] = {Ternary::one(), Ternary::q(), Ternary::q2()};
        for (int n = 0; n < 100; ++n) {
            const Point p = rng.admissible().components();
            for (const auto& [F, dF] : fs) {
                worst_res = std::max(worst_res, check_holo_type1(*F, p, tol::fd).max_residual);
                const auto d = cartesian_partials(*F, p);
                const Ternary fp = dF(Ternary(p));
                for (int j = 0; j < 3; ++j)
                    worst_jac = std::max(worst_jac, max_diff(d[j], fp * qs[j]) / (1 + fp.max_abs()));
            }
            type2_ok += check_holo_type2(both, p, tol::fd).classification == Type2Class::type2_real &&
                        check_holo_type2(only, p, tol::fd).classification == Type2Class::type2_only &&
                        check_holo_type2(ident, p, tol::fd).classification == Type2Class::none;
            for (int k = 0; k < 3; ++k)
                worst_lap = std::max(worst_lap,
                                     std::abs(ternary_laplacian([k](const Point& x) { return pow(Ternary(x), 3)[k]; }, p)));
        }
        const bool pass = worst_res <= 1e-6 && worst_jac <= 1e-6 && type2_ok == 100 && worst_lap <= 1e-3;
        return std::pair{pass, fmt("type-1 residual %.3g (tol 1e-6)", worst_res) +
                                   fmt(", Jacobian vs F'(z) q^j %.3g", worst_jac) +
                                   ", type-2 classes " + std::to_string(type2_ok) + "/100" +
                                   fmt(", Laplacian of z^3 %.3g (tol 1e-3)", worst_lap)};
    });

    criterion(7, "field identities", [] {
        oracle::Rng rng(107);
        auto frame_field = [](std::function<Vec3(const FrameVector&)> f) {
            return [f](const Vec3& p) { return f(FrameVector::from_array(p)); };
        };
        const VecField h = frame_field(field_h);
        const VecField hrot = frame_field([](const FrameVector& v) { return potential_decompose(v).h_rot; });
        const VecField A = frame_field(vector_potential);
        double w_div = 0, w_divrot = 0, w_split = 0, w_curlA = 0, w_jr = 0, w_cyl = 0;
        for (int n = 0; n < 1000; ++n) {
            const FrameVector v = random_frame(rng, false);
            w_div = std::max(w_div, std::abs(div5(h, v.as_array())));
            w_divrot = std::max(w_divrot, std::abs(div5(hrot, v.as_array())));
            const auto s = potential_decompose(v);
            const Vec3 hv = field_h(v);
            w_split = std::max(w_split, max_abs({s.h_pot[0] + s.h_rot[0] - hv[0], s.h_pot[1] + s.h_rot[1] - hv[1],
                                                 s.h_pot[2] + s.h_rot[2] - hv[2]}));
            const Vec3 j = current_density(v);
            w_jr = std::max(w_jr, std::abs(j[1] * v.r1 + j[2] * v.r2));

            const FrameVector u = random_frame(rng, true);
            const Vec3 c = curl5(A, u.as_array()), hu = field_h(u);
            w_curlA = std::max(w_curlA, max_abs({c[0] - hu[0], c[1] - hu[1], c[2] - hu[2]}));

            const double ang = rng.uniform(0, 2 * pi);
            const double R = std::sqrt(2.0) * std::abs(v.l);
            w_cyl = std::max(w_cyl, max_abs(current_density({v.l, R * std::cos(ang), R * std::sin(ang)})));
        }
        const bool pass = w_div <= 1e-5 && w_divrot <= 1e-5 && w_split <= 1e-9 && w_curlA <= 1e-5 && w_jr <= 1e-12 &&
                          w_cyl <= 1e-8;
        return std::pair{pass, fmt("div h %.3g", w_div) + fmt(", div h_rot %.3g", w_divrot) +
                                   fmt(", split %.3g", w_split) + fmt(", curl A - h %.3g", w_curlA) +
                                   fmt(", j.r %.3g", w_jr) + fmt(", j on cylinder %.3g", w_cyl) +
                                   " (10^3 points, |l| in [0.3,2], |r| > 0.3)"};
    });

    criterion(8, "ternary Pythagoras", [] {
        double worst = 0, worst_oracle = 0;
        for (double rho : {0.5, 1.0, 2.0})
            for (double a : {0.3, 1.0, 2.5})
                for (double theta : {0.0, 1.0, 2.5, 4.0, 6.0}) {
                    const double ref = std::pow(rho, 6) / (3 * sqrt3 * a * a * a);
                    const auto& J = cubic_surface_geometry(rho, a, theta).jacobians;
                    worst = std::max(worst, std::abs(cubic_form_factored(J[0], J[1], J[2]) - ref) / ref);
                    // Jacobians from differentiating the embedding independently
                    const Point xa = d6([&](double s) { return cubic_surface_geometry(rho, s, theta).x; }, a, 1e-3 * a);
                    const Point xt = d6([&](double s) { return cubic_surface_geometry(rho, a, s).x; }, theta, 1e-3);
                    const double K[3] = {xa[1] * xt[2] - xa[2] * xt[1], xa[2] * xt[0] - xa[0] * xt[2],
                                         xa[0] * xt[1] - xa[1] * xt[0]};
                    worst_oracle = std::max(worst_oracle, std::abs(cubic_form_factored(K[0], K[1], K[2]) - ref) / ref);
                }
        const bool pass = worst <= 1e-9 && worst_oracle <= 1e-9;
        return std::pair{pass, fmt("max rel error %.3g", worst) +
                                   fmt(", with independently differentiated Jacobians %.3g (tol 1e-9, 45 grid points)",
                                       worst_oracle)};
    });

    criterion(9, "dynamics conservation and closed-form oracle", [] {
        const PlanarSolution sol(1, 1, 1, 2);
        IntegrateOptions opt;
        opt.max_step = 0.1;
        const Trajectory tr = integrate(sol.state_at(1.99), 1, 2000, 1e-10, opt);
        double drift = 0, planar = 0;
        for (const auto& M : tr.momentum) drift = std::max(drift, std::abs(M.M2 - tr.momentum.front().M2));
        drift /= std::abs(tr.momentum.front().M2);
        for (const auto& s : tr.samples) planar = std::max({planar, std::abs(s.r[2]), std::abs(s.v[2])});
        // 20 slopes spread over the traversed range, matched at the nearest sample
        const auto [zlo, zhi] = sol.z_range();
        double worst_r1 = 0;
        int matched = 0;
        for (int k = 1; k <= 20; ++k) {
            const double target = zhi - (zhi - zlo) * k / 21.0;
            const MonopoleState* best = nullptr;
            double best_gap = INFINITY;
            for (const auto& s : tr.samples) {
                const double gap = std::abs(s.r[0] / s.r[1] - target);
                if (gap < best_gap) best_gap = gap, best = &s;
            }
            const double z = best->r[0] / best->r[1];
            if (!sol.in_range(z)) continue;
            worst_r1 = std::max(worst_r1, std::abs(best->r[1] / sol.r1(z) - 1));
            ++matched;
        }

        // general run against the general solution
        const ScatteringSetup setup = ScatteringSetup::from_incoming(1, {1, 0.3, 0}, -1, 0.5);
        const GeneralSolution gsol = setup.solution();
        const Trajectory gt = integrate(gsol.state_at(setup.y1 + 1e-2 * (setup.y0 - setup.y1)), 1, 200, 1e-10);
        const double pole = *gsol.pole();
        double worst_gen = 0;
        int gmatched = 0;
        for (std::size_t i = 0; i < gt.samples.size(); i += std::max<std::size_t>(1, gt.samples.size() / 25)) {
            const auto& s = gt.samples[i];
            const double y = s.r[2] / s.r[1];
            if ((y - setup.y1) * (y - pole) > 0) continue;
            const MonopoleState c = gsol.state_at(y);
            worst_gen = std::max({worst_gen, std::abs(s.r[1] / c.r[1] - 1), std::abs(s.r[0] / c.r[0] - 1)});
            ++gmatched;
        }
        const bool pass = tr.accepted_steps >= 10000 && drift <= 1e-8 && planar <= 1e-9 && matched == 20 &&
                          worst_r1 <= 1e-4 && gmatched >= 10 && worst_gen <= 1e-3;
        return std::pair{pass, std::to_string(tr.accepted_steps) + " steps" + fmt(", M2 drift %.3g (tol 1e-8)", drift) +
                                   fmt(", planarity %.3g", planar) + ", r1 matched at " + std::to_string(matched) +
                                   fmt(" slopes, max rel %.3g (tol 1e-4)", worst_r1) + fmt(", general run max rel %.3g", worst_gen) +
                                   " at " + std::to_string(gmatched) + " samples (tol 1e-3)"};
    });

    criterion(10, "asymptote limits", [] {
        const double epss[3] = {1e-2, 1e-3, 1e-4};
        double residual = 0;
        auto solve = [&](double z0, double z1) {
            const double zt = asymptote_solve(z0, z1);
            residual = std::max(residual, std::abs(asymptote_function(zt, z0) - asymptote_function(z1, z0)) /
                                              std::max(1.0, z0));
            return zt;
        };
        // z1 = z0 (1 + eps): z~1 = z0 (1 - eps) + O(eps^2)
        double err[3];
        for (int k = 0; k < 3; ++k) err[k] = std::abs(solve(2.0, 2.0 * (1 + epss[k])) - 2.0 * (1 - epss[k]));
        const double p1 = std::log10(err[0] / err[1]), p2 = std::log10(err[1] / err[2]);
        const bool order_ok = std::abs(p1 - 2) <= 0.1 && std::abs(p2 - 2) <= 0.1 && std::abs(p1 - p2) <= 0.1;

        // z1 = e z0 (1 - eps): z~1 ~ eps e z0 / ln(1/eps), relative correction of order ln L / L
        const double z0 = 1.5;
        double dev[3], coef[3], worst_fp = 0;
        for (int k = 0; k < 3; ++k) {
            const double eps = epss[k];
            const double zt = solve(z0, e * z0 * (1 - eps));
            worst_fp = std::max(worst_fp, std::abs(zt / z0 / small_root_fixed_point(asymptote_function(e * (1 - eps), 1.0)) - 1));
            const double L = std::log(1 / eps);
            dev[k] = zt * L / (eps * e * z0) - 1;
            coef[k] = dev[k] * L / std::log(L);
        }
        const bool scaling_ok = std::abs(dev[2]) < std::abs(dev[1]) && std::abs(dev[1]) < std::abs(dev[0]) &&
                                worst_fp <= 1e-10 && std::abs(coef[1] - coef[2]) < std::abs(coef[0] - coef[1]);
        const bool pass = order_ok && scaling_ok && residual <= 1e-12;
        return std::pair{pass, fmt("limit 1 orders %.4f", p1) + fmt(", %.4f", p2) + fmt("; limit 2 ratio-1 %.3g", dev[0]) +
                                   fmt(", %.3g", dev[1]) + fmt(", %.3g", dev[2]) + fmt(" (x L/lnL: %.3f", coef[0]) +
                                   fmt(", %.3f", coef[1]) + fmt(", %.3f)", coef[2]) +
                                   fmt(", fixed-point oracle %.3g", worst_fp) + fmt("; residual %.3g (tol 1e-12)", residual)};
    });

    criterion(11, "scattering end to end", [] {
        const double drift_bound = 1e-8;
        double worst_slope = 0, worst_constraint = 0, max_dE = 0, worst_drift = 0;
        int rows = 0;
        for (double M1 : {-1.0, -0.5, 0.5})
            for (double M2 : {0.5, 1.0, 1.5}) {
                const ScatteringSetup s = ScatteringSetup::from_incoming(1, {1, 0.3, 0}, M1, M2);
                worst_constraint = std::max(worst_constraint, std::abs(s.constraint_residual()));
                const FinalState f = final_state(s);
                const MonopoleState start = s.solution().state_at(s.y1 + 1e-3 * (s.y0 - s.y1));
                const Trajectory tr = integrate(start, 1, 1e5, 1e-11);
                const auto& last = tr.samples.back();
                worst_slope = std::max(worst_slope, std::abs(last.r[2] / last.r[1] - f.y_tilde1) / std::abs(f.y_tilde1));
                worst_drift = std::max(worst_drift, tr.relative_momentum_drift());
                max_dE = std::max(max_dE, std::abs(tr.energy.back() - tr.energy.front()));
                ++rows;
            }
        const bool pass = rows == 9 && worst_slope <= 1e-3 && worst_constraint <= 1e-12 &&
                          worst_drift <= drift_bound && max_dE > 10 * drift_bound;
        return std::pair{pass, fmt("max rel |y~1 - late r2/r1| %.3g (tol 1e-3)", worst_slope) +
                                   fmt(", max |M.v| %.3g (tol 1e-12)", worst_constraint) +
                                   fmt(", max |dE| %.3g", max_dE) + fmt(" vs drift bound %.0e", drift_bound) +
                                   fmt(" (observed drift %.3g)", worst_drift)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
