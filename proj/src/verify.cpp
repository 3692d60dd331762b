#include "ternion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>
#include <json.hpp>

#include "ternion/algebra.hpp"
#include "ternion/calculus.hpp"
#include "ternion/dynamics.hpp"
#include "ternion/errors.hpp"
#include "ternion/field.hpp"
#include "ternion/finite_difference.hpp"
#include "ternion/quadrature.hpp"
#include "ternion/tolerances.hpp"

namespace ternion::verify {
namespace {

using json = nlohmann::json;
using std::numbers::e;
using std::numbers::pi;
using std::numbers::sqrt3;

class Rng {
  public:
    explicit Rng(std::seed_seq& seq) : gen_(seq) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    Ternary ternary(double lo = -2, double hi = 2) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    //! x0 + x1 + x2 > 0 and |z|^3 bounded away from zero.
    Ternary admissible() {
        while (true) {
            const Ternary z = ternary(-2, 3);
            if (z.x0() + z.x1() + z.x2() > 0.2 && norm_cubed(z) > 0.05) return z;
        }
    }

    //! |norm_cubed| >= 0.5, so relative errors of products stay well conditioned.
    Ternary invertible() {
        while (true) {
            const Ternary z = ternary();
            if (std::abs(norm_cubed(z)) >= 0.5) return z;
        }
    }

    //! Frame point with |l| in [0.3, 2] and |r| > 0.3.
    FrameVector frame(bool positive_l = false) {
        while (true) {
            double l = uniform(0.3, 2.0);
            if (!positive_l && uniform(0, 1) < 0.5) l = -l;
            const FrameVector v{l, uniform(-2, 2), uniform(-2, 2)};
            if (v.r_norm() > 0.3) return v;
        }
    }

  private:
    std::mt19937_64 gen_;
};

//! One sample: fills its inputs first, then returns an error measure compared against the tolerance.
using Trial = std::function<double(Rng&, json&)>;

struct Property {
    std::string name;
    int samples;
    double tol;
    Trial trial;
};

json to_json(const Ternary& z) { return json::array({z[0], z[1], z[2]}); }
json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }
json to_json(const FrameVector& v) { return json::array({v.l, v.r1, v.r2}); }

double max_diff(const Ternary& a, const Ternary& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}
double max_diff(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

std::string format_error(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

PropertyResult evaluate(const std::string& suite, const Property& p, std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    Rng rng(seq);
    PropertyResult r{suite, p.name, true, {}, {}};
    double worst = 0;
    for (int i = 0; i < p.samples; ++i) {
        json input = json::object();
        double err = 0;
        std::string failure;
        try {
            err = p.trial(rng, input);
        } catch (const std::exception& ex) {
            failure = ex.what();
        }
        if (failure.empty() && err <= p.tol) {
            worst = std::max(worst, err);
            continue;
        }
        r.passed = false;
        json cx{{"suite", suite}, {"property", p.name}, {"sample", i}, {"seed", seed}, {"input", input},
                {"tolerance", p.tol}};
        if (failure.empty()) {
            cx["error"] = std::isfinite(err) ? json(err) : json(std::to_string(err));
            r.detail = "error " + format_error(err) + " > " + format_error(p.tol) + " at sample " + std::to_string(i);
        } else {
            cx["exception"] = failure;
            r.detail = "exception at sample " + std::to_string(i) + ": " + failure;
        }
        r.counterexample = cx.dump();
        return r;
    }
    r.detail = "worst " + format_error(worst) + " <= " + format_error(p.tol) + " over " + std::to_string(p.samples) +
               (p.samples == 1 ? " sample" : " samples");
    return r;
}

//---------------------------------------------------------------------------//
// algebra
//---------------------------------------------------------------------------//

//! m0^3 + m1^3 + m2^3 - 3 m0 m1 m2 evaluated as (sum) * (half the sum of squared differences).
double cubic_form_factored(double a, double b, double c) {
    const double q = 0.5 * ((a - b) * (a - b) + (b - c) * (b - c) + (a - c) * (a - c));
    return (a + b + c) * q;
}

std::vector<Property> algebra_properties() {
    std::vector<Property> ps;
    ps.push_back({"ring laws: commutative, associative, distributive", 500, 1e-12, [](Rng& rng, json& in) {
                      const Ternary z = rng.ternary(), w = rng.ternary(), u = rng.ternary();
                      in = {{"z", to_json(z)}, {"w", to_json(w)}, {"u", to_json(u)}};
                      return std::max({max_diff(z * w, w * z), max_diff((z * w) * u, z * (w * u)),
                                       max_diff(z * (w + u), z * w + z * u)});
                  }});
    ps.push_back({"norm multiplicativity |zw|^3 = |z|^3 |w|^3 (relative)", 1000, 1e-10, [](Rng& rng, json& in) {
                      const Ternary z = rng.invertible(), w = rng.invertible();
                      in = {{"z", to_json(z)}, {"w", to_json(w)}};
                      const double rhs = norm_cubed(z) * norm_cubed(w);
                      return std::abs(norm_cubed(z * w) - rhs) / std::abs(rhs);
                  }});
    ps.push_back({"det(characteristic_matrix) = norm_cubed (relative)", 1000, 1e-10, [](Rng& rng, json& in) {
                      const Ternary z = rng.invertible();
                      in = {{"z", to_json(z)}};
                      return std::abs(characteristic_matrix(z).determinant() - norm_cubed(z)) / std::abs(norm_cubed(z));
                  }});
    ps.push_back({"characteristic matrix is a homomorphism", 500, 1e-12, [](Rng& rng, json& in) {
                      const Ternary z = rng.ternary(), w = rng.ternary();
                      in = {{"z", to_json(z)}, {"w", to_json(w)}};
                      const Matrix3 d = characteristic_matrix(z * w) - characteristic_matrix(z) * characteristic_matrix(w);
                      return d.cwiseAbs().maxCoeff() / (1 + z.max_abs() * w.max_abs());
                  }});
    ps.push_back({"inverse: z z^-1 = 1", 500, 1e-12, [](Rng& rng, json& in) {
                      const Ternary z = rng.invertible();
                      in = {{"z", to_json(z)}};
                      return max_diff(z * inverse(z), Ternary::one());
                  }});
    ps.push_back({"idempotent decomposition round trip", 500, 1e-13, [](Rng& rng, json& in) {
                      const Ternary z = rng.ternary();
                      in = {{"z", to_json(z)}};
                      return max_diff(idempotent_reconstruct(idempotent_decompose(z)), z);
                  }});
    ps.push_back({"idempotent relations K0^2 = K0, E0^2 = E0, K0 E0 = 0, I^2 = -E0, E0 I = I", 1, 1e-15,
                  [](Rng&, json&) {
                      const Ternary K = basis_K0(), E = basis_E0(), I = basis_I();
                      return std::max({max_diff(K * K, K), max_diff(E * E, E), max_diff(K * E, Ternary()),
                                       max_diff(I * I, -E), max_diff(E * I, I)});
                  }});
    ps.push_back({"cubic identity m0^3+m1^3+m2^3-3m0m1m2 = 1", 10000, 1e-10, [](Rng& rng, json& in) {
                      const double p1 = rng.uniform(-3, 3), p2 = rng.uniform(-3, 3);
                      in = {{"phi1", p1}, {"phi2", p2}};
                      return std::abs(
                          cubic_form_factored(multisine(0, p1, p2), multisine(1, p1, p2), multisine(2, p1, p2)) - 1);
                  }});
    ps.push_back({"multisines at the origin m_k(0,0) = delta_k0", 1, 1e-15, [](Rng&, json&) {
                      return std::max({std::abs(multisine(0, 0, 0) - 1), std::abs(multisine(1, 0, 0)),
                                       std::abs(multisine(2, 0, 0))});
                  }});
    ps.push_back({"multisines match the matrix exponential", 500, 1e-12, [](Rng& rng, json& in) {
                      const double p1 = rng.uniform(-3, 3), p2 = rng.uniform(-3, 3);
                      in = {{"phi1", p1}, {"phi2", p2}};
                      const Matrix3 ref = characteristic_matrix(Ternary(0, p1, p2)).exp();
                      const Matrix3 got = characteristic_matrix(
                          Ternary(multisine(0, p1, p2), multisine(1, p1, p2), multisine(2, p1, p2)));
                      return (got - ref).cwiseAbs().maxCoeff() / (1 + ref.cwiseAbs().maxCoeff());
                  }});
    ps.push_back({"multisine addition law", 500, 1e-12, [](Rng& rng, json& in) {
                      const double a1 = rng.uniform(-1.5, 1.5), a2 = rng.uniform(-1.5, 1.5);
                      const double b1 = rng.uniform(-1.5, 1.5), b2 = rng.uniform(-1.5, 1.5);
                      in = {{"a", {a1, a2}}, {"b", {b1, b2}}};
                      double worst = 0;
                      for (int k = 0; k < 3; ++k) {
                          double sum = 0;
                          for (int l = 0; l < 3; ++l) sum += multisine(l, a1, a2) * multisine((k - l + 3) % 3, b1, b2);
                          const double lhs = multisine(k, a1 + b1, a2 + b2);
                          worst = std::max(worst, std::abs(lhs - sum) / (1 + std::abs(lhs)));
                      }
                      return worst;
                  }});
    ps.push_back({"multisine duality m_k(-phi) from quadratic products", 500, 1e-10, [](Rng& rng, json& in) {
                      const double p1 = rng.uniform(-2, 2), p2 = rng.uniform(-2, 2);
                      in = {{"phi1", p1}, {"phi2", p2}};
                      const double m0 = multisine(0, p1, p2), m1 = multisine(1, p1, p2), m2 = multisine(2, p1, p2);
                      const double d[3] = {m0 * m0 - m1 * m2, m2 * m2 - m0 * m1, m1 * m1 - m0 * m2};
                      double worst = 0;
                      for (int k = 0; k < 3; ++k)
                          worst = std::max(worst, std::abs(multisine(k, -p1, -p2) - d[k]) / (1 + std::abs(d[k])));
                      return worst;
                  }});
    ps.push_back({"multisine derivatives d m_k/d phi1 = m_{k-1}, d m_k/d phi2 = m_{k-2}", 200, 1e-7,
                  [](Rng& rng, json& in) {
                      const double p1 = rng.uniform(-2, 2), p2 = rng.uniform(-2, 2);
                      in = {{"phi1", p1}, {"phi2", p2}};
                      double worst = 0;
                      for (int k = 0; k < 3; ++k) {
                          const double d1 = fd::derivative([&](double x) { return multisine(k, x, p2); }, p1, tol::fd);
                          const double d2 = fd::derivative([&](double x) { return multisine(k, p1, x); }, p2, tol::fd);
                          const double r1 = multisine((k + 2) % 3, p1, p2), r2 = multisine((k + 1) % 3, p1, p2);
                          worst = std::max({worst, std::abs(d1 - r1) / (1 + std::abs(r1)),
                                            std::abs(d2 - r2) / (1 + std::abs(r2))});
                      }
                      return worst;
                  }});
    ps.push_back({"exp(log z) = z", 10000, 1e-9, [](Rng& rng, json& in) {
                      const Ternary z = rng.admissible();
                      in = {{"z", to_json(z)}};
                      return max_diff(exp(log(z)), z) / (1 + z.max_abs());
                  }});
    ps.push_back({"exp is a homomorphism exp(z + w) = exp(z) exp(w)", 500, 1e-12, [](Rng& rng, json& in) {
                      const Ternary z = rng.ternary(-1, 1), w = rng.ternary(-1, 1);
                      in = {{"z", to_json(z)}, {"w", to_json(w)}};
                      const Ternary lhs = exp(z + w);
                      return max_diff(lhs, exp(z) * exp(w)) / (1 + lhs.max_abs());
                  }});
    ps.push_back({"polar round trip", 500, tol::round_trip, [](Rng& rng, json& in) {
                      const Ternary z = rng.admissible();
                      in = {{"z", to_json(z)}};
                      return max_diff(from_polar(to_polar(z)), z) / (1 + z.max_abs());
                  }});
    ps.push_back({"tilde product z z~ z~~ = |z|^3", 500, 1e-12, [](Rng& rng, json& in) {
                      const Ternary z = rng.ternary();
                      in = {{"z", to_json(z)}};
                      return max_diff(z * tilde_product(z), Ternary(norm_cubed(z), 0, 0)) / (1 + std::pow(z.max_abs(), 3));
                  }});
    return ps;
}

//---------------------------------------------------------------------------//
// calculus
//---------------------------------------------------------------------------//

TernaryField field_z_power(unsigned n) {
    return TernaryField::of_z([n](const Ternary& z) { return pow(z, n); },
                              [n](const Ternary& z) { return static_cast<double>(n) * pow(z, n - 1); });
}

TernaryField field_log() {
    return TernaryField::of_z([](const Ternary& z) { return log(z); }, [](const Ternary& z) { return inverse(z); });
}

std::vector<Property> calculus_properties() {
    std::vector<Property> ps;
    ps.push_back({"type-1 residuals of z^2, z^3, log z", 100, 1e-6, [](Rng& rng, json& in) {
                      const Point p = rng.admissible().components();
                      in = {{"point", to_json(p)}};
                      double worst = 0;
                      for (const auto& F : {field_z_power(2), field_z_power(3), field_log()})
                          worst = std::max(worst, check_holo_type1(F, p, tol::fd).max_residual);
                      return worst;
                  }});
    ps.push_back({"(z~ z~~)^2 is type-2 with reality, Re(z~^2 z~~) type-2 only", 20, 0.5, [](Rng& rng, json& in) {
                      const Point p = rng.admissible().components();
                      in = {{"point", to_json(p)}};
                      const auto both = TernaryField::of_z([](const Ternary& z) { return pow(tilde_product(z), 2); });
                      const auto only = TernaryField::of_z(
                          [](const Ternary& z) { return mul(pow(tilde(z), 2), tilde_tilde(z)).real(); });
                      const bool ok = check_holo_type2(both, p, tol::fd).classification == Type2Class::type2_real &&
                                      check_holo_type2(only, p, tol::fd).classification == Type2Class::type2_only;
                      return ok ? 0.0 : 1.0;
                  }});
    ps.push_back({"ternary Laplacian of the components of z^3", 100, tol::fd3, [](Rng& rng, json& in) {
                      const Point p = rng.admissible().components();
                      in = {{"point", to_json(p)}};
                      double worst = 0;
                      for (int k = 0; k < 3; ++k)
                          worst = std::max(worst, std::abs(ternary_laplacian(
                                                      [k](const Point& x) { return pow(Ternary(x), 3)[k]; }, p)));
                      return worst;
                  }});
    ps.push_back({"conformal Jacobian of z^2 equals |F'(z)|^3", 100, 1e-6, [](Rng& rng, json& in) {
                      const Point p = rng.admissible().components();
                      in = {{"point", to_json(p)}};
                      const double ref = norm_cubed(2.0 * Ternary(p));
                      return std::abs(conformal_jacobian(field_z_power(2), p) - ref) / (1 + std::abs(ref));
                  }});
    ps.push_back({"line integral of z^2 dz equals the primitive z^3/3", 50, 1e-10, [](Rng& rng, json& in) {
                      const Ternary a = rng.ternary(), b = rng.ternary();
                      in = {{"from", to_json(a)}, {"to", to_json(b)}};
                      const Ternary ref = (1.0 / 3) * (pow(b, 3) - pow(a, 3));
                      return max_diff(line_integral(field_z_power(2), presets::segment(a.components(), b.components())),
                                      ref) / (1 + ref.max_abs());
                  }});
    ps.push_back({"trisectrice residue of dz/z is (0, 2pi/sqrt3, -2pi/sqrt3)", 5, 1e-8, [](Rng& rng, json& in) {
                      const double rho = rng.uniform(0.5, 2), phi = rng.uniform(-1, 1);
                      in = {{"rho", rho}, {"phi", phi}};
                      const TernaryField inv = TernaryField::of_z([](const Ternary& z) { return inverse(z); });
                      return max_diff(line_integral(inv, presets::trisectrice_loop(rho, phi)),
                                      Ternary(0, 2 * pi / sqrt3, -2 * pi / sqrt3));
                  }});
    ps.push_back({"ternary Pythagoras J01^3+J12^3+J20^3-3J01J12J20 = rho^6/(3 sqrt3 a^3)", 200, 1e-9,
                  [](Rng& rng, json& in) {
                      const double rho = rng.uniform(0.3, 3), a = rng.uniform(0.1, 3), theta = rng.uniform(0, 2 * pi);
                      in = {{"rho", rho}, {"a", a}, {"theta", theta}};
                      const auto& J = cubic_surface_geometry(rho, a, theta).jacobians;
                      const double ref = std::pow(rho, 6) / (3 * sqrt3 * a * a * a);
                      return std::abs(cubic_form_factored(J[0], J[1], J[2]) - ref) / ref;
                  }});
    ps.push_back({"cubic-surface band integral (2pi/sqrt3) ln(a2/a1)", 3, 1e-6, [](Rng& rng, json& in) {
                      const double rho = rng.uniform(0.5, 2), a1 = rng.uniform(0.3, 1), a2 = a1 * rng.uniform(1.5, 4);
                      in = {{"rho", rho}, {"a1", a1}, {"a2", a2}};
                      const double ref = 2 * pi / sqrt3 * std::log(a2 / a1);
                      const Ternary v = surface_integral_2form(presets::inverse_tilde_product(),
                                                               presets::cubic_band(rho, a1, a2));
                      return std::abs(v[0] - ref) / ref;
                  }});
    ps.push_back({"divergence theorem for z^2 on a box", 3, 1e-9, [](Rng& rng, json& in) {
                      const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1), z = rng.uniform(-1, 1);
                      const Box box{{x, x + rng.uniform(0.2, 1)}, {y, y + rng.uniform(0.2, 1)}, {z, z + rng.uniform(0.2, 1)}};
                      in = {{"box", {box.x0[0], box.x0[1], box.x1[0], box.x1[1], box.x2[0], box.x2[1]}}};
                      Ternary flux;
                      for (const auto& face : presets::box_faces(box))
                          flux = flux + surface_integral_2form(field_z_power(2), face);
                      // div of the components of z^2 is 6 x0
                      TernaryField div;
                      div.value = [](const Point& p) { return Ternary(6 * p[0], 0, 0); };
                      const Ternary vol = volume_integral_3form(div, box);
                      return std::abs(flux[0] - vol[0]) / (1 + std::abs(vol[0]));
                  }});
    return ps;
}

//---------------------------------------------------------------------------//
// field
//---------------------------------------------------------------------------//

fd::VectorField in_frame(std::function<Vec3(const FrameVector&)> f) {
    return [f = std::move(f)](const fd::Point& p) { return f(FrameVector::from_array(p)); };
}

std::vector<Property> field_properties() {
    std::vector<Property> ps;
    ps.push_back({"frame map is orthogonal and invertible", 500, 1e-14, [](Rng& rng, json& in) {
                      const Vec3 x = rng.ternary().components();
                      in = {{"x", to_json(x)}};
                      const FrameVector v = to_frame(x);
                      const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                      return std::max(max_diff(from_frame(v), x), std::abs(v.R_norm() * v.R_norm() - n2) / (1 + n2));
                  }});
    ps.push_back({"h = (3 sqrt3 / 2) H in frame components", 500, 1e-12, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const Vec3 H = to_frame(field_H(from_frame(v))).as_array();
                      const Vec3 h = field_h(v);
                      double worst = 0;
                      for (int i = 0; i < 3; ++i)
                          worst = std::max(worst, std::abs(1.5 * sqrt3 * H[i] - h[i]) / (1 + std::abs(h[i])));
                      return worst;
                  }});
    ps.push_back({"div h and div h_rot vanish", 1000, tol::div, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const double a = fd::divergence(in_frame(field_h), v.as_array(), tol::fd);
                      const double b = fd::divergence(
                          in_frame([](const FrameVector& u) { return potential_decompose(u).h_rot; }), v.as_array(),
                          tol::fd);
                      return std::max(std::abs(a), std::abs(b));
                  }});
    ps.push_back({"h_pot + h_rot = h", 1000, 1e-9, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const auto s = potential_decompose(v);
                      const Vec3 h = field_h(v);
                      double worst = 0;
                      for (int i = 0; i < 3; ++i)
                          worst = std::max(worst, std::abs(s.h_pot[i] + s.h_rot[i] - h[i]) / (1 + std::abs(h[i])));
                      return worst;
                  }});
    ps.push_back({"h_pot is the gradient of phi_s", 200, 1e-6, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const Vec3 grad = fd::gradient(
                          [](const fd::Point& p) { return potential_decompose(FrameVector::from_array(p)).phi_s; },
                          v.as_array(), tol::fd);
                      const Vec3 hp = potential_decompose(v).h_pot;
                      return max_diff(grad, hp) / (1 + std::abs(hp[0]));
                  }});
    ps.push_back({"curl A = h for l > 0", 1000, 1e-5, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame(true);
                      in = {{"frame", to_json(v)}};
                      const Vec3 h = field_h(v);
                      return max_diff(fd::curl(in_frame(vector_potential), v.as_array(), tol::fd), h) /
                             (1 + std::abs(h[0]));
                  }});
    ps.push_back({"j = curl h_rot", 200, 1e-5, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const Vec3 j = current_density(v);
                      const Vec3 c = fd::curl(in_frame([](const FrameVector& u) { return potential_decompose(u).h_rot; }),
                                              v.as_array(), tol::fd);
                      return max_diff(c, j) / (1 + std::abs(j[1]) + std::abs(j[2]));
                  }});
    ps.push_back({"j . r = 0", 1000, 1e-12, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const Vec3 j = current_density(v);
                      return std::abs(j[0]) + std::abs(j[1] * v.r1 + j[2] * v.r2);
                  }});
    ps.push_back({"j vanishes on the cylinder |r| = sqrt2 |l|", 1000, 1e-8, [](Rng& rng, json& in) {
                      const double l = rng.uniform(0.3, 2) * (rng.uniform(0, 1) < 0.5 ? -1 : 1);
                      const double ang = rng.uniform(0, 2 * pi);
                      const double r = std::sqrt(2.0) * std::abs(l);
                      const FrameVector v{l, r * std::cos(ang), r * std::sin(ang)};
                      in = {{"frame", to_json(v)}};
                      return max_diff(current_density(v), Vec3{0, 0, 0});
                  }});
    ps.push_back({"transmuted H and rotated h stay divergence-free", 200, tol::div, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const double a = fd::divergence([](const fd::Point& p) { return cycle_components(field_H(p)); },
                                                      from_frame(v), tol::fd);
                      const double b = fd::divergence(
                          in_frame([](const FrameVector& u) { return rotate_about_trisectrice(field_h(u), 2 * pi / 3); }),
                          v.as_array(), tol::fd);
                      return std::max(std::abs(a), std::abs(b));
                  }});
    ps.push_back({"cycling components is a rotation by -2pi/3 about the trisectrice", 500, 1e-12, [](Rng& rng, json& in) {
                      const FrameVector v = rng.frame();
                      in = {{"frame", to_json(v)}};
                      const Vec3 x = from_frame(v);
                      return std::max(max_diff(to_frame(cycle_components(x)).as_array(),
                                               rotate_about_trisectrice(v.as_array(), -2 * pi / 3)),
                                      max_diff(cycle_components(field_H(x)), field_H(cycle_components(x))));
                  }});
    return ps;
}

//---------------------------------------------------------------------------//
// dynamics
//---------------------------------------------------------------------------//

std::vector<Property> dynamics_properties() {
    std::vector<Property> ps;
    ps.push_back({"asymptote equation residual", 500, 1e-12, [](Rng& rng, json& in) {
                      const double z0 = rng.uniform(0.2, 3), f = rng.uniform(0.05, 2.7);
                      in = {{"z0", z0}, {"z1", f * z0}};
                      const double zt = asymptote_solve(z0, f * z0);
                      return std::abs(asymptote_function(zt, z0) - asymptote_function(f * z0, z0)) / std::max(1.0, z0);
                  }});
    ps.push_back({"asymptote limit z~1 = z0 (1 - eps) has order 2", 1, 0.1, [](Rng&, json&) {
                      double err[3];
                      int k = 0;
                      for (double eps : {1e-2, 1e-3, 1e-4})
                          err[k++] = std::abs(asymptote_solve(2.0, 2.0 * (1 + eps)) - 2.0 * (1 - eps));
                      return std::max(std::abs(std::log10(err[0] / err[1]) - 2), std::abs(std::log10(err[1] / err[2]) - 2));
                  }});
    ps.push_back({"planar closed form reproduces its momenta", 200, 1e-12, [](Rng& rng, json& in) {
                      const double g = rng.uniform(0.5, 2), M2 = rng.uniform(0.5, 2), z0 = rng.uniform(0.5, 2);
                      const double z1 = z0 * rng.uniform(1.1, 2.5);
                      const PlanarSolution sol(g, M2, z0, z1);
                      const auto [lo, hi] = sol.z_range();
                      const double z = lo + (hi - lo) * rng.uniform(0.05, 0.95);
                      in = {{"g", g}, {"M2", M2}, {"z0", z0}, {"z1", z1}, {"z", z}};
                      const MonopoleState s = sol.state_at(z);
                      const auto M = AngularMomentum::of(s);
                      return std::max({std::abs(M.M2 - M2) / M2, std::abs(M.M0), std::abs(M.M1),
                                       std::abs(s.r[0] / s.r[1] - z) / z});
                  }});
    ps.push_back({"planar run conserves M2 and matches r1(z)", 1, 1e-4, [](Rng&, json& in) {
                      in = {{"g", 1}, {"M2", 1}, {"z0", 1}, {"z1", 2}, {"z_start", 1.99}};
                      const PlanarSolution sol(1, 1, 1, 2);
                      IntegrateOptions opt;
                      opt.max_step = 0.1;
                      const Trajectory tr = integrate(sol.state_at(1.99), 1, 2000, 1e-10, opt);
                      if (tr.relative_momentum_drift() > 1e-8) return 1.0;
                      double worst = 0;
                      for (std::size_t i = 0; i < tr.samples.size(); i += tr.samples.size() / 20) {
                          const auto& s = tr.samples[i];
                          if (s.r[2] != 0) return 1.0;
                          const double z = s.r[0] / s.r[1];
                          if (sol.in_range(z)) worst = std::max(worst, std::abs(s.r[1] / sol.r1(z) - 1));
                      }
                      return worst;
                  }});
    ps.push_back({"general closed form: K' = 1/((1+y^2)(M1+M2y))", 100, 1e-6, [](Rng& rng, json& in) {
                      const double M0 = rng.uniform(0.3, 1.5), M1 = rng.uniform(-1.5, -0.3), M2 = rng.uniform(0.3, 1.5);
                      const double pole = -M1 / M2;
                      const double y0 = pole - rng.uniform(0.5, 2), y1 = pole - rng.uniform(0.5, 2);
                      const double y = std::min(y0, y1) + rng.uniform(0, 1) * std::abs(y1 - y0);
                      in = {{"M0", M0}, {"M1", M1}, {"M2", M2}, {"y0", y0}, {"y1", y1}, {"y", y}};
                      const GeneralSolution sol(1, M0, M1, M2, y0, y1);
                      const double dK = fd::derivative([&](double x) { return sol.K(x); }, y, tol::fd);
                      const double ref = 1 / ((1 + y * y) * (M1 + M2 * y));
                      return std::abs(dK - ref) / (1 + std::abs(ref));
                  }});
    ps.push_back({"scattering setups satisfy M . v = 0", 200, 1e-12, [](Rng& rng, json& in) {
                      const Vec3 v{rng.uniform(0.5, 2), rng.uniform(0.1, 1), rng.uniform(-0.3, 0.3)};
                      const double M1 = rng.uniform(-1.5, -0.2), M2 = rng.uniform(0.2, 1.5);
                      in = {{"v_in", to_json(v)}, {"M1", M1}, {"M2", M2}};
                      return std::abs(ScatteringSetup::from_incoming(1, v, M1, M2).constraint_residual());
                  }});
    ps.push_back({"time reversal with r1 -> -r1 retraces the orbit", 1, 1e-8, [](Rng&, json& in) {
                      in = {{"v_in", {1, 0.3, 0}}, {"M1", -0.5}, {"M2", 1.0}};
                      const ScatteringSetup setup = ScatteringSetup::from_incoming(1, {1, 0.3, 0}, -0.5, 1.0);
                      const MonopoleState s0 = setup.solution().state_at(0.5 * (setup.y0 + setup.y1));
                      auto mirror = [](const MonopoleState& s) {
                          return MonopoleState{0, {s.r[0], -s.r[1], s.r[2]}, {-s.v[0], s.v[1], -s.v[2]}};
                      };
                      const MonopoleState end = integrate(s0, 1, 5, 1e-12).samples.back();
                      const MonopoleState ret = mirror(integrate(mirror(end), 1, 5, 1e-12).samples.back());
                      return std::max(max_diff(ret.r, s0.r), max_diff(ret.v, s0.v));
                  }});
    return ps;
}

std::vector<Property> properties_of(const std::string& suite) {
    if (suite == "algebra") return algebra_properties();
    if (suite == "calculus") return calculus_properties();
    if (suite == "field") return field_properties();
    if (suite == "dynamics") return dynamics_properties();
    throw ConfigError("unknown verify suite '" + suite + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "calculus", "field", "dynamics"};
    return names;
}

std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = suite_names();
    } else {
        properties_of(suite);  // validates the name before running anything
        suites = {suite};
    }
    std::vector<PropertyResult> out;
    for (const auto& name : suites) {
        const auto props = properties_of(name);
        for (std::size_t i = 0; i < props.size(); ++i) out.push_back(evaluate(name, props[i], seed, i));
    }
    return out;
}

}  // namespace ternion::verify
