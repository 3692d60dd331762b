#include "ternion/algebra.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "ternion/errors.hpp"
#include "ternion/tolerances.hpp"

namespace ternion {

namespace {

constexpr double sqrt3 = std::numbers::sqrt3;
constexpr double pi = std::numbers::pi;

std::atomic<int> g_multisine_offset{0};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("non-finite ternary component ") + what);
    }
}

// Squared modulus of the complex part: (x0 - (x1+x2)/2)^2 + 3/4 (x1-x2)^2.
double complex_part_sq(const Ternary& z) {
    const double e = z.x0() - 0.5 * (z.x1() + z.x2());
    const double d = z.x1() - z.x2();
    return e * e + 0.75 * d * d;
}

}  // namespace

//---------------------------------------------------------------------------//
Ternary::Ternary(double x0, double x1, double x2) : x_{x0, x1, x2} {
    require_finite(x0, "x0");
    require_finite(x1, "x1");
    require_finite(x2, "x2");
}

Ternary::Ternary(const std::array<double, 3>& x) : Ternary(x[0], x[1], x[2]) {}

double Ternary::max_abs() const {
    return std::max({std::abs(x_[0]), std::abs(x_[1]), std::abs(x_[2])});
}

Ternary add(const Ternary& z, const Ternary& w) {
    return {z.x0() + w.x0(), z.x1() + w.x1(), z.x2() + w.x2()};
}

Ternary sub(const Ternary& z, const Ternary& w) {
    return {z.x0() - w.x0(), z.x1() - w.x1(), z.x2() - w.x2()};
}

Ternary negate(const Ternary& z) { return {-z.x0(), -z.x1(), -z.x2()}; }

Ternary scale(double s, const Ternary& z) { return {s * z.x0(), s * z.x1(), s * z.x2()}; }

Ternary mul(const Ternary& a, const Ternary& b) {
    return {a.x0() * b.x0() + a.x1() * b.x2() + a.x2() * b.x1(),
            a.x0() * b.x1() + a.x1() * b.x0() + a.x2() * b.x2(),
            a.x0() * b.x2() + a.x2() * b.x0() + a.x1() * b.x1()};
}

Ternary pow(const Ternary& z, unsigned n) {
    Ternary result = Ternary::one();
    Ternary base = z;
    while (n) {
        if (n & 1u) result = mul(result, base);
        n >>= 1u;
        if (n) base = mul(base, base);
    }
    return result;
}

double norm_cubed(const Ternary& z) {
    // Factored form a * |c|^2 loses less to cancellation than the cubic sum.
    return (z.x0() + z.x1() + z.x2()) * complex_part_sq(z);
}

bool is_singular(const Ternary& z) {
    return std::abs(norm_cubed(z)) <= tol::singular_threshold(z.max_abs());
}

Ternary tilde_product(const Ternary& z) {
    return {z.x0() * z.x0() - z.x1() * z.x2(), z.x2() * z.x2() - z.x0() * z.x1(),
            z.x1() * z.x1() - z.x0() * z.x2()};
}

Ternary inverse(const Ternary& z) {
    if (is_singular(z)) throw SingularNumber("inverse of a singular ternary number");
    return scale(1.0 / norm_cubed(z), tilde_product(z));
}

Ternary bar(const Ternary& z) {
    if (is_singular(z)) throw SingularNumber("dual of a singular ternary number");
    return scale(1.0 / std::cbrt(norm_cubed(z)), tilde_product(z));
}

//---------------------------------------------------------------------------//
Complex cube_root_j() { return {-0.5, 0.5 * sqrt3}; }

Ternary ComplexTernary::real() const { return {c0.real(), c1.real(), c2.real()}; }
Ternary ComplexTernary::imag() const { return {c0.imag(), c1.imag(), c2.imag()}; }
double ComplexTernary::max_imag() const {
    return std::max({std::abs(c0.imag()), std::abs(c1.imag()), std::abs(c2.imag())});
}

ComplexTernary complexify(const Ternary& z) { return {z.x0(), z.x1(), z.x2()}; }

ComplexTernary mul(const ComplexTernary& a, const ComplexTernary& b) {
    return {a.c0 * b.c0 + a.c1 * b.c2 + a.c2 * b.c1, a.c0 * b.c1 + a.c1 * b.c0 + a.c2 * b.c2,
            a.c0 * b.c2 + a.c2 * b.c0 + a.c1 * b.c1};
}

ComplexTernary add(const ComplexTernary& a, const ComplexTernary& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
}

ComplexTernary sub(const ComplexTernary& a, const ComplexTernary& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
}

ComplexTernary scale(Complex s, const ComplexTernary& a) { return {s * a.c0, s * a.c1, s * a.c2}; }

ComplexTernary pow(const ComplexTernary& a, unsigned n) {
    ComplexTernary result{1.0, 0.0, 0.0};
    ComplexTernary base = a;
    while (n) {
        if (n & 1u) result = mul(result, base);
        n >>= 1u;
        if (n) base = mul(base, base);
    }
    return result;
}

ComplexTernary tilde(const Ternary& z) {
    const Complex j = cube_root_j();
    return {z.x0(), z.x1() * j, z.x2() * j * j};
}

ComplexTernary tilde_tilde(const Ternary& z) {
    const Complex j = cube_root_j();
    return {z.x0(), z.x1() * j * j, z.x2() * j};
}

//---------------------------------------------------------------------------//
Ternary basis_K0() { return {1.0 / 3, 1.0 / 3, 1.0 / 3}; }
Ternary basis_E0() { return {2.0 / 3, -1.0 / 3, -1.0 / 3}; }
Ternary basis_I() { return {0.0, 1.0 / sqrt3, -1.0 / sqrt3}; }

IdempotentCoords idempotent_decompose(const Ternary& z) {
    return {z.x0() + z.x1() + z.x2(), z.x0() - 0.5 * (z.x1() + z.x2()),
            0.5 * sqrt3 * (z.x1() - z.x2())};
}

Ternary idempotent_reconstruct(const IdempotentCoords& c) {
    return add(add(scale(c.k, basis_K0()), scale(c.e, basis_E0())), scale(c.i, basis_I()));
}

//---------------------------------------------------------------------------//
namespace fault {
void set_multisine_offset(int offset) { g_multisine_offset.store(offset); }
int multisine_offset() { return g_multisine_offset.load(); }
}  // namespace fault

double multisine(int k, double phi1, double phi2) {
    k = ((k + fault::multisine_offset()) % 3 + 3) % 3;
    const double s = phi1 + phi2;
    const double arg = 0.5 * sqrt3 * (phi1 - phi2) - 2.0 * pi * k / 3.0;
    return (std::exp(s) + 2.0 * std::exp(-0.5 * s) * std::cos(arg)) / 3.0;
}

Ternary exp(const Ternary& z) {
    const double s = z.x1() + z.x2();
    const double big = z.x0() + s;
    const double small = z.x0() - 0.5 * s;
    const double limit = std::log(DBL_MAX);
    if (big > limit || small > limit) throw Overflow("ternary exponential overflows");
    const double eb = std::exp(big);
    const double es = std::exp(small);
    const double arg = 0.5 * sqrt3 * (z.x1() - z.x2());
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
        x[k] = (eb + 2.0 * es * std::cos(arg - 2.0 * pi * k / 3.0)) / 3.0;
    }
    return Ternary(x);
}

namespace {

struct LogParts {
    double log_rho;
    double phi;
    double theta;
};

LogParts log_parts(const Ternary& z) {
    if (is_singular(z)) throw SingularNumber("logarithm of a singular ternary number");
    const double a = z.x0() + z.x1() + z.x2();
    if (a <= 0) throw DomainError("logarithm requires x0 + x1 + x2 > 0");
    const double c2 = complex_part_sq(z);
    if (c2 <= 0) throw DomainError("logarithm requires rho > 0");
    const double log_rho = (std::log(a) + std::log(c2)) / 3.0;
    const double phi = 0.5 * (std::log(a) - log_rho);
    double psi = std::atan2(sqrt3 * (z.x1() - z.x2()), 2.0 * z.x0() - z.x1() - z.x2());
    if (psi < 0) psi += 2.0 * pi;
    double theta = psi / sqrt3;
    if (theta >= theta_period()) theta = 0;
    return {log_rho, phi, theta};
}

}  // namespace

Ternary log(const Ternary& z) {
    const LogParts p = log_parts(z);
    return {p.log_rho, p.phi + p.theta, p.phi - p.theta};
}

double theta_period() { return 2.0 * pi / sqrt3; }

PolarForm::PolarForm(double rho, double phi1, double phi2) {
    if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("polar form requires rho > 0");
    if (!std::isfinite(phi1) || !std::isfinite(phi2)) throw DomainError("non-finite polar angle");
    rho_ = rho;
    phi_ = 0.5 * (phi1 + phi2);
    const double period = theta_period();
    double theta = std::fmod(0.5 * (phi1 - phi2), period);
    if (theta < 0) theta += period;
    if (theta >= period) theta = 0;
    theta_ = theta;
}

PolarForm PolarForm::from_theta_phi(double rho, double theta, double phi) {
    return PolarForm(rho, phi + theta, phi - theta);
}

PolarForm to_polar(const Ternary& z) {
    const LogParts p = log_parts(z);
    return PolarForm::from_theta_phi(std::exp(p.log_rho), p.theta, p.phi);
}

Ternary from_polar(const PolarForm& p) {
    const double lr = std::log(p.rho());
    const double big = std::exp(lr + 2.0 * p.phi());
    const double small = std::exp(lr - p.phi());
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
        x[k] = (big + 2.0 * small * std::cos(sqrt3 * p.theta() - 2.0 * pi * k / 3.0)) / 3.0;
    }
    return Ternary(x);
}

//---------------------------------------------------------------------------//
Matrix3 characteristic_matrix(const Ternary& z) {
    const double off = 0.5 * sqrt3 * (z.x1() - z.x2());
    const double diag = z.x0() - 0.5 * (z.x1() + z.x2());
    Matrix3 m;
    m << z.x0() + z.x1() + z.x2(), 0, 0,
         0, diag, off,
         0, -off, diag;
    return m;
}

}  // namespace ternion
