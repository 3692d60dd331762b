#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace ternion {

using Matrix3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * Ternary complex number x0 + x1 q + x2 q^2 with q^3 = 1.
 *
 * Components are stored as (x0, x1, x2). Constructors reject NaN and Inf.
 */
class Ternary {
  public:
    constexpr Ternary() = default;
    Ternary(double x0, double x1, double x2);
    explicit Ternary(const std::array<double, 3>& x);

    static Ternary one() { return {1, 0, 0}; }
    static Ternary q() { return {0, 1, 0}; }
    static Ternary q2() { return {0, 0, 1}; }

    double x0() const { return x_[0]; }
    double x1() const { return x_[1]; }
    double x2() const { return x_[2]; }
    double operator[](int i) const { return x_[i]; }
    const std::array<double, 3>& components() const { return x_; }
    double max_abs() const;

    friend bool operator==(const Ternary&, const Ternary&) = default;

  private:
    std::array<double, 3> x_{0, 0, 0};
};

Ternary add(const Ternary& z, const Ternary& w);
Ternary sub(const Ternary& z, const Ternary& w);
Ternary negate(const Ternary& z);
Ternary scale(double s, const Ternary& z);
Ternary mul(const Ternary& z, const Ternary& w);

inline Ternary operator+(const Ternary& z, const Ternary& w) { return add(z, w); }
inline Ternary operator-(const Ternary& z, const Ternary& w) { return sub(z, w); }
inline Ternary operator-(const Ternary& z) { return negate(z); }
inline Ternary operator*(const Ternary& z, const Ternary& w) { return mul(z, w); }
inline Ternary operator*(double s, const Ternary& z) { return scale(s, z); }
inline Ternary operator*(const Ternary& z, double s) { return scale(s, z); }

//! Integer power by repeated squaring.
Ternary pow(const Ternary& z, unsigned n);

//! Cubed modulus x0^3 + x1^3 + x2^3 - 3 x0 x1 x2 (signed).
double norm_cubed(const Ternary& z);
//! Singular iff |norm_cubed| <= 1e-12 (1 + max|x_i|)^3.
bool is_singular(const Ternary& z);

//! Product of the two conjugates, (x0^2 - x1 x2, x2^2 - x0 x1, x1^2 - x0 x2).
Ternary tilde_product(const Ternary& z);
Ternary inverse(const Ternary& z);
//! Dual number tilde_product(z) / |z|; an involution.
Ternary bar(const Ternary& z);

//---------------------------------------------------------------------------//
// Complexified conjugates
//---------------------------------------------------------------------------//

//! Primitive cube root of unity exp(2 pi i / 3).
Complex cube_root_j();

struct ComplexTernary {
    Complex c0{}, c1{}, c2{};

    Complex operator[](int i) const { return i == 0 ? c0 : (i == 1 ? c1 : c2); }
    Ternary real() const;
    Ternary imag() const;
    double max_imag() const;
};

ComplexTernary complexify(const Ternary& z);
ComplexTernary mul(const ComplexTernary& a, const ComplexTernary& b);
ComplexTernary add(const ComplexTernary& a, const ComplexTernary& b);
ComplexTernary sub(const ComplexTernary& a, const ComplexTernary& b);
ComplexTernary scale(Complex s, const ComplexTernary& a);
ComplexTernary pow(const ComplexTernary& a, unsigned n);
//! x0 + x1 j q + x2 j^2 q^2
ComplexTernary tilde(const Ternary& z);
//! x0 + x1 j^2 q + x2 j q^2
ComplexTernary tilde_tilde(const Ternary& z);

//---------------------------------------------------------------------------//
// Idempotent basis K0 = (1,1,1)/3, E0 = (2,-1,-1)/3, I = (0,1,-1)/sqrt(3)
//---------------------------------------------------------------------------//

struct IdempotentCoords {
    double k = 0;
    double e = 0;
    double i = 0;
};

Ternary basis_K0();
Ternary basis_E0();
Ternary basis_I();
IdempotentCoords idempotent_decompose(const Ternary& z);
Ternary idempotent_reconstruct(const IdempotentCoords& c);

//---------------------------------------------------------------------------//
// Transcendental functions
//---------------------------------------------------------------------------//

//! m_k(phi1, phi2), the components of exp(phi1 q + phi2 q^2).
double multisine(int k, double phi1, double phi2);

//! exp(x0 + x1 q + x2 q^2) = e^{x0} (m0, m1, m2)(x1, x2).
Ternary exp(const Ternary& z);
//! Principal logarithm on x0 + x1 + x2 > 0, nonsingular z.
Ternary log(const Ternary& z);

class PolarForm {
  public:
    //! Requires rho > 0; theta is reduced into [0, 2 pi / sqrt 3).
    PolarForm(double rho, double phi1, double phi2);
    static PolarForm from_theta_phi(double rho, double theta, double phi);

    double rho() const { return rho_; }
    double phi1() const { return phi_ + theta_; }
    double phi2() const { return phi_ - theta_; }
    double theta() const { return theta_; }
    double phi() const { return phi_; }

  private:
    PolarForm() = default;
    double rho_ = 1;
    double theta_ = 0;
    double phi_ = 0;
};

//! Period of the compact angle theta.
double theta_period();

PolarForm to_polar(const Ternary& z);
Ternary from_polar(const PolarForm& p);

//! Sum of x_i R(q^i) with R(q) the rotation by 2 pi / 3 acting on the last two axes.
Matrix3 characteristic_matrix(const Ternary& z);

//---------------------------------------------------------------------------//
// Fault injection used by the mutation check of the verify command
//---------------------------------------------------------------------------//
namespace fault {
//! Shift the k index of multisine by the given amount; 0 disables.
void set_multisine_offset(int offset);
int multisine_offset();
}  // namespace fault

}  // namespace ternion
