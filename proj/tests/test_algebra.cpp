#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ternion/errors.hpp"

using namespace ternion;
using std::numbers::pi;
using std::numbers::sqrt3;

namespace {

double max_diff(const Ternary& a, const Ternary& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

}  // namespace

TEST_CASE("constructors reject non-finite components") {
    CHECK_THROWS_AS(Ternary(NAN, 0, 0), DomainError);
    CHECK_THROWS_AS(Ternary(0, INFINITY, 0), DomainError);
}

TEST_CASE("multiplication") {
    CHECK(mul(Ternary(0, 1, 0), Ternary(0, 0, 1)) == Ternary(1, 0, 0));
    CHECK(mul(Ternary(1, 1, 0), Ternary(1, 0, 1)) == Ternary(2, 1, 1));
    oracle::Rng rng(1);
    for (int n = 0; n < 200; ++n) {
        const Ternary z = rng.ternary(), w = rng.ternary(), u = rng.ternary();
        CHECK(max_diff(mul(z, w), oracle::poly_mul(z, w)) < 1e-14);
        CHECK(max_diff(mul(z, w), mul(w, z)) < 1e-14);
        CHECK(max_diff(mul(mul(z, w), u), mul(z, mul(w, u))) < 1e-13);
        CHECK(max_diff(mul(z, w + u), mul(z, w) + mul(z, u)) < 1e-13);
        const Matrix3 lhs = characteristic_matrix(mul(z, w));
        const Matrix3 rhs = characteristic_matrix(z) * characteristic_matrix(w);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("cubed norm") {
    CHECK(norm_cubed(Ternary(1, 1, 1)) == 0);
    CHECK(norm_cubed(Ternary(0, 1, 0)) == doctest::Approx(1));
    CHECK(is_singular(Ternary(1, 1, 1)));
    CHECK(is_singular(Ternary(1, -0.5, -0.5)));
    oracle::Rng rng(2);
    for (int n = 0; n < 200; ++n) {
        const Ternary z = rng.ternary(), w = rng.ternary();
        CHECK(norm_cubed(z) == doctest::Approx(oracle::cubic_form(z[0], z[1], z[2])).epsilon(1e-12).scale(10));
        CHECK(norm_cubed(z) == doctest::Approx(characteristic_matrix(z).determinant()).scale(10));
        CHECK(norm_cubed(mul(z, w)) ==
              doctest::Approx(norm_cubed(z) * norm_cubed(w)).epsilon(1e-12).scale(100));
    }
}

TEST_CASE("conjugate product, inverse and dual") {
    CHECK(tilde_product(Ternary(0, 1, 0)) == Ternary(0, 0, 1));
    CHECK(tilde_product(Ternary(1, 0, 0)) == Ternary(1, 0, 0));
    CHECK(inverse(Ternary(0, 1, 0)) == Ternary(0, 0, 1));
    CHECK_THROWS_AS(inverse(Ternary(1, 1, 1)), SingularNumber);
    CHECK_THROWS_AS(bar(Ternary(2, -1, -1)), SingularNumber);
    oracle::Rng rng(3);
    for (int n = 0; n < 200; ++n) {
        const Ternary z = rng.ternary();
        // z * z~ z~~ = |z|^3 by schoolbook expansion
        const Ternary prod = oracle::poly_mul(z, tilde_product(z));
        CHECK(max_diff(prod, Ternary(norm_cubed(z), 0, 0)) < 1e-12);
        // tilde_product equals the complex product of the two conjugates
        const ComplexTernary c = mul(tilde(z), tilde_tilde(z));
        CHECK(c.max_imag() < 1e-12);
        CHECK(max_diff(c.real(), tilde_product(z)) < 1e-12);
        if (std::abs(norm_cubed(z)) < 1e-2) continue;
        CHECK(max_diff(mul(z, inverse(z)), Ternary::one()) < 1e-9);
        CHECK(max_diff(bar(bar(z)), z) < 1e-10 * (1 + z.max_abs()));
    }
}

TEST_CASE("idempotent decomposition") {
    const IdempotentCoords one = idempotent_decompose(Ternary(1, 0, 0));
    CHECK(one.k == doctest::Approx(1));
    CHECK(one.e == doctest::Approx(1));
    CHECK(one.i == doctest::Approx(0));
    const IdempotentCoords q = idempotent_decompose(Ternary::q());
    const Eigen::Vector3d solved = oracle::basis_coordinates(Ternary::q());
    CHECK(q.k == doctest::Approx(solved[0]));
    CHECK(q.e == doctest::Approx(solved[1]));
    CHECK(q.i == doctest::Approx(solved[2]));
    CHECK(q.e == doctest::Approx(-0.5));
    CHECK(q.i == doctest::Approx(sqrt3 / 2));

    const Ternary K0 = basis_K0(), E0 = basis_E0(), I = basis_I();
    CHECK(max_diff(mul(K0, K0), K0) < 1e-15);
    CHECK(max_diff(mul(E0, E0), E0) < 1e-15);
    CHECK(max_diff(mul(K0, E0), Ternary()) < 1e-15);
    CHECK(max_diff(mul(I, I), -E0) < 1e-15);
    CHECK(max_diff(mul(E0, I), I) < 1e-15);

    oracle::Rng rng(4);
    for (int n = 0; n < 100; ++n) {
        const Ternary z = rng.ternary();
        const IdempotentCoords c = idempotent_decompose(z);
        const Eigen::Vector3d s = oracle::basis_coordinates(z);
        CHECK(c.k == doctest::Approx(s[0]));
        CHECK(c.e == doctest::Approx(s[1]));
        CHECK(c.i == doctest::Approx(s[2]));
        CHECK(max_diff(idempotent_reconstruct(c), z) < 1e-14);
    }
}

TEST_CASE("multisine functions") {
    CHECK(multisine(0, 0, 0) == doctest::Approx(1));
    CHECK(std::abs(multisine(1, 0, 0)) < 1e-15);
    CHECK(std::abs(multisine(2, 0, 0)) < 1e-15);

    SUBCASE("matrix exponential oracle") {
        for (auto [p1, p2] : {std::pair{1.0, 0.0}, {0.3, -0.7}, {-1.2, 2.1}}) {
            const Eigen::Matrix3d e = oracle::expm(characteristic_matrix(Ternary(0, p1, p2)));
            const Ternary ref = oracle::from_characteristic(e);
            for (int k = 0; k < 3; ++k) CHECK(multisine(k, p1, p2) == doctest::Approx(ref[k]).epsilon(1e-12));
        }
    }
    SUBCASE("cubic form, addition law, duality, derivatives") {
        oracle::Rng rng(5);
        for (int n = 0; n < 200; ++n) {
            const double a1 = rng.uniform(-3, 3), a2 = rng.uniform(-3, 3);
            const double b1 = rng.uniform(-1, 1), b2 = rng.uniform(-1, 1);
            const double m0 = multisine(0, a1, a2), m1 = multisine(1, a1, a2), m2 = multisine(2, a1, a2);
            const double mag = std::max({std::abs(m0), std::abs(m1), std::abs(m2), 1.0});
            CHECK(std::abs(oracle::cubic_form(m0, m1, m2) - 1) < 1e-14 * mag * mag * mag);
            for (int k = 0; k < 3; ++k) {
                double sum = 0;
                for (int l = 0; l < 3; ++l) sum += multisine(l, a1, a2) * multisine((k - l + 3) % 3, b1, b2);
                CHECK(multisine(k, a1 + b1, a2 + b2) == doctest::Approx(sum).epsilon(1e-12));
            }
            CHECK(multisine(0, -a1, -a2) == doctest::Approx(m0 * m0 - m1 * m2).epsilon(1e-10));
            CHECK(multisine(1, -a1, -a2) == doctest::Approx(m2 * m2 - m0 * m1).epsilon(1e-10));
            CHECK(multisine(2, -a1, -a2) == doctest::Approx(m1 * m1 - m0 * m2).epsilon(1e-10));

            const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1);
            const double h = 1e-4;
            for (int k = 0; k < 3; ++k) {
                const double d1 = (multisine(k, c1 + h, c2) - multisine(k, c1 - h, c2)) / (2 * h);
                const double d2 = (multisine(k, c1, c2 + h) - multisine(k, c1, c2 - h)) / (2 * h);
                CHECK(std::abs(d1 - multisine((k + 2) % 3, c1, c2)) <= 10 * h * h);
                CHECK(std::abs(d2 - multisine((k + 1) % 3, c1, c2)) <= 10 * h * h);
            }
        }
    }
}

TEST_CASE("exponential and logarithm") {
    CHECK(max_diff(exp(Ternary()), Ternary(1, 0, 0)) < 1e-15);
    CHECK(max_diff(exp(scale(2 * pi / 3, basis_I())), Ternary::q()) < 1e-14);
    CHECK(max_diff(log(Ternary(1, 0, 0)), Ternary()) < 1e-15);
    CHECK_THROWS_AS(exp(Ternary(800, 0, 0)), Overflow);
    CHECK_THROWS_AS(log(Ternary(1, 1, 1)), SingularNumber);
    CHECK_THROWS_AS(log(Ternary(-1, 0, 0)), DomainError);

    oracle::Rng rng(6);
    for (int n = 0; n < 300; ++n) {
        const Ternary w = rng.ternary(-2, 2);
        // exp against the matrix exponential oracle
        const Ternary ref = oracle::from_characteristic(oracle::expm(characteristic_matrix(w)));
        CHECK(max_diff(exp(w), ref) < 1e-11 * (1 + ref.max_abs()));
        CHECK(max_diff(mul(exp(w), exp(-w)), Ternary::one()) < 1e-10 * (1 + exp(w).max_abs() * exp(-w).max_abs()));
        const Ternary w2 = rng.ternary(-1, 1);
        CHECK(max_diff(exp(w + w2), mul(exp(w), exp(w2))) < 1e-11 * (1 + exp(w + w2).max_abs()));

        const Ternary z = rng.admissible();
        const Ternary lz = log(z);
        CHECK(max_diff(exp(lz), z) <= 1e-10 * (1 + z.max_abs()));
        CHECK(lz[0] == doctest::Approx(std::log(norm_cubed(z)) / 3).epsilon(1e-12));
        // log(exp(w)) = w when the compact angle is already canonical
        const double theta = 0.5 * (w[1] - w[2]);
        if (theta >= 0 && theta < theta_period()) CHECK(max_diff(log(exp(w)), w) < 1e-10);
    }
}

TEST_CASE("polar form") {
    CHECK(max_diff(from_polar(PolarForm(1, 0, 0)), Ternary(1, 0, 0)) < 1e-15);
    CHECK_THROWS_AS(PolarForm(0, 0, 0), DomainError);
    const PolarForm p(2, 10, -10);  // theta = 10 reduced
    CHECK(p.theta() >= 0);
    CHECK(p.theta() < theta_period());
    oracle::Rng rng(7);
    for (int n = 0; n < 300; ++n) {
        const Ternary z = rng.admissible();
        const PolarForm pf = to_polar(z);
        CHECK(pf.theta() >= 0);
        CHECK(pf.theta() < theta_period());
        CHECK(max_diff(from_polar(pf), z) <= 1e-10 * (1 + z.max_abs()));
        // unimodular numbers have rho = 1
        const Ternary u = exp(Ternary(0, rng.uniform(-2, 2), rng.uniform(-2, 2)));
        CHECK(to_polar(u).rho() == doctest::Approx(1).epsilon(1e-10));
        // polar round trip from the other side
        const PolarForm q(rng.uniform(0.2, 3), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const PolarForm back = to_polar(from_polar(q));
        CHECK(back.rho() == doctest::Approx(q.rho()).epsilon(1e-10));
        CHECK(back.phi() == doctest::Approx(q.phi()).epsilon(1e-10).scale(1));
        CHECK(std::abs(back.theta() - q.theta()) < 1e-9);
    }
}

TEST_CASE("characteristic matrix") {
    CHECK(characteristic_matrix(Ternary::one()).isApprox(Matrix3::Identity()));
    Matrix3 rot;
    rot << 1, 0, 0, 0, -0.5, sqrt3 / 2, 0, -sqrt3 / 2, -0.5;
    CHECK((characteristic_matrix(Ternary::q()) - rot).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((characteristic_matrix(Ternary::q2()) - rot * rot).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("fault injection shifts the multisine index") {
    fault::set_multisine_offset(1);
    CHECK(multisine(0, 0, 0) == doctest::Approx(0).scale(1));
    fault::set_multisine_offset(0);
    CHECK(multisine(0, 0, 0) == doctest::Approx(1));
}
