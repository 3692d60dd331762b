#include "ternion/finite_difference.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ternion/errors.hpp"

namespace ternion::fd {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

Point shifted(Point p, int i, double d) {
    p[i] += d;
    return p;
}

void check_agreement(double coarse, double fine, double agreement, double scale) {
    if (!std::isfinite(coarse) || !std::isfinite(fine)) {
        throw NumericalBreakdown("non-finite finite-difference estimate");
    }
    if (std::abs(coarse - fine) > agreement * (1.0 + scale)) {
        throw NumericalBreakdown("finite differences disagree across step sizes: " +
                                 std::to_string(coarse) + " vs " + std::to_string(fine));
    }
}

}  // namespace

double first_step(double scale) { return std::cbrt(eps) * (1.0 + scale); }
double third_step(double scale) { return std::pow(eps, 0.2) * (1.0 + scale); }

double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

Mat3 jacobian(const VectorField& f, const Point& p, double agreement) {
    const double h = first_step(norm(p));
    Mat3 fine{}, coarse{};
    double scale = 0;
    for (int j = 0; j < 3; ++j) {
        const Vec3 fp1 = f(shifted(p, j, h));
        const Vec3 fm1 = f(shifted(p, j, -h));
        const Vec3 fp2 = f(shifted(p, j, 2 * h));
        const Vec3 fm2 = f(shifted(p, j, -2 * h));
        for (int i = 0; i < 3; ++i) {
            fine[i][j] = (fp1[i] - fm1[i]) / (2 * h);
            coarse[i][j] = (fp2[i] - fm2[i]) / (4 * h);
            scale = std::max(scale, std::abs(fine[i][j]));
        }
    }
    // Agreement is measured against the largest entry, since entries that cancel to
    // small values carry the absolute error of their neighbours.
    Mat3 m{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            check_agreement(coarse[i][j], fine[i][j], agreement, scale);
            m[i][j] = (4 * fine[i][j] - coarse[i][j]) / 3;
        }
    }
    return m;
}

double divergence(const VectorField& f, const Point& p, double agreement) {
    const Mat3 m = jacobian(f, p, agreement);
    return m[0][0] + m[1][1] + m[2][2];
}

Vec3 curl(const VectorField& f, const Point& p, double agreement) {
    const Mat3 m = jacobian(f, p, agreement);
    return {m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]};
}

double derivative(const std::function<double(double)>& f, double x, double agreement) {
    const double h = first_step(std::abs(x));
    const double d1 = (f(x + h) - f(x - h)) / (2 * h);
    const double d2 = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h);
    check_agreement(d2, d1, agreement, std::abs(d1));
    return (4 * d1 - d2) / 3;
}

Vec3 gradient(const ScalarField& f, const Point& p, double agreement) {
    Vec3 g{};
    for (int j = 0; j < 3; ++j) {
        g[j] = derivative([&](double x) { return f(shifted(p, j, x - p[j])); }, p[j], agreement);
    }
    return g;
}

double third_pure(const ScalarField& f, const Point& p, int i, double h) {
    return (f(shifted(p, i, 2 * h)) - 2 * f(shifted(p, i, h)) + 2 * f(shifted(p, i, -h)) -
            f(shifted(p, i, -2 * h))) /
           (2 * h * h * h);
}

double third_mixed(const ScalarField& f, const Point& p, double h) {
    double acc = 0;
    for (int s0 : {-1, 1}) {
        for (int s1 : {-1, 1}) {
            for (int s2 : {-1, 1}) {
                const Point x{p[0] + s0 * h, p[1] + s1 * h, p[2] + s2 * h};
                acc += s0 * s1 * s2 * f(x);
            }
        }
    }
    return acc / (8 * h * h * h);
}

}  // namespace ternion::fd
