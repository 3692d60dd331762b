#include "ternion/field.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "ternion/csv.hpp"
#include "ternion/errors.hpp"
#include "ternion/tolerances.hpp"

namespace ternion {

namespace {

constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double sqrt3 = std::numbers::sqrt3;

void require_admissible(const FrameVector& v) {
    if (!is_admissible(v)) {
        throw OnSingularSet("point lies on or near the trisectrice or the l = 0 plane");
    }
}

// ln((R - l)/(R + l)) without cancellation in the small difference.
double log_ratio(const FrameVector& v) {
    const double R = v.R_norm();
    const double r2 = v.r1 * v.r1 + v.r2 * v.r2;
    if (v.l >= 0) return std::log(r2) - 2 * std::log(R + v.l);
    return 2 * std::log(R - v.l) - std::log(r2);
}

}  // namespace

double FrameVector::r_norm() const { return std::hypot(r1, r2); }
double FrameVector::R_norm() const { return std::sqrt(l * l + r1 * r1 + r2 * r2); }

const Matrix3& frame_matrix_x1x2x0() {
    static const Matrix3 m = [] {
        Matrix3 n;
        n << 1 / sqrt3, 1 / sqrt3, 1 / sqrt3,
             1 / sqrt2, -1 / sqrt2, 0,
             1 / std::sqrt(6.0), 1 / std::sqrt(6.0), -2 / std::sqrt(6.0);
        return n;
    }();
    return m;
}

Matrix3 frame_matrix() {
    // Columns of the (x1, x2, x0) matrix reordered to (x0, x1, x2).
    const Matrix3& n = frame_matrix_x1x2x0();
    Matrix3 m;
    m.col(0) = n.col(2);
    m.col(1) = n.col(0);
    m.col(2) = n.col(1);
    return m;
}

FrameVector to_frame(const Vec3& x) {
    const Eigen::Vector3d f = frame_matrix() * Eigen::Vector3d(x[0], x[1], x[2]);
    return {f[0], f[1], f[2]};
}

Vec3 from_frame(const FrameVector& v) {
    const Eigen::Vector3d x = frame_matrix().transpose() * Eigen::Vector3d(v.l, v.r1, v.r2);
    return {x[0], x[1], x[2]};
}

Vec3 rotate_about_trisectrice(const Vec3& w, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {w[0], c * w[1] - s * w[2], s * w[1] + c * w[2]};
}

Vec3 cycle_components(const Vec3& x) {
    // (x1, x2, x0) -> (x2, x0, x1): slot x1 receives x2, slot x2 receives x0.
    return {x[1], x[2], x[0]};
}

bool is_admissible(const FrameVector& v) {
    return std::abs(v.l) > tol::field && v.r_norm() > tol::field * (1.0 + std::abs(v.l));
}

Vec3 field_H(const Vec3& x) {
    const Ternary z(x);
    if (is_singular(z)) throw OnSingularSet("H evaluated on the singular set");
    const double n = norm_cubed(z);
    return {x[0] / n, x[1] / n, x[2] / n};
}

Vec3 field_h(const FrameVector& v) {
    require_admissible(v);
    const double r2 = v.r1 * v.r1 + v.r2 * v.r2;
    return {1.0 / r2, v.r1 / (v.l * r2), v.r2 / (v.l * r2)};
}

PotentialSplit potential_decompose(const FrameVector& v) {
    require_admissible(v);
    const double R = v.R_norm();
    if (!(R - std::abs(v.l) > 0)) throw DomainError("potential requires |R| > |l|");
    const double r2 = v.r1 * v.r1 + v.r2 * v.r2;
    const double R2 = R * R;
    const double R3 = R2 * R;
    const double L = log_ratio(v);

    PotentialSplit s;
    s.phi_s = L / (2 * R);
    s.h_pot = {-v.l * L / (2 * R3) - 1.0 / R2,
               -v.r1 * L / (2 * R3) + v.l * v.r1 / (r2 * R2),
               -v.r2 * L / (2 * R3) + v.l * v.r2 / (r2 * R2)};
    s.h_rot = {v.l * L / (2 * R3) + 1.0 / R2 + 1.0 / r2,
               v.r1 * L / (2 * R3) + v.r1 / (R2 * v.l),
               v.r2 * L / (2 * R3) + v.r2 / (R2 * v.l)};
    return s;
}

Vec3 current_density(const FrameVector& v) {
    require_admissible(v);
    const double r2 = v.r1 * v.r1 + v.r2 * v.r2;
    const double c = -2.0 / (r2 * r2) + 1.0 / (v.l * v.l * r2);
    return {0.0, v.r2 * c, -v.r1 * c};
}

Vec3 vector_potential(const FrameVector& v) {
    require_admissible(v);
    if (!(v.l > 0)) throw DomainError("vector potential requires l > 0");
    const double r2 = v.r1 * v.r1 + v.r2 * v.r2;
    const double L = std::log(v.l / v.r_norm());
    return {0.0, v.r2 * L / r2, -v.r1 * L / r2};
}

FieldSample sample_field(const FrameVector& v) {
    FieldSample s;
    s.at = v;
    s.h = field_h(v);
    const PotentialSplit p = potential_decompose(v);
    s.h_pot = p.h_pot;
    s.h_rot = p.h_rot;
    s.phi_s = p.phi_s;
    s.j = current_density(v);
    if (v.l > 0) s.A = vector_potential(v);
    return s;
}

void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples) {
    csv::Writer w(os);
    w.header({"l", "r1", "r2", "h0", "h1", "h2", "hpot0", "hpot1", "hpot2", "hrot0", "hrot1",
              "hrot2", "phi", "j0", "j1", "j2"});
    for (const auto& s : samples) {
        w.row({s.at.l, s.at.r1, s.at.r2, s.h[0], s.h[1], s.h[2], s.h_pot[0], s.h_pot[1],
               s.h_pot[2], s.h_rot[0], s.h_rot[1], s.h_rot[2], s.phi_s, s.j[0], s.j[1], s.j[2]});
    }
}

}  // namespace ternion
