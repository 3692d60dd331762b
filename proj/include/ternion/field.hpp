#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ternion/algebra.hpp"

namespace ternion {

using Vec3 = std::array<double, 3>;

//! Coordinates (l, r1, r2): l along the trisectrice, (r1, r2) transverse.
struct FrameVector {
    double l = 0;
    double r1 = 0;
    double r2 = 0;

    double r_norm() const;  //!< |r| = sqrt(r1^2 + r2^2)
    double R_norm() const;  //!< |R| = sqrt(l^2 + |r|^2)
    Vec3 as_array() const { return {l, r1, r2}; }
    static FrameVector from_array(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

/*!
 * Orthogonal map onto the frame, rows n0, n1, n2, acting on (x1, x2, x0).
 *
 * n0 = (1,1,1)/sqrt3, n1 = (1,-1,0)/sqrt2, n2 = (1,1,-2)/sqrt6.
 */
const Matrix3& frame_matrix_x1x2x0();

//! Same map acting on storage order (x0, x1, x2).
Matrix3 frame_matrix();

FrameVector to_frame(const Vec3& x);
Vec3 from_frame(const FrameVector& v);
//! Rotate the frame components of a vector by angle about the l axis.
Vec3 rotate_about_trisectrice(const Vec3& frame_vec, double angle);
//! Component transmutation (H1, H2, H0) -> (H2, H0, H1) in storage order.
Vec3 cycle_components(const Vec3& x);

//! True when |l| > 1e-8 and |r| > 1e-8 (1 + |l|).
bool is_admissible(const FrameVector& v);

//! H = x / |z|^3 in storage coordinates.
Vec3 field_H(const Vec3& x);
//! h = (3 sqrt3 / 2) H in frame components: (1/|r|^2, r1/(l|r|^2), r2/(l|r|^2)).
Vec3 field_h(const FrameVector& v);

struct PotentialSplit {
    double phi_s = 0;
    Vec3 h_pot{};
    Vec3 h_rot{};
};

//! phi_s = ln((R - l)/(R + l)) / (2R), h_pot = grad phi_s, h_rot from its closed form.
PotentialSplit potential_decompose(const FrameVector& v);

//! (0, r2 c, -r1 c) with c = -2/|r|^4 + 1/(l^2 |r|^2).
Vec3 current_density(const FrameVector& v);

//! Gauge A0 = 0: (0, r2, -r1) ln(l/|r|) / |r|^2; requires l > 0.
Vec3 vector_potential(const FrameVector& v);

struct FieldSample {
    FrameVector at;
    Vec3 h{};
    Vec3 h_pot{};
    Vec3 h_rot{};
    double phi_s = 0;
    Vec3 j{};
    std::optional<Vec3> A;  //!< only defined for l > 0
};

FieldSample sample_field(const FrameVector& v);

//! CSV with header l,r1,r2,h0,h1,h2,hpot0,hpot1,hpot2,hrot0,hrot1,hrot2,phi,j0,j1,j2.
void write_field_csv(std::ostream& os, const std::vector<FieldSample>& samples);

}  // namespace ternion
