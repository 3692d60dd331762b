#pragma once

#include <array>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ternion/errors.hpp"
#include "ternion/field.hpp"
#include "ternion/ode.hpp"

namespace ternion {

//---------------------------------------------------------------------------//
// State and conserved quantities
//---------------------------------------------------------------------------//

//! Position (l, r1, r2) and velocity (v0, v1, v2) in frame coordinates.
struct MonopoleState {
    double t = 0;
    Vec3 r{};
    Vec3 v{};

    ode::State packed() const { return {r[0], r[1], r[2], v[0], v[1], v[2]}; }
    static MonopoleState unpack(double t, const ode::State& x) {
        return {t, {x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
    }
};

//! M = R x v: M0 = r1 v2 - r2 v1, M1 = r2 v0 - l v2, M2 = l v1 - r1 v0.
struct AngularMomentum {
    double M0 = 0;
    double M1 = 0;
    double M2 = 0;

    static AngularMomentum of(const MonopoleState& s);
    Vec3 as_array() const { return {M0, M1, M2}; }
    double norm() const;
};

double kinetic_energy(const MonopoleState& s);

//! Acceleration -g h(r).
Vec3 newton_rhs(const MonopoleState& s, double g);

//---------------------------------------------------------------------------//
// Direct integration
//---------------------------------------------------------------------------//

struct IntegrateOptions {
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 1e-3;
    long max_steps = 1'000'000;
};

struct Trajectory {
    std::vector<MonopoleState> samples;
    std::vector<AngularMomentum> momentum;
    std::vector<double> energy;
    long accepted_steps = 0;
    long rejected_steps = 0;

    //! max over samples and components of |M(t) - M(0)| / |M(0)|.
    double relative_momentum_drift() const;
};

//! Raised when the singular-approach guard fires; carries the samples so far.
class SingularApproach : public Error {
  public:
    SingularApproach(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

  private:
    Trajectory partial_;
};

/*!
 * Integrate the Newton equation with embedded Dormand-Prince 5(4).
 *
 * Every accepted step is recorded. The singular-approach guard stops the run
 * when |l| |r|^2 < 1e-6 scale^3, where scale is the smaller of the initial
 * distance |R(0)| and the impact distance |M| / |v(0)|.
 */
Trajectory integrate(const MonopoleState& s0, double g, double t_end, double tol,
                     const IntegrateOptions& options = {});

//---------------------------------------------------------------------------//
// Planar motion (r2 = 0), slope z = l / r1
//---------------------------------------------------------------------------//

//! z ln|z / (e z0)|, whose level sets fix the asymptotic slopes.
double asymptote_function(double z, double z0);

/*!
 * Second solution z~1 of z ln|z/(e z0)| = z1 ln|z1/(e z0)|.
 *
 * Throws NoSecondSolution when |z1| >= e |z0| (or z1 = z0).
 */
double asymptote_solve(double z0, double z1);

enum class PlanarBranch {
    turnaround,      //!< escapes along the second asymptote z~1
    center_reaching  //!< slope decreases to 0, reaching the l = 0 plane
};
std::string to_string(PlanarBranch b);

class PlanarSolution {
  public:
    //! Requires M2 != 0, z0 > 0, z1 > 0, z1 != z0.
    PlanarSolution(double g, double M2, double z0, double z1);

    PlanarBranch branch() const { return branch_; }
    std::optional<double> z_tilde1() const { return z_tilde1_; }
    //! Open slope interval traversed by the trajectory.
    std::pair<double, double> z_range() const { return range_; }
    bool in_range(double z) const { return z > range_.first && z < range_.second; }

    double v1(double z) const;
    double r1(double z) const;
    //! Time measured from the turning slope z0; DomainError outside the open range.
    double t(double z, double tol = 1e-10) const;
    MonopoleState state_at(double z) const;

    double g() const { return g_; }
    double M2() const { return M2_; }
    double z0() const { return z0_; }
    double z1() const { return z1_; }

  private:
    double denominator(double z) const;
    void require_in_range(double z) const;

    double g_, M2_, z0_, z1_;
    PlanarBranch branch_;
    std::optional<double> z_tilde1_;
    std::pair<double, double> range_;
};

//---------------------------------------------------------------------------//
// General motion, slope y = r2 / r1
//---------------------------------------------------------------------------//

class GeneralSolution {
  public:
    //! Requires M0 != 0 and no pole of 1/(M1 + M2 y) between y0 and y1.
    GeneralSolution(double g, double M0, double M1, double M2, double y0, double y1);

    //! Root of M1 + M2 y (the l = 0 plane), if M2 != 0.
    std::optional<double> pole() const;
    //! Integral of 1/((1+y^2)(M1+M2 y)) from y0, via complex logarithms.
    double K(double y) const;
    //! Antiderivative of K (arbitrary constant).
    double A(double y) const;

    double v1(double y) const { return g_ * K(y); }
    double r1(double y) const;
    //! Time from the slope y0; quadrature of (M0/g^2) (A(y) - A(y1))^{-2}.
    double t(double y, double tol = 1e-10) const;
    MonopoleState state_at(double y) const;

    double g() const { return g_; }
    double M0() const { return M0_; }
    double M1() const { return M1_; }
    double M2() const { return M2_; }
    double y0() const { return y0_; }
    double y1() const { return y1_; }

  private:
    void require_pole_free(double a, double b) const;
    std::complex<double> K_complex(double y) const;
    std::complex<double> A_complex(double y) const;

    double g_, M0_, M1_, M2_, y0_, y1_;
};

//---------------------------------------------------------------------------//
// Scattering
//---------------------------------------------------------------------------//

struct ScatteringSetup {
    double g = 1;
    Vec3 v_in{};  //!< incoming asymptotic velocity (v0, v1, v2)
    double M0 = 0, M1 = 0, M2 = 0;
    double y1 = 0;  //!< incoming slope v2 / v1
    double y0 = 0;  //!< slope where v1 vanishes

    /*!
     * Complete a setup from the incoming velocity and (M1, M2).
     *
     * M0 follows from M . v = 0 and y0 from g K(y1) = v1. Requires v0, v1
     * nonzero and the slope to move toward the pole -M1/M2.
     */
    static ScatteringSetup from_incoming(double g, const Vec3& v_in, double M1, double M2);

    double constraint_residual() const;
    GeneralSolution solution() const;
};

struct FinalState {
    double y_tilde1 = 0;
    Vec3 v_out{};
    double E_in = 0;
    double E_out = 0;
};

//! Outgoing slope and velocity; throws NoSecondSolution for center-reaching motion.
FinalState final_state(const ScatteringSetup& s);

//! rho = v x M / |v|^2 for the incoming velocity.
Vec3 impact_parameter(const Vec3& v, const AngularMomentum& M);

struct ScatteringResult {
    double y_tilde1 = 0;
    double E = 0;       //!< outgoing kinetic energy
    double J = 0;       //!< det d(y~1, E) / d(M1, M2)
    double dsigma = 0;  //!< 1 / (J |v0| |v|), per unit d y~1 dE
    Vec3 v_out{};
    Vec3 impact{};
};

/*!
 * Final slope, energy, and cross-section element for one setup.
 *
 * J uses central differences with step 1e-5 (1 + |M_i|) at fixed incoming
 * velocity. Throws JacobianSingular if |J| < 1e-12.
 */
ScatteringResult scattering_map(const ScatteringSetup& s);

}  // namespace ternion
