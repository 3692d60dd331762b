#pragma once

#include <array>
#include <functional>
#include <limits>

namespace ternion::ode {

using State = std::array<double, 6>;
//! dxdt = f(x, t)
using Rhs = std::function<void(const State& x, State& dxdt, double t)>;
//! Called after every accepted step; return false to stop early.
using Observer = std::function<bool(double t, const State& x)>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 1'000'000;
    int max_consecutive_rejections = 200;
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    double t_final = 0;
    bool stopped_by_observer = false;
};

/*!
 * Adaptive Dormand-Prince 5(4) integration from t0 to t_end, in place.
 *
 * Throws StepFailure if the step size collapses, the controller keeps
 * rejecting, or max_steps is exceeded.
 */
Stats integrate(const Rhs& f, State& x, double t0, double t_end, const Options& opt,
                const Observer& observer = {});

}  // namespace ternion::ode
