#include "ternion/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "ternion/errors.hpp"

namespace ternion::ode {

Stats integrate(const Rhs& f, State& x, double t0, double t_end, const Options& opt,
                const Observer& observer) {
    namespace odeint = boost::numeric::odeint;
    if (!(t_end > t0)) throw StepFailure("integration end must exceed the start time");
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    auto system = [&f](const State& s, State& d, double t) { f(s, d, t); };

    Stats stats;
    double t = t0;
    double dt = std::min(opt.initial_step, opt.max_step);
    int rejections = 0;
    if (observer && !observer(t, x)) {
        stats.stopped_by_observer = true;
        stats.t_final = t;
        return stats;
    }
    while (t < t_end) {
        if (stats.accepted >= opt.max_steps) {
            throw StepFailure("step budget of " + std::to_string(opt.max_steps) + " exhausted");
        }
        const double remaining = t_end - t;
        double h = std::min({dt, opt.max_step, remaining});
        const double h_used = h;
        const double t_before = t;
        const auto result = stepper.try_step(system, x, t, h);
        if (result == odeint::success) {
            if (h_used == remaining) t = t_end;  // absorb rounding of the final step
            ++stats.accepted;
            rejections = 0;
            dt = h;
            if (observer && !observer(t, x)) {
                stats.stopped_by_observer = true;
                break;
            }
        } else {
            ++stats.rejected;
            dt = h;
            if (++rejections > opt.max_consecutive_rejections) {
                throw StepFailure("step controller keeps rejecting near t = " +
                                  std::to_string(t_before));
            }
            if (dt < 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw StepFailure("step size underflow near t = " + std::to_string(t_before));
            }
        }
    }
    stats.t_final = t;
    return stats;
}

}  // namespace ternion::ode
