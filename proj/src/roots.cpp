#include "ternion/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ternion/errors.hpp"

namespace ternion::roots {

Root solve_bracketed(const Function& f, double a, double b, double residual_tol) {
    if (a > b) std::swap(a, b);
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        throw RootFindingFailure("non-finite function value at the bracket ends");
    }
    if (fa == 0) return {a, 0, 0};
    if (fb == 0) return {b, 0, 0};
    if ((fa > 0) == (fb > 0)) throw RootFindingFailure("bracket does not change sign");

    std::uintmax_t iterations = 200;
    const auto tol = [](double x, double y) {
        return std::abs(x - y) <= 4 * std::numeric_limits<double>::epsilon() *
                                          std::max(std::abs(x), std::abs(y));
    };
    std::pair<double, double> bracket;
    try {
        bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
    } catch (const std::exception& e) {
        throw RootFindingFailure(std::string("bracketed solver failed: ") + e.what());
    }
    const double f0 = f(bracket.first);
    const double f1 = f(bracket.second);
    Root r = std::abs(f0) <= std::abs(f1) ? Root{bracket.first, f0, 0}
                                          : Root{bracket.second, f1, 0};
    r.iterations = static_cast<int>(iterations);
    if (!(std::abs(r.residual) <= residual_tol)) {
        throw RootFindingFailure("root residual " + std::to_string(std::abs(r.residual)) +
                                 " exceeds tolerance");
    }
    return r;
}

std::vector<double> geometric_toward(double a, double b, double decades, int n) {
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        grid.push_back(a + (b - a) * (1.0 - std::pow(10.0, -decades * i / n)));
    }
    return grid;
}

std::optional<std::pair<double, double>> scan_sign_change(const Function& f,
                                                          const std::vector<double>& grid) {
    bool have_prev = false;
    double xp = 0, fp = 0;
    for (double x : grid) {
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            have_prev = false;
            continue;
        }
        if (fx == 0) return std::make_pair(x, x);
        if (have_prev && ((fp > 0) != (fx > 0))) return std::make_pair(xp, x);
        xp = x;
        fp = fx;
        have_prev = true;
    }
    return std::nullopt;
}

}  // namespace ternion::roots
