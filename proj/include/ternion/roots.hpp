#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ternion::roots {

using Function = std::function<double(double)>;

struct Root {
    double x = 0;
    double residual = 0;
    int iterations = 0;
};

//! Bracketed root of f on [a, b] (sign change required), refined to full precision.
//! Throws RootFindingFailure if the bracket is invalid or the residual exceeds residual_tol.
Root solve_bracketed(const Function& f, double a, double b, double residual_tol);

//! Points a + (b - a) * (1 - 10^{-decades * i / n}) for i = 0..n, accumulating toward b.
std::vector<double> geometric_toward(double a, double b, double decades, int n);

//! First adjacent pair of grid points where f changes sign, skipping non-finite values.
std::optional<std::pair<double, double>> scan_sign_change(const Function& f,
                                                          const std::vector<double>& grid);

}  // namespace ternion::roots
