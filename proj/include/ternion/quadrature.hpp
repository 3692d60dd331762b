#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ternion/errors.hpp"
#include "ternion/tolerances.hpp"

namespace ternion::quad {

template<std::size_t N>
using Vec = std::array<double, N>;

struct Options {
    double abs_tol = tol::quad_abs;  //!< per component
    long budget = tol::quad_budget;  //!< integrand evaluations
};

template<std::size_t N>
struct Result {
    Vec<N> value{};
    Vec<N> error{};
    long evaluations = 0;
};

//! Shared evaluation counter; throws QuadratureFailure once exhausted.
class Budget {
  public:
    explicit Budget(long limit) : limit_(limit) {}
    void charge(long n) {
        used_ += n;
        if (used_ > limit_) {
            throw QuadratureFailure("quadrature evaluation budget of " + std::to_string(limit_) +
                                    " exhausted");
        }
    }
    long used() const { return used_; }

  private:
    long limit_;
    long used_ = 0;
};

//! Kronrod 15-point abscissae on [0, 1] (symmetric), the Gauss 7-point subset is every odd index.
extern const std::array<double, 8> kronrod_nodes;
extern const std::array<double, 8> kronrod_weights;
extern const std::array<double, 4> gauss_weights;

namespace detail {

template<std::size_t N>
struct Segment {
    double a, b;
    Vec<N> value, error;
    double worst;
};

template<std::size_t N, class F>
Segment<N> gauss_kronrod(F& f, double a, double b, Budget& budget) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Vec<N> k{}, g{};
    auto accumulate = [&](const Vec<N>& v, double wk, double wg) {
        for (std::size_t i = 0; i < N; ++i) {
            if (!std::isfinite(v[i])) throw QuadratureFailure("non-finite integrand value");
            k[i] += wk * v[i];
            g[i] += wg * v[i];
        }
    };
    budget.charge(15);
    accumulate(f(c), kronrod_weights[7], gauss_weights[3]);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kronrod_nodes[j];
        const double wg = (j % 2 == 1) ? gauss_weights[j / 2] : 0.0;
        accumulate(f(c - dx), kronrod_weights[j], wg);
        accumulate(f(c + dx), kronrod_weights[j], wg);
    }
    Segment<N> s{a, b, {}, {}, 0.0};
    for (std::size_t i = 0; i < N; ++i) {
        s.value[i] = h * k[i];
        s.error[i] = std::abs(h * (k[i] - g[i]));
        s.worst = std::max(s.worst, s.error[i]);
    }
    return s;
}

}  // namespace detail

/*!
 * Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector integrand.
 *
 * The segment with the largest error estimate is bisected until the summed
 * estimate of every component is at most abs_tol.
 */
template<std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, double abs_tol, Budget& budget) {
    if (a == b) return {};
    if (!std::isfinite(a) || !std::isfinite(b)) throw QuadratureFailure("infinite integration limit");
    const double sign = b > a ? 1.0 : -1.0;
    if (sign < 0) std::swap(a, b);
    const long start = budget.used();

    auto cmp = [](const detail::Segment<N>& x, const detail::Segment<N>& y) {
        return x.worst < y.worst;
    };
    std::vector<detail::Segment<N>> heap;
    heap.push_back(detail::gauss_kronrod<N>(f, a, b, budget));
    const double min_width = 64 * tol::machine_eps * std::max(std::abs(a), std::abs(b));

    auto totals = [&heap](Vec<N>& value, Vec<N>& error) {
        value.fill(0);
        error.fill(0);
        for (const auto& s : heap) {
            for (std::size_t i = 0; i < N; ++i) {
                value[i] += s.value[i];
                error[i] += s.error[i];
            }
        }
    };

    // Running totals are updated per split and refreshed exactly before accepting.
    Result<N> r;
    totals(r.value, r.error);
    long splits = 0;
    while (true) {
        if (*std::max_element(r.error.begin(), r.error.end()) <= abs_tol) {
            totals(r.value, r.error);
            if (*std::max_element(r.error.begin(), r.error.end()) <= abs_tol) break;
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const detail::Segment<N> worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= min_width) {
            throw QuadratureFailure("quadrature cannot subdivide further near " +
                                    std::to_string(mid));
        }
        const auto left = detail::gauss_kronrod<N>(f, worst.a, mid, budget);
        const auto right = detail::gauss_kronrod<N>(f, mid, worst.b, budget);
        for (std::size_t i = 0; i < N; ++i) {
            r.value[i] += left.value[i] + right.value[i] - worst.value[i];
            r.error[i] += left.error[i] + right.error[i] - worst.error[i];
        }
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        if (++splits % 256 == 0) totals(r.value, r.error);
    }
    for (auto& v : r.value) v *= sign;
    r.evaluations = budget.used() - start;
    return r;
}

template<std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, const Options& opt = {}) {
    Budget budget(opt.budget);
    return integrate<N>(f, a, b, opt.abs_tol, budget);
}

//! Iterated 2D quadrature over [ua, ub] x [va, vb]; f(u, v) -> Vec<N>.
template<std::size_t N, class F>
Result<N> integrate_2d(F&& f, double ua, double ub, double va, double vb,
                       const Options& opt = {}) {
    Budget budget(opt.budget);
    const double inner_tol = 0.25 * opt.abs_tol / std::max(std::abs(ub - ua), 1e-300);
    auto outer = [&](double u) {
        auto inner = [&](double v) { return f(u, v); };
        return integrate<N>(inner, va, vb, inner_tol, budget).value;
    };
    Result<N> r = integrate<N>(outer, ua, ub, 0.5 * opt.abs_tol, budget);
    r.evaluations = budget.used();
    return r;
}

//! Iterated 3D quadrature over a box; f(x, y, z) -> Vec<N>.
template<std::size_t N, class F>
Result<N> integrate_3d(F&& f, const std::array<double, 2>& xr, const std::array<double, 2>& yr,
                       const std::array<double, 2>& zr, const Options& opt = {}) {
    Budget budget(opt.budget);
    const double lx = std::max(std::abs(xr[1] - xr[0]), 1e-300);
    const double ly = std::max(std::abs(yr[1] - yr[0]), 1e-300);
    const double mid_tol = 0.25 * opt.abs_tol / lx;
    const double inner_tol = 0.25 * mid_tol / ly;
    auto outer = [&](double x) {
        auto middle = [&](double y) {
            auto inner = [&](double z) { return f(x, y, z); };
            return integrate<N>(inner, zr[0], zr[1], inner_tol, budget).value;
        };
        return integrate<N>(middle, yr[0], yr[1], mid_tol, budget).value;
    };
    Result<N> r = integrate<N>(outer, xr[0], xr[1], 0.5 * opt.abs_tol, budget);
    r.evaluations = budget.used();
    return r;
}

//! Scalar convenience wrapper.
double integrate_scalar(const std::function<double(double)>& f, double a, double b,
                        const Options& opt = {});

}  // namespace ternion::quad
