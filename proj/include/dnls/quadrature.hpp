#pragma once

#include "dnls/types.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace dnls {

inline constexpr std::size_t quadrature_max_segments = 4000;

namespace detail {

template <class R>
struct Segment {
    double a, b;
    R value;
    double err, l1;
};

// One 15-point Kronrod rule on [a, b]. Boost reports the Kronrod/Gauss difference
// on the reference interval, so it is rescaled by the half-width here.
template <class F>
auto gk_segment(const F& f, double a, double b)
{
    using R = decltype(f(0.0));
    double err = 0.0, l1 = 0.0;
    R v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err, &l1);
    return Segment<R>{a, b, v, err * 0.5 * (b - a), l1};
}

// Global adaptive bisection of the segment with the largest error.
template <class F>
auto adaptive(const F& f, double a, double b, double tol, const char* what)
{
    using R = decltype(f(0.0));
    using S = Segment<R>;
    auto less = [](const S& x, const S& y) { return x.err < y.err; };
    std::vector<S> heap{gk_segment(f, a, b)};
    double err = heap[0].err, l1 = heap[0].l1;
    while (err > tol * l1 && heap.size() < quadrature_max_segments) {
        std::pop_heap(heap.begin(), heap.end(), less);
        S s = heap.back();
        heap.pop_back();
        double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end(), less);
            break;
        }
        S lo = gk_segment(f, s.a, m), hi = gk_segment(f, m, s.b);
        err += lo.err + hi.err - s.err;
        l1 += lo.l1 + hi.l1 - s.l1;
        heap.push_back(lo);
        std::push_heap(heap.begin(), heap.end(), less);
        heap.push_back(hi);
        std::push_heap(heap.begin(), heap.end(), less);
    }
    // recompute the totals to shed the running-sum rounding
    R v{};
    err = 0.0;
    l1 = 0.0;
    std::sort(heap.begin(), heap.end(), [](const S& x, const S& y) { return x.a < y.a; });
    for (const auto& s : heap) {
        v += s.value;
        err += s.err;
        l1 += s.l1;
    }
    if (!std::isfinite(std::abs(v)) || !(err <= std::max(1000.0 * tol * l1, 1e-14))) {
        char buf[160];
        std::snprintf(buf, sizeof buf, ": quadrature did not converge on [%.6g, %.6g] (error estimate %.3e)", a, b,
                      err);
        throw NumericalError(std::string(what) + buf);
    }
    return v;
}

} // namespace detail

// Adaptive 15-point Gauss-Kronrod on [a, b]; infinite ends are mapped onto (0, 1].
template <class F>
auto integrate(F f, double a, double b, double tol = 1e-10, const char* what = "quadrature")
{
    using R = decltype(f(0.0));
    if (a == b)
        return R{};
    if (a > b)
        return R(-integrate(f, b, a, tol, what));
    const bool ia = std::isinf(a), ib = std::isinf(b);
    if (ia && ib)
        return R(integrate(f, a, 0.0, tol, what) + integrate(f, 0.0, b, tol, what));
    if (ib)
        return detail::adaptive([&](double s) { return R(f(a + (1.0 - s) / s) / (s * s)); }, 0.0, 1.0, tol, what);
    if (ia)
        return detail::adaptive([&](double s) { return R(f(b - (1.0 - s) / s) / (s * s)); }, 0.0, 1.0, tol, what);
    return detail::adaptive(f, a, b, tol, what);
}

} // namespace dnls
