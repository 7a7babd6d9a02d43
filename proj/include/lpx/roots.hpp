#pragma once

// Bracketed bisection followed by a few guarded Newton steps.

#include <cmath>
#include <string>

#include "lpx/error.hpp"

namespace lpx {

struct Bracket {
    double lo;
    double hi;
};

struct RootOptions {
    double width = 1e-13;  // bisection stops once hi - lo is this narrow
    int max_bisections = 400;
    int newton_steps = 4;
};

/// Bisection on `sign_fn`, which must take opposite signs (or vanish) at the
/// two ends of `br`. Returns the final bracket.
template <class F>
Bracket bisect(F&& sign_fn, Bracket br, const RootOptions& opts = {}) {
    double flo = sign_fn(br.lo);
    const double fhi = sign_fn(br.hi);
    if (flo == 0.0) return {br.lo, br.lo};
    if (fhi == 0.0) return {br.hi, br.hi};
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericalBreakdown("bisect: no sign change on [" + std::to_string(br.lo) + ", " +
                                 std::to_string(br.hi) + "]");
    for (int it = 0; it < opts.max_bisections && br.hi - br.lo > opts.width; ++it) {
        const double mid = 0.5 * (br.lo + br.hi);
        if (mid <= br.lo || mid >= br.hi) break;
        const double fm = sign_fn(mid);
        if (fm == 0.0) return {mid, mid};
        if ((fm > 0.0) == (flo > 0.0)) {
            br.lo = mid;
            flo = fm;
        } else {
            br.hi = mid;
        }
    }
    return br;
}

/// Newton on `f` with derivative `df`, started at the bracket midpoint. A
/// step is taken only if it stays near the bracket and does not increase |f|.
template <class F, class DF>
double newton_polish(F&& f, DF&& df, Bracket br, const RootOptions& opts = {}) {
    double x = 0.5 * (br.lo + br.hi);
    double fx = f(x);
    const double slack = 4.0 * (br.hi - br.lo) + 1e-15 * (1.0 + std::abs(x));
    for (int i = 0; i < opts.newton_steps && fx != 0.0; ++i) {
        const double d = df(x);
        if (d == 0.0 || !std::isfinite(d)) break;
        const double next = x - fx / d;
        if (next < br.lo - slack || next > br.hi + slack) break;
        const double fn = f(next);
        if (!(std::abs(fn) <= std::abs(fx))) break;
        if (next == x) break;
        x = next;
        fx = fn;
    }
    return x;
}

/// Moves `br.lo` (or `br.hi`, when `downward` is false) outward, doubling
/// its distance from the other end, until `ok(end)` holds.
template <class Ok>
Bracket widen(Bracket br, bool downward, Ok&& ok, int max_doublings = 60) {
    for (int i = 0; i < max_doublings; ++i) {
        if (ok(downward ? br.lo : br.hi)) return br;
        const double w = br.hi - br.lo;
        if (downward)
            br.lo = br.hi - 2.0 * w;
        else
            br.hi = br.lo + 2.0 * w;
    }
    throw NumericalBreakdown("widen: bracket could not be established");
}

}  // namespace lpx
