#pragma once

#include <cmath>
#include <limits>

#include "randfib/errors.hpp"

namespace randfib {

struct RootResult {
    double x;
    double fx;
    double bracket_lo;
    double bracket_hi;
    std::size_t evaluations;
};

/// Classic zeroin: inverse-quadratic / secant steps with a guaranteed
/// bisection fallback. Requires f(lo) and f(hi) of opposite sign (zero
/// endpoints count). Terminates when the bracket shrinks below xtol.
template <class F>
RootResult brent_root(F&& f, double lo, double hi, double flo, double fhi,
                      double xtol, std::size_t max_iter = 200) {
    if (flo == 0.0) return {lo, 0.0, lo, lo, 0};
    if (fhi == 0.0) return {hi, 0.0, hi, hi, 0};
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NoRootError("brent_root: endpoints do not bracket a sign change");
    }

    double a = lo, b = hi, fa = flo, fb = fhi;
    double c = a, fc = fa;
    double d = b - a, e = d;
    std::size_t evals = 0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) {
            return {b, fb, std::min(b, c), std::max(b, c), evals};
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        ++evals;
    }
    return {b, fb, std::min(b, c), std::max(b, c), evals};
}

} // namespace randfib
