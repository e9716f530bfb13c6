#pragma once

#include <cmath>

namespace randfib {

/// Compensated double-double value (~31 significant digits), used where an
/// identity residual sits below plain double rounding noise (e.g. the Cassini
/// residual against b^n at n ~ 60). Standard error-free transforms: TwoSum,
/// FMA-based TwoProd, Newton division/sqrt.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    constexpr DD(double v) : hi(v), lo(0.0) {} // NOLINT: implicit by design
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double v = s - a;
    const double e = (a - (s - v)) + (b - v);
    return DD{s, e};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return DD{s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return DD{p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return DD{-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(DD{q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(DD{q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    return dd_add(quick_two_sum(q1, q2), DD{q3, 0.0});
}

inline DD dd_sqrt(DD a) {
    if (a.hi == 0.0) return DD{0.0, 0.0};
    const double x = 1.0 / std::sqrt(a.hi);
    const double ax = a.hi * x;
    // One Newton step: sqrt(a) ~ ax + (a - ax^2) * x / 2
    const DD err = dd_sub(a, dd_mul(DD{ax, 0.0}, DD{ax, 0.0}));
    return dd_add(DD{ax, 0.0}, DD{err.hi * (x * 0.5), 0.0});
}

inline double dd_to_double(DD a) { return a.hi + a.lo; }

inline bool dd_less(DD a, DD b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

} // namespace randfib
