#pragma once

#include "randfib/params.hpp"

namespace randfib {

/// Lyapunov exponent gamma(eps) = sum_{n>=1} eps^2 (1-eps)^{n-1} log Z_n,
/// with a rigorous bound on the discarded series tail.
struct GammaResult {
    double eps = 0.0;
    double gamma = 0.0;
    std::size_t truncation = 0; // number of series terms summed
    double tail_bound = 0.0;    // rigorous bound on the dropped remainder
};

/// Evaluates the series with log-scale Z values. The endpoints return the
/// analytic limits directly: gamma(0) = log lambda1, gamma(1) = log a.
/// Truncates at the first N whose interlacing-envelope tail bound
/// M (1-eps)^N (1 + N eps), M = max(log((a^2+b)/a), log(1/a)), drops below tol.
GammaResult gamma(const Params& params, double tol = 1e-12);

/// Critical noise: the unique zero of the strictly decreasing gamma(eps).
struct CriticalEps {
    double eps_star = 0.0; // bracket midpoint
    double lo = 0.0;       // gamma(lo) > 0
    double hi = 0.0;       // gamma(hi) < 0
    double gamma_mid = 0.0;
};

/// Bisection on [0,1] to bracket width < tol; gamma(0) = log lambda1 > 0 and
/// gamma(1) = log a < 0 guarantee the bracket, monotonicity the uniqueness.
CriticalEps critical_epsilon(double a, double b, double tol = 1e-10);

} // namespace randfib
