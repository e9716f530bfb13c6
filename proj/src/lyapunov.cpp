#include "randfib/lyapunov.hpp"

#include <cmath>
#include <sstream>

namespace randfib {

GammaResult gamma(const Params& params, double tol) {
    const double a = params.a;
    const double b = params.b;
    const double eps = params.eps;

    if (eps <= 0.0) {
        return GammaResult{eps, log_lambda1(params), 0, 0.0};
    }
    if (eps >= 1.0) {
        return GammaResult{eps, std::log(a), 1, 0.0};
    }

    const double q = 1.0 - eps;
    // |log Z_n| <= n * M by the interlacing envelopes on Z_{n}/Z_{n-1}.
    const double M = std::max(std::log((a * a + b) / a), -std::log(a));

    double log_z_prev = 0.0;          // log Z_0
    double log_z = std::log(a);       // log Z_1
    double weight = eps * eps;        // eps^2 q^{n-1}
    double q_pow = q;                 // q^n
    double sum = weight * log_z;
    std::size_t n = 1;
    double bound = M * q_pow * (1.0 + double(n) * eps);

    while (bound >= tol) {
        const double ratio = std::exp(log_z_prev - log_z);
        log_z_prev = log_z;
        log_z += std::log(a + b * ratio);
        ++n;
        weight *= q;
        sum += weight * log_z;
        q_pow *= q;
        bound = M * q_pow * (1.0 + double(n) * eps);
        if (n > std::size_t(1) << 31) {
            throw NoConvergenceError("gamma: series truncation bound stalled");
        }
    }
    return GammaResult{eps, sum, n, bound};
}

CriticalEps critical_epsilon(double a, double b, double tol) {
    const Params base = validate_params(a, b, 0.0);
    const double series_tol = std::min(1e-14, tol * 1e-4);

    double lo = 0.0, hi = 1.0;
    // gamma(0) = log lambda1 > 0 (a+b>1) and gamma(1) = log a < 0.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const Params p{base.a, base.b, mid};
        if (gamma(p, series_tol).gamma > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gamma(Params{base.a, base.b, mid}, series_tol).gamma;
    return CriticalEps{mid, lo, hi, g_mid};
}

} // namespace randfib
