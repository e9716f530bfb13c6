#include "randfib/tail.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "randfib/lyapunov.hpp"
#include "randfib/rootfind.hpp"

namespace randfib {

double phi_series(const Params& params, double s, double tol) {
    const double a = params.a;
    const double b = params.b;
    const double eps = params.eps;
    if (eps <= 0.0 || eps >= 1.0) {
        throw DegenerateError("phi_series: requires eps in (0,1)");
    }
    if (s < 0.0) throw OutOfRangeError("phi_series: requires s >= 0");
    if (s == 0.0) return 1.0; // geometric normalization

    const Roots r0 = lambda_roots(params, 0.0);
    const double l1 = r0.lambda1;
    const double l2abs = -r0.lambda2;
    const double c0 = (l1 - l2abs) / (l1 + l2abs); // Z_t >= c0 * lambda1^t
    const double q = 1.0 - eps;
    const double decay = q * std::pow(l1, -s);     // < 1 for s >= 0, eps > 0

    double log_z_prev = 0.0;
    double log_z = std::log(a);
    double weight = eps; // eps q^{t-1}
    double sum = weight * std::exp(-s * log_z);
    std::size_t t = 1;
    // Remainder after T terms <= eps c0^{-s} q^T lambda1^{-s(T+1)} / (1 - decay).
    const double head = eps * std::pow(c0, -s) / (1.0 - decay);
    double tail = head * q * std::pow(l1, -s * 2.0);

    while (tail >= tol) {
        const double ratio = std::exp(log_z_prev - log_z);
        log_z_prev = log_z;
        log_z += std::log(a + b * ratio);
        ++t;
        weight *= q;
        sum += weight * std::exp(-s * log_z);
        tail *= decay;
        if (t > std::size_t(1) << 31) {
            throw NoConvergenceError("phi_series: truncation bound stalled");
        }
    }
    return sum;
}

namespace {

TailExponent solve_root(const Params& params, TailMethod method, double tol,
                        double hi_cap, const std::function<double(double)>& f) {
    // f < 0 on (0, s_eps), f > 0 beyond; f(0) = 0 is the spurious root.
    double hi = 1.0;
    double fhi = f(hi);
    while (fhi <= 0.0) {
        hi *= 2.0;
        if (hi > hi_cap) {
            std::ostringstream msg;
            msg << "no sign change found up to t=" << hi_cap
                << " (eps >= eps*, or the cap is too small)";
            throw NoRootError(msg.str());
        }
        fhi = f(hi);
    }
    double lo = std::min(std::max(tol, 1e-12), 0.5 * hi);
    double flo = f(lo);
    while (flo >= 0.0) {
        lo *= 0.25;
        if (lo < 1e-250) {
            // s_eps below any representable bracket; report the tiny point.
            return TailExponent{params.eps, lo, method, 0.0, lo, std::fabs(flo)};
        }
        flo = f(lo);
    }
    const double xtol = std::max(tol, 1e-12);
    const RootResult root = brent_root(f, lo, hi, flo, fhi, xtol);
    return TailExponent{params.eps,        root.x, method, root.bracket_lo,
                        root.bracket_hi, std::fabs(root.fx)};
}

} // namespace

TailExponent tail_exponent_series(const Params& params, double tol) {
    const GammaResult g = gamma(params, 1e-14);
    if (!(g.gamma > 0.0)) {
        std::ostringstream msg;
        msg << "tail_exponent_series: gamma(eps)=" << g.gamma
            << " <= 0 (eps >= eps*), no positive root of phi(s)=1";
        throw NoRootError(msg.str());
    }
    const auto f = [&](double s) { return phi_series(params, s, 1e-16) - 1.0; };
    return solve_root(params, TailMethod::ScalarSeries, tol, 4096.0, f);
}

TailExponent tail_exponent_spectral(const Params& params, double tol,
                                    double t_cap) {
    if (params.eps <= 0.0 || params.eps >= 1.0) {
        throw DegenerateError("tail_exponent_spectral: requires eps in (0,1)");
    }
    // gamma <= 0 means Lambda'(0) >= 0: Lambda never dips below zero and the
    // only root is the spurious one at t = 0.
    if (!(gamma(params, 1e-14).gamma > 0.0)) {
        throw NoRootError(
            "tail_exponent_spectral: eps >= eps*, Lambda has no positive root");
    }
    const auto f = [&](double t) { return lambda_function(params, t, 1e-11); };
    return solve_root(params, TailMethod::SpectralRoot, tol, t_cap, f);
}

} // namespace randfib
