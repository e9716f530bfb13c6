#pragma once

#include "randfib/params.hpp"
#include "randfib/perron.hpp"

namespace randfib {

enum class TailMethod { ScalarSeries, SpectralRoot };

/// Tail exponent s_eps of the limiting distribution of W, by one of two
/// independent routes: the root of the regeneration series
/// phi(s) = sum_t eps(1-eps)^{t-1} Z_t^{-s} = 1, or the root of the Perron
/// rate Lambda_eps(s) = 0. Defined only for eps in (0, eps*).
struct TailExponent {
    double eps = 0.0;
    double s = 0.0;
    TailMethod method = TailMethod::ScalarSeries;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0; // |equation value - target| at the returned s
};

/// phi(s) = E_P(X_T^{-s}) = sum_{t>=1} eps (1-eps)^{t-1} Z_t^{-s}, evaluated
/// in log scale and truncated under the rigorous envelope Z_t >= c0 lambda1^t,
/// c0 = (lambda1-|lambda2|)/(lambda1+|lambda2|). phi(0) = 1 exactly.
double phi_series(const Params& params, double s, double tol = 1e-15);

/// Root of phi(s) = 1 on s > 0 (phi dips below 1 with slope -gamma/eps and is
/// convex, so the positive root exists and is unique for eps < eps*).
/// Throws NoRootError when gamma(eps) <= 0.
TailExponent tail_exponent_series(const Params& params, double tol = 1e-10);

/// Root of Lambda_eps(s) = 0 on a bracket grown from [tol, 1] by doubling.
/// Throws NoRootError when no sign change appears at or below t_cap.
TailExponent tail_exponent_spectral(const Params& params, double tol = 1e-10,
                                    double t_cap = 512.0);

} // namespace randfib
