#pragma once

#include <cmath>

#include "randfib/errors.hpp"

namespace randfib {

inline constexpr const char* kVersion = "0.1.0";

/// Model triple of the noisy recursion X_{n+1} = a X_n + b eta_{n-1} X_{n-1},
/// where eta are i.i.d. Bernoulli with P(eta = 0) = eps.
///
/// Admissible region: 0 < a < 1, b > 1 - a (hence b > 0), 0 <= eps <= 1.
struct Params {
    double a;
    double b;
    double eps;
};

/// Roots of the characteristic equation lambda^2 = a*lambda + b*(1-eps).
/// lambda1 > 0 always; lambda2 < 0 except at eps = 1 where it degenerates to 0.
struct Roots {
    double lambda1;
    double lambda2;
    double eps; // tilt the roots were computed at
};

/// Validates (a, b, eps) against the admissibility inequalities.
/// Throws OutOfRangeError naming the violated inequality.
Params validate_params(double a, double b, double eps);

/// Characteristic roots at noise level `eps` (which may differ from
/// params.eps; pass 0 for the constants of the noiseless recursion).
///
/// The larger root comes from the quadratic formula; the smaller one from
/// the Vieta product lambda2 = -b(1-eps)/lambda1, which avoids cancellation
/// when b(1-eps) is tiny.
Roots lambda_roots(const Params& params, double eps);

/// Roots at the tilt stored in the params themselves.
inline Roots lambda_roots(const Params& params) {
    return lambda_roots(params, params.eps);
}

/// log(lambda1) of the noiseless recursion; the n->infinity growth rate of Z.
inline double log_lambda1(const Params& params) {
    return std::log(lambda_roots(params, 0.0).lambda1);
}

} // namespace randfib
