#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "randfib/params.hpp"

namespace randfib {

/// Exact moment sequences of the noisy recursion, n = 0..N.
///
/// mean_x[n]    = E X_n            (two-term linear recursion)
/// second_x[n]  = Y_n = E X_n^2
/// cassini_h[n] = E h_n, h_n = X_{n-1} X_{n+1} - X_n^2,   n >= 1
/// eta_h[n]     = E(eta_{n-1} h_n),                        n >= 1
///
/// The Y / cassini pair is driven by the exact coupled recursion (q = 1-eps)
///     Y_{n+1} = (a^2 + 2bq) Y_n + b^2 q (1 - 2q) Y_{n-1} + 2bq * E h_n
///     E h_{n+1} = -b * E(eta_{n-1} h_n)
///     E(eta_n h_{n+1}) = bq * (eps * Y_n - E(eta_{n-1} h_n))
/// with Y_0 = 1, Y_1 = a^2, E h_1 = E(eta_0 h_1) = b q.  It agrees with
/// brute-force pattern enumeration to machine precision for all parameters.
struct MomentTable {
    Params params;
    std::vector<double> mean_x;
    std::vector<double> second_x;
    std::vector<double> cassini_h; // index 0 unused (0.0)
    std::vector<double> eta_h;     // index 0 unused (0.0)
    std::optional<std::size_t> overflow_index;
};

MomentTable moment_table(const Params& params, std::size_t n_max);

/// E X_n by the closed form (lambda1^{n+1} - lambda2^{n+1}) / (lambda1 - lambda2)
/// with the eps-tilted roots. Throws OverflowError once past the double range;
/// use log_mean_x beyond it.
double mean_x(const Params& params, std::size_t n);

/// log E X_n, valid for all n (evaluated in log scale).
double log_mean_x(const Params& params, std::size_t n);

/// Y_n = E X_n^2 by the exact recursion. Throws OverflowError when the value
/// leaves the double range; use log_second_moment_x then.
double second_moment_x(const Params& params, std::size_t n);

/// log E X_n^2 via the same recursion with periodic rescaling.
double log_second_moment_x(const Params& params, std::size_t n);

/// E h_1 = b (1 - eps); the n = 1 Cassini expectation is special.
double cassini_h1(const Params& params);

/// E h_{n+1} = E(X_n X_{n+2} - X_{n+1}^2) for n >= 1.
double cassini_expectation(const Params& params, std::size_t n);

/// U_{n,k} = E(X_n X_{n+k}), via the exact recursion in k,
///     U_{n,k+1} = a U_{n,k} + b(1-eps) U_{n,k-1},
/// anchored at U_{n,0} = Y_n and U_{n,1} = (E h_{n+1} + Y_{n+1} - b(1-eps) Y_n)/a.
double cross_moment(const Params& params, std::size_t n, std::size_t k);

/// Exponential growth rate of the second moment: log of the dominant
/// eigenvalue of the exact pair-moment transfer matrix
///     [ a^2  2abq  b^2 q ]
///     [ a     bq   0    ]      acting on (E X_n^2, E X_n X_{n-1}, E X_{n-1}^2),
///     [ 1     0    0    ]
/// which reduces to 2 log lambda1 at eps = 0.
double second_moment_growth_rate(const Params& params);

/// Exact moments from full enumeration of noise patterns, used as the
/// independent oracle for everything above.
struct MomentOracle {
    double mean;                 // E X_n
    double second;               // E X_n^2
    double cassini;              // E h_n = E(X_{n-1} X_{n+1} - X_n^2); 0 for n = 0
    std::vector<double> cross;   // E X_n X_{n+k}, k = 0..k_max
};

/// Enumerates all 2^{H-1} noise patterns with H = max(n+1, n+k_max) and
/// evaluates the moments exactly (compensated summation). Throws
/// TooLargeError when n > 24 or the horizon exceeds 26.
MomentOracle brute_force_moments(const Params& params, std::size_t n,
                                 std::size_t k_max = 4);

} // namespace randfib
