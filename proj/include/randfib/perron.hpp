#pragma once

#include <cstddef>
#include <vector>

#include "randfib/kernel.hpp"
#include "randfib/simd.hpp"

namespace randfib {

/// Perron eigenpair of a truncated kernel: H f = alpha f with f > 0 and the
/// normalization f(1) = 1; residual is the sup-norm of H f - alpha f.
struct PerronResult {
    double alpha = 0.0;
    std::vector<double> f;
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// Power iteration with f(1) <- 1 normalization. Intended for the forward
/// kernels (irreducible under AbsorbLimit for eps in (0,1)) and the tilt-0
/// sub-Markov sanity case. Throws NoConvergenceError at the iteration cap.
PerronResult perron(const TruncatedKernel& kernel, double tol = 1e-12,
                    std::size_t max_iter = 1'000'000,
                    simd::Backend backend = simd::Backend::Auto);

struct LambdaResult {
    double value = 0.0;      // log alpha
    std::size_t k_used = 0;  // truncation size that stabilized the value
    double residual = 0.0;   // power-iteration residual at that size
};

/// Lambda_eps(t): limiting exponential rate of E[X_n^{-t}], computed as the
/// log Perron eigenvalue of the truncated tilted forward kernel with K
/// doubling from 64 until successive log alpha values differ by < tol.
/// eps = 0 and eps = 1 short-circuit to -t log lambda1 and -t log a.
LambdaResult lambda_function_full(const Params& params, double t,
                                  double tol = 1e-10,
                                  simd::Backend backend = simd::Backend::Auto);

inline double lambda_function(const Params& params, double t, double tol = 1e-10) {
    return lambda_function_full(params, t, tol).value;
}

} // namespace randfib
