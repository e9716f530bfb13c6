#include "randfib/perron.hpp"

#include <cmath>
#include <sstream>

namespace randfib {

PerronResult perron(const TruncatedKernel& kernel, double tol,
                    std::size_t max_iter, simd::Backend backend) {
    const std::size_t K = kernel.K;
    const simd::Backend be = simd::resolve_backend(backend);

    std::vector<double> f(K, 1.0);
    std::vector<double> g(K, 0.0);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        const double reset = kernel.reset_weight * f[0];
        simd::row_update(be, reset, kernel.up_weight.data(), f.data() + 1,
                         g.data(), K - 1);
        g[K - 1] = reset + kernel.tail_weight * f[K - 1];

        const double alpha = g[0]; // f[0] == 1
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw NoConvergenceError(
                "perron: iteration left the positive cone (alpha <= 0 or overflow); "
                "K too small or tilt too large for the floating range");
        }
        const double residual =
            simd::max_abs_residual(be, g.data(), f.data(), alpha, K);
        if (residual < tol) {
            return PerronResult{alpha, std::move(f), residual, iter};
        }
        simd::scale(be, g.data(), 1.0 / alpha, f.data(), K);
    }
    std::ostringstream msg;
    msg << "perron: no convergence after " << max_iter << " iterations (K=" << K
        << ", tilt=" << kernel.spec.tilt << ")";
    throw NoConvergenceError(msg.str());
}

LambdaResult lambda_function_full(const Params& params, double t, double tol,
                                  simd::Backend backend) {
    if (t < 0.0) throw OutOfRangeError("lambda_function: requires t >= 0");
    if (params.eps <= 0.0) {
        return LambdaResult{-t * log_lambda1(params), 0, 0.0};
    }
    if (params.eps >= 1.0) {
        // The chain sticks at state 1: Lambda(t) = t log(1/a).
        return LambdaResult{-t * std::log(params.a), 0, 0.0};
    }

    const double inner_tol = std::min(tol * 1e-2, 1e-12);
    constexpr std::size_t kMaxK = std::size_t(1) << 20;

    KernelSpec spec{params, KernelKind::Forward, t};
    double prev = 0.0;
    bool have_prev = false;
    for (std::size_t K = 64; K <= kMaxK; K *= 2) {
        const TruncatedKernel kernel = truncate_kernel(spec, K, TailPolicy::AbsorbLimit);
        const PerronResult pr = perron(kernel, inner_tol, 1'000'000, backend);
        const double value = std::log(pr.alpha);
        if (have_prev && std::fabs(value - prev) < tol) {
            return LambdaResult{value, K, pr.residual};
        }
        prev = value;
        have_prev = true;
    }
    std::ostringstream msg;
    msg << "lambda_function: truncation did not stabilize below tol=" << tol
        << " up to K=" << kMaxK << " (eps=" << params.eps << ", t=" << t << ")";
    throw NoConvergenceError(msg.str());
}

} // namespace randfib
