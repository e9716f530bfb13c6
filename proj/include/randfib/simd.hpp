#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "randfib/errors.hpp"

namespace randfib::simd {

/// Kernel implementation lanes. Auto resolves to the widest variant the
/// running CPU supports. Every variant is bit-for-bit equivalent to Scalar.
enum class Backend { Auto, Scalar, Avx2, Neon };

const char* backend_name(Backend be);
Backend parse_backend(const std::string& name);
bool backend_available(Backend be);

/// Resolves Auto to the active variant; throws DegenerateError when an
/// explicitly requested variant is not available on this CPU/build.
Backend resolve_backend(Backend requested);

/// One contiguous block of Monte Carlo trajectories sharing (seed, params).
/// Trajectory j of the block has global index traj_begin + j; all draws come
/// from the counter RNG, so any partition into blocks gives the same output.
struct TrajectoryBlock {
    double a = 0.0;
    double b = 0.0;
    double eps = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t traj_begin = 0;
    std::size_t count = 0;
    std::size_t steps = 0;   // recursion steps; trajectory length n = steps + 1
    double r0 = 0.0;         // X_0 / X_1
    double log_x1 = 0.0;     // log X_1
};

/// out_log_x[j] = log X_n of trajectory j (rescaled product accumulation,
/// flushed through scalar std::log on a fixed schedule).
void log_x_block(Backend be, const TrajectoryBlock& blk, double* out_log_x);

/// out_w[j] = W_n (may be +inf when the true value exceeds double range),
/// out_log_w[j] = exact log W_n. W is carried as mantissa * exp(offset) with
/// per-lane renormalization on a fixed step schedule.
void w_block(Backend be, const TrajectoryBlock& blk, double* out_w,
             double* out_log_w);

/// g[i] = c + w[i] * f_shift[i] for i in [0, n): the two-nonzero row update
/// of the truncated ratio-chain kernels.
void row_update(Backend be, double c, const double* w, const double* f_shift,
                double* g, std::size_t n);

/// max_i |g[i] - s * f[i]|: power-iteration residual.
double max_abs_residual(Backend be, const double* g, const double* f, double s,
                        std::size_t n);

/// dst[i] = src[i] * s.
void scale(Backend be, const double* src, double s, double* dst, std::size_t n);

} // namespace randfib::simd
