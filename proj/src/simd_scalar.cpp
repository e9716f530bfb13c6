// Reference kernels. Every SIMD variant must reproduce these bit-for-bit;
// the arithmetic here is deliberately written as plain IEEE mul/add/div per
// element (no FMA, fixed flush schedule) so a vector lane can match it.

#include <cmath>

#include "randfib/rng.hpp"
#include "simd_kernels.hpp"

namespace randfib::simd {

namespace {

void log_x_block_scalar(const TrajectoryBlock& blk, double* out_log_x) {
    for (std::size_t j = 0; j < blk.count; ++j) {
        const std::uint64_t key = trajectory_key(blk.seed, blk.traj_begin + j);
        double r = blk.r0;
        double p = 1.0;
        double acc = blk.log_x1;
        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const double u = unit_from_word(counter_word(key, step - 1));
            const bool eta = eta_draw(u, blk.eps);
            const double g = blk.a + (eta ? blk.b * r : 0.0);
            p *= g;
            r = 1.0 / g;
            if (step == 1 || step % kFlushPeriod == 0) {
                acc += std::log(p);
                p = 1.0;
            }
        }
        out_log_x[j] = acc + std::log(p);
    }
}

void w_block_scalar(const TrajectoryBlock& blk, double* out_w, double* out_log_w) {
    for (std::size_t j = 0; j < blk.count; ++j) {
        const std::uint64_t key = trajectory_key(blk.seed, blk.traj_begin + j);
        double r = blk.r0;
        double mw = blk.r0; // W_1 = X_0 / X_1
        double offset = 0.0;
        double inv = 1.0; // exp(-offset)
        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const double u = unit_from_word(counter_word(key, step - 1));
            const bool eta = eta_draw(u, blk.eps);
            const double g = blk.a + (eta ? blk.b * r : 0.0);
            r = 1.0 / g;
            mw = r * (mw + inv);
            if (step % kFlushPeriod == 0 && mw > kWRenormThreshold) {
                offset += std::log(mw);
                mw = 1.0;
                inv = std::exp(-offset);
            }
        }
        out_log_w[j] = offset + std::log(mw);
        out_w[j] = (offset == 0.0) ? mw : mw * std::exp(offset);
    }
}

void row_update_scalar(double c, const double* w, const double* f_shift,
                       double* g, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) g[i] = c + w[i] * f_shift[i];
}

double max_abs_residual_scalar(const double* g, const double* f, double s,
                               std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::fabs(g[i] - s * f[i]);
        if (d > m) m = d;
    }
    return m;
}

void scale_scalar(const double* src, double s, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] * s;
}

} // namespace

const KernelTable kScalarKernels = {
    log_x_block_scalar, w_block_scalar, row_update_scalar,
    max_abs_residual_scalar, scale_scalar,
};

} // namespace randfib::simd
