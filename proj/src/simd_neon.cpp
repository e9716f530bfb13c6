// NEON kernels: two trajectories per vector. The RNG words are produced by
// the scalar mix (NEON has no 64-bit lane multiply), the floating-point path
// uses plain vmul/vadd/vdiv, and flush points call scalar libm, keeping the
// output bit-identical to the scalar reference.

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

#include "randfib/rng.hpp"
#include "simd_kernels.hpp"

namespace randfib::simd {

namespace {

inline float64x2_t uniforms2(const std::uint64_t* keys, std::uint64_t step) {
    double u[2];
    u[0] = unit_from_word(counter_word(keys[0], step - 1));
    u[1] = unit_from_word(counter_word(keys[1], step - 1));
    return vld1q_f64(u);
}

void log_x_block_neon(const TrajectoryBlock& blk, double* out_log_x) {
    const float64x2_t av = vdupq_n_f64(blk.a);
    const float64x2_t bv = vdupq_n_f64(blk.b);
    const float64x2_t ev = vdupq_n_f64(blk.eps);
    const float64x2_t one = vdupq_n_f64(1.0);

    std::size_t j = 0;
    for (; j + 2 <= blk.count; j += 2) {
        std::uint64_t keys[2] = {trajectory_key(blk.seed, blk.traj_begin + j),
                                 trajectory_key(blk.seed, blk.traj_begin + j + 1)};
        float64x2_t r = vdupq_n_f64(blk.r0);
        float64x2_t p = one;
        double acc[2] = {blk.log_x1, blk.log_x1};
        double tmp[2];

        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const float64x2_t u = uniforms2(keys, step);
            const uint64x2_t mask = vcgeq_f64(u, ev);
            const float64x2_t br = vmulq_f64(bv, r);
            const float64x2_t masked = vreinterpretq_f64_u64(
                vandq_u64(mask, vreinterpretq_u64_f64(br)));
            const float64x2_t g = vaddq_f64(av, masked);
            p = vmulq_f64(p, g);
            r = vdivq_f64(one, g);
            if (step == 1 || step % kFlushPeriod == 0) {
                vst1q_f64(tmp, p);
                acc[0] += std::log(tmp[0]);
                acc[1] += std::log(tmp[1]);
                p = one;
            }
        }
        vst1q_f64(tmp, p);
        out_log_x[j] = acc[0] + std::log(tmp[0]);
        out_log_x[j + 1] = acc[1] + std::log(tmp[1]);
    }
    if (j < blk.count) {
        TrajectoryBlock rest = blk;
        rest.traj_begin = blk.traj_begin + j;
        rest.count = blk.count - j;
        kScalarKernels.log_x_block(rest, out_log_x + j);
    }
}

void w_block_neon(const TrajectoryBlock& blk, double* out_w, double* out_log_w) {
    const float64x2_t av = vdupq_n_f64(blk.a);
    const float64x2_t bv = vdupq_n_f64(blk.b);
    const float64x2_t ev = vdupq_n_f64(blk.eps);
    const float64x2_t one = vdupq_n_f64(1.0);

    std::size_t j = 0;
    for (; j + 2 <= blk.count; j += 2) {
        std::uint64_t keys[2] = {trajectory_key(blk.seed, blk.traj_begin + j),
                                 trajectory_key(blk.seed, blk.traj_begin + j + 1)};
        float64x2_t r = vdupq_n_f64(blk.r0);
        float64x2_t mw = vdupq_n_f64(blk.r0);
        float64x2_t inv = one;
        double offset[2] = {0.0, 0.0};
        double tmp[2];
        double inv_arr[2] = {1.0, 1.0};

        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const float64x2_t u = uniforms2(keys, step);
            const uint64x2_t mask = vcgeq_f64(u, ev);
            const float64x2_t br = vmulq_f64(bv, r);
            const float64x2_t masked = vreinterpretq_f64_u64(
                vandq_u64(mask, vreinterpretq_u64_f64(br)));
            const float64x2_t g = vaddq_f64(av, masked);
            r = vdivq_f64(one, g);
            mw = vmulq_f64(r, vaddq_f64(mw, inv));
            if (step % kFlushPeriod == 0) {
                vst1q_f64(tmp, mw);
                bool hit = false;
                for (int l = 0; l < 2; ++l) {
                    if (tmp[l] > kWRenormThreshold) {
                        offset[l] += std::log(tmp[l]);
                        tmp[l] = 1.0;
                        inv_arr[l] = std::exp(-offset[l]);
                        hit = true;
                    }
                }
                if (hit) {
                    mw = vld1q_f64(tmp);
                    inv = vld1q_f64(inv_arr);
                }
            }
        }
        vst1q_f64(tmp, mw);
        for (int l = 0; l < 2; ++l) {
            const std::size_t idx = j + std::size_t(l);
            out_log_w[idx] = offset[l] + std::log(tmp[l]);
            out_w[idx] = (offset[l] == 0.0) ? tmp[l] : tmp[l] * std::exp(offset[l]);
        }
    }
    if (j < blk.count) {
        TrajectoryBlock rest = blk;
        rest.traj_begin = blk.traj_begin + j;
        rest.count = blk.count - j;
        kScalarKernels.w_block(rest, out_w + j, out_log_w + j);
    }
}

void row_update_neon(double c, const double* w, const double* f_shift, double* g,
                     std::size_t n) {
    const float64x2_t cv = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(g + i, vaddq_f64(cv, vmulq_f64(vld1q_f64(w + i), vld1q_f64(f_shift + i))));
    }
    for (; i < n; ++i) g[i] = c + w[i] * f_shift[i];
}

double max_abs_residual_neon(const double* g, const double* f, double s,
                             std::size_t n) {
    const float64x2_t sv = vdupq_n_f64(s);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d =
            vsubq_f64(vld1q_f64(g + i), vmulq_f64(sv, vld1q_f64(f + i)));
        acc = vmaxq_f64(acc, vabsq_f64(d));
    }
    double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
    for (; i < n; ++i) {
        const double d = std::fabs(g[i] - s * f[i]);
        if (d > m) m = d;
    }
    return m;
}

void scale_neon(const double* src, double s, double* dst, std::size_t n) {
    const float64x2_t sv = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(src + i), sv));
    }
    for (; i < n; ++i) dst[i] = src[i] * s;
}

} // namespace

const KernelTable kNeonKernels = {
    log_x_block_neon, w_block_neon, row_update_neon, max_abs_residual_neon,
    scale_neon,
};

} // namespace randfib::simd
