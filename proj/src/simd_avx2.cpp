// AVX2 kernels: four trajectories per vector. The per-lane arithmetic is the
// same IEEE mul/add/div sequence as the scalar reference, the RNG mix runs on
// emulated 64-bit lanes, and all transcendental calls (log/exp at flush
// points) go through scalar libm per lane, so outputs are bit-identical to
// the scalar kernels.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "randfib/rng.hpp"
#include "simd_kernels.hpp"

namespace randfib::simd {

namespace {

inline __m256i mul64(__m256i x, __m256i y) {
    // 64x64 -> low 64 via 32-bit partial products (no _mm256_mullo_epi64 in AVX2).
    const __m256i xh = _mm256_srli_epi64(x, 32);
    const __m256i yh = _mm256_srli_epi64(y, 32);
    const __m256i ll = _mm256_mul_epu32(x, y);
    const __m256i lh = _mm256_mul_epu32(x, yh);
    const __m256i hl = _mm256_mul_epu32(xh, y);
    const __m256i cross = _mm256_add_epi64(lh, hl);
    return _mm256_add_epi64(ll, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64x4(__m256i z) {
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mul64(z, _mm256_set1_epi64x(std::int64_t(0xBF58476D1CE4E5B9ULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mul64(z, _mm256_set1_epi64x(std::int64_t(0x94D049BB133111EBULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    return z;
}

// Exact u64 -> double for values below 2^52 (the top-52-bit uniforms).
inline __m256d u52_to_pd(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL); // 2^52
    const __m256d d = _mm256_castsi256_pd(_mm256_or_si256(v, magic));
    return _mm256_sub_pd(d, _mm256_set1_pd(0x1.0p52));
}

inline __m256d uniforms(__m256i keys, std::uint64_t step) {
    const __m256i ctr =
        _mm256_add_epi64(keys, _mm256_set1_epi64x(std::int64_t(step * kGoldenGamma)));
    const __m256i word = mix64x4(ctr);
    const __m256d top = u52_to_pd(_mm256_srli_epi64(word, 12));
    return _mm256_mul_pd(top, _mm256_set1_pd(0x1.0p-52));
}

inline __m256i load_keys(const TrajectoryBlock& blk, std::size_t j) {
    alignas(32) std::int64_t keys[4];
    for (int l = 0; l < 4; ++l) {
        keys[l] = std::int64_t(trajectory_key(blk.seed, blk.traj_begin + j + std::size_t(l)));
    }
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(keys));
}

void log_x_block_avx2(const TrajectoryBlock& blk, double* out_log_x) {
    const __m256d av = _mm256_set1_pd(blk.a);
    const __m256d bv = _mm256_set1_pd(blk.b);
    const __m256d ev = _mm256_set1_pd(blk.eps);
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t j = 0;
    for (; j + 4 <= blk.count; j += 4) {
        const __m256i keys = load_keys(blk, j);
        __m256d r = _mm256_set1_pd(blk.r0);
        __m256d p = one;
        double acc[4] = {blk.log_x1, blk.log_x1, blk.log_x1, blk.log_x1};
        alignas(32) double tmp[4];

        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const __m256d u = uniforms(keys, step); // counter_word(key, step-1)
            const __m256d mask = _mm256_cmp_pd(u, ev, _CMP_GE_OQ);
            const __m256d g =
                _mm256_add_pd(av, _mm256_and_pd(mask, _mm256_mul_pd(bv, r)));
            p = _mm256_mul_pd(p, g);
            r = _mm256_div_pd(one, g);
            if (step == 1 || step % kFlushPeriod == 0) {
                _mm256_store_pd(tmp, p);
                for (int l = 0; l < 4; ++l) acc[l] += std::log(tmp[l]);
                p = one;
            }
        }
        _mm256_store_pd(tmp, p);
        for (int l = 0; l < 4; ++l) out_log_x[j + std::size_t(l)] = acc[l] + std::log(tmp[l]);
    }
    if (j < blk.count) {
        TrajectoryBlock rest = blk;
        rest.traj_begin = blk.traj_begin + j;
        rest.count = blk.count - j;
        kScalarKernels.log_x_block(rest, out_log_x + j);
    }
}

void w_block_avx2(const TrajectoryBlock& blk, double* out_w, double* out_log_w) {
    const __m256d av = _mm256_set1_pd(blk.a);
    const __m256d bv = _mm256_set1_pd(blk.b);
    const __m256d ev = _mm256_set1_pd(blk.eps);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d thresh = _mm256_set1_pd(kWRenormThreshold);

    std::size_t j = 0;
    for (; j + 4 <= blk.count; j += 4) {
        const __m256i keys = load_keys(blk, j);
        __m256d r = _mm256_set1_pd(blk.r0);
        __m256d mw = _mm256_set1_pd(blk.r0);
        __m256d inv = one;
        double offset[4] = {0.0, 0.0, 0.0, 0.0};
        alignas(32) double tmp[4];
        alignas(32) double inv_arr[4] = {1.0, 1.0, 1.0, 1.0};

        for (std::size_t step = 1; step <= blk.steps; ++step) {
            const __m256d u = uniforms(keys, step);
            const __m256d mask = _mm256_cmp_pd(u, ev, _CMP_GE_OQ);
            const __m256d g =
                _mm256_add_pd(av, _mm256_and_pd(mask, _mm256_mul_pd(bv, r)));
            r = _mm256_div_pd(one, g);
            mw = _mm256_mul_pd(r, _mm256_add_pd(mw, inv));
            if (step % kFlushPeriod == 0) {
                const int hit =
                    _mm256_movemask_pd(_mm256_cmp_pd(mw, thresh, _CMP_GT_OQ));
                if (hit != 0) {
                    _mm256_store_pd(tmp, mw);
                    for (int l = 0; l < 4; ++l) {
                        if (hit & (1 << l)) {
                            offset[l] += std::log(tmp[l]);
                            tmp[l] = 1.0;
                            inv_arr[l] = std::exp(-offset[l]);
                        }
                    }
                    mw = _mm256_load_pd(tmp);
                    inv = _mm256_load_pd(inv_arr);
                }
            }
        }
        _mm256_store_pd(tmp, mw);
        for (int l = 0; l < 4; ++l) {
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

void row_update_avx2(double c, const double* w, const double* f_shift, double* g,
                     std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        const __m256d fv = _mm256_loadu_pd(f_shift + i);
        _mm256_storeu_pd(g + i, _mm256_add_pd(cv, _mm256_mul_pd(wv, fv)));
    }
    for (; i < n; ++i) g[i] = c + w[i] * f_shift[i];
}

double max_abs_residual_avx2(const double* g, const double* f, double s,
                             std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(g + i),
                                        _mm256_mul_pd(sv, _mm256_loadu_pd(f + i)));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, acc);
    double m = 0.0;
    for (int l = 0; l < 4; ++l)
        if (tmp[l] > m) m = tmp[l];
    for (; i < n; ++i) {
        const double d = std::fabs(g[i] - s * f[i]);
        if (d > m) m = d;
    }
    return m;
}

void scale_avx2(const double* src, double s, double* dst, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(src + i), sv));
    }
    for (; i < n; ++i) dst[i] = src[i] * s;
}

} // namespace

const KernelTable kAvx2Kernels = {
    log_x_block_avx2, w_block_avx2, row_update_avx2, max_abs_residual_avx2,
    scale_avx2,
};

} // namespace randfib::simd
