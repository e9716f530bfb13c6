#pragma once

// Internal kernel registry shared by the per-backend translation units.

#include <cstddef>

#include "randfib/simd.hpp"

namespace randfib::simd {

// Flush the pending growth product into the log accumulator at step 1 and
// every kFlushPeriod steps thereafter; renormalize the W mantissa on the
// same period. Both schedules are fixed so that every backend performs the
// identical sequence of operations per lane.
inline constexpr std::size_t kFlushPeriod = 64;
inline constexpr double kWRenormThreshold = 1e120;

struct KernelTable {
    void (*log_x_block)(const TrajectoryBlock&, double*);
    void (*w_block)(const TrajectoryBlock&, double*, double*);
    void (*row_update)(double, const double*, const double*, double*, std::size_t);
    double (*max_abs_residual)(const double*, const double*, double, std::size_t);
    void (*scale)(const double*, double, double*, std::size_t);
};

extern const KernelTable kScalarKernels;

#if defined(RANDFIB_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(RANDFIB_HAVE_NEON)
extern const KernelTable kNeonKernels;
#endif

} // namespace randfib::simd
