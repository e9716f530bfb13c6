#include "randfib/simd.hpp"

#include <sstream>

#include "simd_kernels.hpp"

namespace randfib::simd {

namespace {

bool cpu_has_avx2() {
#if defined(RANDFIB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool cpu_has_neon() {
#if defined(RANDFIB_HAVE_NEON)
    return true; // baseline on aarch64
#else
    return false;
#endif
}

const KernelTable& table_for(Backend be) {
    switch (be) {
#if defined(RANDFIB_HAVE_AVX2)
        case Backend::Avx2:
            return kAvx2Kernels;
#endif
#if defined(RANDFIB_HAVE_NEON)
        case Backend::Neon:
            return kNeonKernels;
#endif
        default:
            return kScalarKernels;
    }
}

} // namespace

const char* backend_name(Backend be) {
    switch (be) {
        case Backend::Auto: return "auto";
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

Backend parse_backend(const std::string& name) {
    if (name == "auto") return Backend::Auto;
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    if (name == "neon") return Backend::Neon;
    throw DegenerateError("unknown backend '" + name +
                          "' (expected auto|scalar|avx2|neon)");
}

bool backend_available(Backend be) {
    switch (be) {
        case Backend::Auto:
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
            return cpu_has_avx2();
        case Backend::Neon:
            return cpu_has_neon();
    }
    return false;
}

Backend resolve_backend(Backend requested) {
    if (requested == Backend::Auto) {
        if (cpu_has_avx2()) return Backend::Avx2;
        if (cpu_has_neon()) return Backend::Neon;
        return Backend::Scalar;
    }
    if (!backend_available(requested)) {
        std::ostringstream msg;
        msg << "backend '" << backend_name(requested)
            << "' not available on this CPU/build";
        throw DegenerateError(msg.str());
    }
    return requested;
}

void log_x_block(Backend be, const TrajectoryBlock& blk, double* out_log_x) {
    table_for(resolve_backend(be)).log_x_block(blk, out_log_x);
}

void w_block(Backend be, const TrajectoryBlock& blk, double* out_w,
             double* out_log_w) {
    table_for(resolve_backend(be)).w_block(blk, out_w, out_log_w);
}

void row_update(Backend be, double c, const double* w, const double* f_shift,
                double* g, std::size_t n) {
    table_for(resolve_backend(be)).row_update(c, w, f_shift, g, n);
}

double max_abs_residual(Backend be, const double* g, const double* f, double s,
                        std::size_t n) {
    return table_for(resolve_backend(be)).max_abs_residual(g, f, s, n);
}

void scale(Backend be, const double* src, double s, double* dst, std::size_t n) {
    table_for(resolve_backend(be)).scale(src, s, dst, n);
}

} // namespace randfib::simd
