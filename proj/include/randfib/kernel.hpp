#pragma once

#include <cstddef>
#include <vector>

#include "randfib/params.hpp"
#include "randfib/ztable.hpp"

namespace randfib {

/// Which transition kernel of the ratio chain R_n = X_n / X_{n+1}.
///
/// Forward: from state i the chain resets to 1 with probability eps or climbs
/// to i+1 with probability 1-eps. Reversed: the time-reversed kernel (full
/// geometric row from state 1, deterministic step down otherwise). SubMarkov:
/// the forward kernel with the reset mass removed, so untilted rows sum to
/// 1-eps.
enum class KernelKind { Forward, Reversed, SubMarkov };

/// What row K of the truncation does with the mass that would leave:
/// Discard drops it; AbsorbLimit reroutes the climb mass to a self-loop of
/// weight (1-eps) * lambda1^{-t}, exploiting S_k -> 1/lambda1.
enum class TailPolicy { Discard, AbsorbLimit };

struct KernelSpec {
    Params params;
    KernelKind kind = KernelKind::Forward;
    double tilt = 0.0; // entries are weighted by S_j^tilt at the destination j
};

struct SparseEntry {
    std::size_t col; // 1-based state index
    double weight;
};

/// Row i of the (tilted) forward kernel: at most two entries,
/// (1, eps * S_1^t) and (i+1, (1-eps) * S_{i+1}^t).
std::vector<SparseEntry> forward_kernel_row(const Params& params, std::size_t i,
                                            double tilt);

struct ReversedRow {
    std::vector<SparseEntry> entries;
    double tail_mass; // geometric mass beyond the cutoff (row i = 1 only)
};

/// Row i of the reversed kernel: for i = 1 the geometric row
/// eps(1-eps)^{j-1} up to `cutoff` with the remaining mass reported;
/// for i > 1 the single deterministic entry at j = i-1.
ReversedRow reversed_kernel_row(const Params& params, std::size_t i,
                                std::size_t cutoff);

/// Stationary mass of state S_k: eps (1-eps)^{k-1}.
/// Throws DegenerateError at eps in {0, 1}.
double stationary_mass(const Params& params, std::size_t k);

/// K x K truncation of a tilted kernel. The structure is two nonzeros per
/// row, stored compactly: a reset column shared by every row plus the
/// climb weights.
struct TruncatedKernel {
    KernelSpec spec;
    std::size_t K = 0;
    TailPolicy tail_policy = TailPolicy::AbsorbLimit;
    double reset_weight = 0.0;      // eps * S_1^t (0 for SubMarkov)
    std::vector<double> up_weight;  // (1-eps) * S_{i+1}^t for i = 1..K-1
    double tail_weight = 0.0;       // row K self-loop under AbsorbLimit

    /// Dense row i (1-based), for inspection and tests.
    std::vector<SparseEntry> row(std::size_t i) const;
};

/// Builds the truncation; Reversed kernels are exposed row-wise only.
TruncatedKernel truncate_kernel(const KernelSpec& spec, std::size_t K,
                                TailPolicy policy);

} // namespace randfib
