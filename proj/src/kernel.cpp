#include "randfib/kernel.hpp"

#include <cmath>
#include <sstream>

namespace randfib {

std::vector<SparseEntry> forward_kernel_row(const Params& params, std::size_t i,
                                            double tilt) {
    if (i < 1) throw IndexError("forward_kernel_row: states are 1-based");
    const ZTable table = z_table(params, i + 1);
    std::vector<SparseEntry> row;
    const double s1t = std::pow(1.0 / params.a, tilt);
    const double sit = std::exp(tilt * state_ratio_log(table, i + 1));
    if (params.eps > 0.0) row.push_back({1, params.eps * s1t});
    if (params.eps < 1.0) row.push_back({i + 1, (1.0 - params.eps) * sit});
    return row;
}

ReversedRow reversed_kernel_row(const Params& params, std::size_t i,
                                std::size_t cutoff) {
    if (i < 1) throw IndexError("reversed_kernel_row: states are 1-based");
    ReversedRow row;
    if (i > 1) {
        row.entries.push_back({i - 1, 1.0});
        row.tail_mass = 0.0;
        return row;
    }
    const double eps = params.eps;
    double w = eps;
    double mass = 0.0;
    for (std::size_t j = 1; j <= cutoff; ++j) {
        row.entries.push_back({j, w});
        mass += w;
        w *= (1.0 - eps);
    }
    row.tail_mass = 1.0 - mass;
    return row;
}

double stationary_mass(const Params& params, std::size_t k) {
    if (k < 1) throw IndexError("stationary_mass: states are 1-based");
    if (params.eps <= 0.0 || params.eps >= 1.0) {
        std::ostringstream msg;
        msg << "stationary_mass: undefined at eps=" << params.eps
            << " (no stationary law on the countable state space)";
        throw DegenerateError(msg.str());
    }
    return params.eps * std::pow(1.0 - params.eps, double(k - 1));
}

TruncatedKernel truncate_kernel(const KernelSpec& spec, std::size_t K,
                                TailPolicy policy) {
    if (spec.kind == KernelKind::Reversed) {
        throw DegenerateError(
            "truncate_kernel: the reversed kernel is exposed row-wise only");
    }
    if (K < 2) throw IndexError("truncate_kernel: requires K >= 2");

    const Params& p = spec.params;
    const double t = spec.tilt;
    const ZTable table = z_table(p, K + 1);
    const double lambda1 = lambda_roots(p, 0.0).lambda1;

    TruncatedKernel k;
    k.spec = spec;
    k.K = K;
    k.tail_policy = policy;
    k.reset_weight =
        (spec.kind == KernelKind::SubMarkov) ? 0.0 : p.eps * std::pow(1.0 / p.a, t);
    k.up_weight.resize(K - 1);
    for (std::size_t i = 1; i < K; ++i) {
        k.up_weight[i - 1] =
            (1.0 - p.eps) * std::exp(t * state_ratio_log(table, i + 1));
    }
    k.tail_weight = (policy == TailPolicy::AbsorbLimit)
                        ? (1.0 - p.eps) * std::pow(lambda1, -t)
                        : 0.0;
    return k;
}

std::vector<SparseEntry> TruncatedKernel::row(std::size_t i) const {
    if (i < 1 || i > K) throw IndexError("TruncatedKernel::row: index out of range");
    std::vector<SparseEntry> out;
    if (reset_weight > 0.0) out.push_back({1, reset_weight});
    if (i < K) {
        if (up_weight[i - 1] > 0.0) out.push_back({i + 1, up_weight[i - 1]});
    } else if (tail_weight > 0.0) {
        out.push_back({K, tail_weight});
    }
    return out;
}

} // namespace randfib
