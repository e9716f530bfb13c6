#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "randfib/params.hpp"

namespace randfib {

/// Prefix Z_0..Z_N of the noiseless sequence Z_{n+1} = a Z_n + b Z_{n-1},
/// Z_0 = 1, Z_1 = a, kept both in linear and natural-log scale.
///
/// `values` saturate to +inf once Z_n leaves the double range (around
/// n ~ 700*log(10)/log(lambda1)); `log_values` are produced for every index
/// through a ratio-form update and are the canonical representation.
struct ZTable {
    Params params;
    std::vector<double> values;     // Z_0..Z_N, +inf past the overflow horizon
    std::vector<double> log_values; // log Z_0..log Z_N, always finite
    std::optional<std::size_t> overflow_index; // first n with Z_n not representable

    std::size_t max_index() const { return values.size() - 1; }
};

/// Builds the table up to Z_N (N >= 1).
ZTable z_table(const Params& params, std::size_t n_max);

/// log S_k = log Z_{k-1} - log Z_k for 1 <= k <= N.
/// Throws IndexError outside the table.
double state_ratio_log(const ZTable& table, std::size_t k);

/// State ratio S_k = Z_{k-1}/Z_k of the ratio chain, computed in log scale
/// and exponentiated. S_1 = 1/a exactly.
double state_ratio(const ZTable& table, std::size_t k);

} // namespace randfib
