#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "randfib/params.hpp"
#include "randfib/simd.hpp"

namespace randfib {

struct SimConfig {
    Params params;
    std::size_t n = 2;        // trajectory length; the returned value is at index n
    std::size_t m = 1;        // independent trajectories
    std::uint64_t seed = 0;
    double x0 = 1.0;          // initial pair; default (1, a)
    double x1 = -1.0;         // -1 means "use params.a"
    int threads = 0;          // 0: hardware concurrency
    simd::Backend backend = simd::Backend::Auto;

    double initial_x1() const { return x1 < 0.0 ? params.a : x1; }
};

/// Validates n >= 2, m >= 1 and positive finite initial values.
void validate_config(const SimConfig& config);

enum class SampleKind { LogX, W };

/// One value per trajectory. For LogX, values = log_values = log X_n.
/// For W, log_values holds the exact log W_n and values holds W_n itself
/// (+inf only when the true value exceeds the double range, which can happen
/// at or above the critical noise).
struct SampleSet {
    SampleKind kind = SampleKind::LogX;
    std::vector<double> values;
    std::vector<double> log_values;
    SimConfig config;
    double elapsed_seconds = 0.0;

    /// Wraps externally produced positive samples (synthetic oracles).
    static SampleSet from_values(SampleKind kind, std::vector<double> vals);
};

/// log X_n per trajectory, deterministic in (seed, n, m) and independent of
/// thread count and backend.
SampleSet simulate_log_x(const SimConfig& config);

/// W_n = (1/X_n) sum_{k<n} X_k per trajectory, evolved through the ratio
/// recursion W_{j+1} = R_j (W_j + 1); same determinism guarantees.
SampleSet simulate_w(const SimConfig& config);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo estimate of Lambda_eps(t) = (1/n) log E[X_n^{-t}] with a
/// max-shifted log-sum and a delta-method standard error. Throws
/// DegenerateSampleError when all weight collapses onto one trajectory.
Estimate lambda_mc(const Params& params, double t, std::size_t n, std::size_t m,
                   std::uint64_t seed, int threads = 0,
                   simd::Backend backend = simd::Backend::Auto);

/// Hill tail-index estimator on the k largest order statistics:
/// s_hat = k / sum_{i<=k} log(W_(m-i+1) / W_(m-k)), std error s_hat/sqrt(k).
/// Requires 2 <= k < m. Works on log_values, so it tolerates samples whose
/// linear value overflowed.
Estimate hill_estimator(const SampleSet& samples, std::size_t k);

struct TailConstant {
    std::vector<double> quantiles;     // tail probabilities q
    std::vector<double> k_hat;         // x_q^s * q per quantile
    double pooled_median = 0.0;
};

/// K_eps estimate from upper quantiles: x_q = empirical (1-q)-quantile,
/// K_hat(q) = x_q^s q; stability across q indicates the asymptotic regime.
TailConstant tail_constant_estimate(const SampleSet& samples, double s,
                                    std::span<const double> quantiles);

/// Two-sample Kolmogorov-Smirnov distance (inputs need not be sorted).
double ks_distance(std::span<const double> xs, std::span<const double> ys);

/// Type-7 empirical quantile (linear interpolation) of an unsorted sample.
double empirical_quantile(std::span<const double> xs, double p);

} // namespace randfib
