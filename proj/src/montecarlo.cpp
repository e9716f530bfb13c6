#include "randfib/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace randfib {

void validate_config(const SimConfig& config) {
    if (config.n < 2) throw OutOfRangeError("SimConfig: requires n >= 2");
    if (config.m < 1) throw OutOfRangeError("SimConfig: requires m >= 1");
    const double x1 = config.initial_x1();
    if (!(config.x0 > 0.0) || !std::isfinite(config.x0) || !(x1 > 0.0) ||
        !std::isfinite(x1)) {
        throw OutOfRangeError("SimConfig: initial values must be positive finite");
    }
    if (!std::isfinite(config.params.b * config.x0 / x1)) {
        throw OutOfRangeError("SimConfig: b * X_0 / X_1 exceeds the double range");
    }
}

SampleSet SampleSet::from_values(SampleKind kind, std::vector<double> vals) {
    SampleSet s;
    s.kind = kind;
    s.log_values.reserve(vals.size());
    for (double v : vals) s.log_values.push_back(std::log(v));
    s.values = std::move(vals);
    return s;
}

namespace {

template <class BlockFn>
void run_blocks(const SimConfig& config, BlockFn&& fn) {
    const simd::Backend be = simd::resolve_backend(config.backend);
    int threads = config.threads;
    if (threads <= 0) {
        threads = int(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = int(std::min<std::size_t>(std::size_t(threads), config.m));

    simd::TrajectoryBlock proto;
    proto.a = config.params.a;
    proto.b = config.params.b;
    proto.eps = config.params.eps;
    proto.seed = config.seed;
    proto.steps = config.n - 1;
    const double x1 = config.initial_x1();
    proto.r0 = config.x0 / x1;
    proto.log_x1 = std::log(x1);

    if (threads == 1) {
        simd::TrajectoryBlock blk = proto;
        blk.traj_begin = 0;
        blk.count = config.m;
        fn(be, blk, 0);
        return;
    }

    const std::size_t chunk = (config.m + std::size_t(threads) - 1) / std::size_t(threads);
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = std::size_t(t) * chunk;
        if (begin >= config.m) break;
        const std::size_t count = std::min(chunk, config.m - begin);
        simd::TrajectoryBlock blk = proto;
        blk.traj_begin = begin;
        blk.count = count;
        pool.emplace_back([be, blk, begin, &fn] { fn(be, blk, begin); });
    }
    for (auto& th : pool) th.join();
}

} // namespace

SampleSet simulate_log_x(const SimConfig& config) {
    validate_config(config);
    const auto t0 = std::chrono::steady_clock::now();

    SampleSet out;
    out.kind = SampleKind::LogX;
    out.config = config;
    out.values.resize(config.m);
    run_blocks(config, [&](simd::Backend be, const simd::TrajectoryBlock& blk,
                           std::size_t offset) {
        simd::log_x_block(be, blk, out.values.data() + offset);
    });
    out.log_values = out.values;

    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SampleSet simulate_w(const SimConfig& config) {
    validate_config(config);
    const auto t0 = std::chrono::steady_clock::now();

    SampleSet out;
    out.kind = SampleKind::W;
    out.config = config;
    out.values.resize(config.m);
    out.log_values.resize(config.m);
    run_blocks(config, [&](simd::Backend be, const simd::TrajectoryBlock& blk,
                           std::size_t offset) {
        simd::w_block(be, blk, out.values.data() + offset,
                      out.log_values.data() + offset);
    });

    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

Estimate lambda_mc(const Params& params, double t, std::size_t n, std::size_t m,
                   std::uint64_t seed, int threads, simd::Backend backend) {
    if (t < 0.0) throw OutOfRangeError("lambda_mc: requires t >= 0");
    SimConfig config;
    config.params = params;
    config.n = n;
    config.m = m;
    config.seed = seed;
    config.threads = threads;
    config.backend = backend;
    const SampleSet samples = simulate_log_x(config);

    // (1/n) log mean exp(-t log X), max-shifted.
    double shift = -std::numeric_limits<double>::infinity();
    for (double lx : samples.values) shift = std::max(shift, -t * lx);
    double sum = 0.0;
    for (double lx : samples.values) sum += std::exp(-t * lx - shift);
    if (m > 1 && !(sum > 1.0 + 1e-9)) {
        throw DegenerateSampleError(
            "lambda_mc: all weight on one trajectory (n*t too large for m)");
    }
    const double mean_w = sum / double(m);
    double var = 0.0;
    for (double lx : samples.values) {
        const double d = std::exp(-t * lx - shift) - mean_w;
        var += d * d;
    }
    var = (m > 1) ? var / double(m - 1) : 0.0;

    Estimate est;
    est.value = (shift + std::log(mean_w)) / double(n);
    est.std_error = std::sqrt(var / double(m)) / (mean_w * double(n));
    return est;
}

Estimate hill_estimator(const SampleSet& samples, std::size_t k) {
    const std::size_t m = samples.log_values.size();
    if (k < 2 || k >= m) {
        throw IndexError("hill_estimator: requires 2 <= k < m");
    }
    std::vector<double> logs = samples.log_values;
    for (double lv : logs) {
        if (std::isnan(lv)) {
            throw NonPositiveError("hill_estimator: sample with W <= 0 or NaN");
        }
    }
    // k largest log-values and the (k+1)-th from the top as the threshold.
    std::nth_element(logs.begin(), logs.begin() + std::ptrdiff_t(k), logs.end(),
                     std::greater<double>());
    const double log_threshold = logs[k];
    if (!std::isfinite(log_threshold)) {
        throw NonPositiveError("hill_estimator: threshold order statistic not finite");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += logs[i] - log_threshold;
    if (!(acc > 0.0)) {
        throw DegenerateSampleError(
            "hill_estimator: zero log-spacings (degenerate tail)");
    }
    Estimate est;
    est.value = double(k) / acc;
    est.std_error = est.value / std::sqrt(double(k));
    return est;
}

double empirical_quantile(std::span<const double> xs, double p) {
    if (xs.empty()) throw IndexError("empirical_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw OutOfRangeError("empirical_quantile: requires p in [0,1]");
    }
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = p * double(sorted.size() - 1);
    const std::size_t idx = std::size_t(pos);
    if (idx + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - double(idx);
    return sorted[idx] + frac * (sorted[idx + 1] - sorted[idx]);
}

TailConstant tail_constant_estimate(const SampleSet& samples, double s,
                                    std::span<const double> quantiles) {
    if (!(s > 0.0)) throw OutOfRangeError("tail_constant_estimate: requires s > 0");
    TailConstant out;
    for (double q : quantiles) {
        if (!(q > 0.0 && q <= 0.1)) {
            throw OutOfRangeError(
                "tail_constant_estimate: quantiles must lie in (0, 0.1]");
        }
        const double log_xq = empirical_quantile(samples.log_values, 1.0 - q);
        out.quantiles.push_back(q);
        out.k_hat.push_back(std::exp(s * log_xq + std::log(q)));
    }
    std::vector<double> sorted = out.k_hat;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    out.pooled_median =
        (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return out;
}

double ks_distance(std::span<const double> xs, std::span<const double> ys) {
    if (xs.empty() || ys.empty()) throw IndexError("ks_distance: empty sample");
    std::vector<double> x(xs.begin(), xs.end());
    std::vector<double> y(ys.begin(), ys.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = double(x.size());
    const double ny = double(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::fabs(double(i) / nx - double(j) / ny));
    }
    return d;
}

} // namespace randfib
