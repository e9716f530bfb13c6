#include "randfib/moments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace randfib {

namespace {

// One step of the exact coupled (Y, Y_prev, c, d) recursion, where
// c_n = E h_n and d_n = E(eta_{n-1} h_n).
struct MomentState {
    double y;      // Y_n
    double y_prev; // Y_{n-1}
    double c;      // E h_n
    double d;      // E(eta_{n-1} h_n)
};

inline MomentState moment_step(const Params& p, const MomentState& s) {
    const double q = 1.0 - p.eps;
    const double bq = p.b * q;
    MomentState next;
    next.y = (p.a * p.a + 2.0 * bq) * s.y +
             p.b * p.b * q * (1.0 - 2.0 * q) * s.y_prev + 2.0 * bq * s.c;
    next.y_prev = s.y;
    next.c = -p.b * s.d;
    next.d = bq * (p.eps * s.y - s.d);
    return next;
}

inline MomentState moment_initial(const Params& p) {
    const double bq = p.b * (1.0 - p.eps);
    // State at n = 1: Y_1 = a^2, Y_0 = 1, E h_1 = E(eta_0 h_1) = bq.
    return MomentState{p.a * p.a, 1.0, bq, bq};
}

} // namespace

MomentTable moment_table(const Params& params, std::size_t n_max) {
    MomentTable t;
    t.params = params;
    t.mean_x.resize(n_max + 1);
    t.second_x.resize(n_max + 1);
    t.cassini_h.assign(n_max + 1, 0.0);
    t.eta_h.assign(n_max + 1, 0.0);

    const double a = params.a;
    const double bq = params.b * (1.0 - params.eps);

    t.mean_x[0] = 1.0;
    t.second_x[0] = 1.0;
    if (n_max == 0) return t;

    t.mean_x[1] = a;
    t.second_x[1] = a * a;
    t.cassini_h[1] = bq;
    t.eta_h[1] = bq;

    MomentState s = moment_initial(params);
    for (std::size_t n = 1; n < n_max; ++n) {
        t.mean_x[n + 1] = a * t.mean_x[n] + bq * t.mean_x[n - 1];
        s = moment_step(params, s);
        t.second_x[n + 1] = s.y;
        t.cassini_h[n + 1] = s.c;
        t.eta_h[n + 1] = s.d;
        if (!t.overflow_index &&
            (!std::isfinite(t.second_x[n + 1]) || !std::isfinite(t.mean_x[n + 1]))) {
            t.overflow_index = n + 1;
        }
    }
    return t;
}

double mean_x(const Params& params, std::size_t n) {
    const Roots r = lambda_roots(params);
    const double num = std::pow(r.lambda1, double(n + 1)) -
                       std::pow(r.lambda2, double(n + 1));
    const double value = num / (r.lambda1 - r.lambda2);
    if (!std::isfinite(value)) {
        throw OverflowError("mean_x: value exceeds double range; use log_mean_x");
    }
    return value;
}

double log_mean_x(const Params& params, std::size_t n) {
    const Roots r = lambda_roots(params);
    if (r.lambda2 == 0.0) {
        return double(n) * std::log(r.lambda1);
    }
    // log mean = (n+1) log lambda1 + log1p(-(lambda2/lambda1)^{n+1}) - log(lambda1-lambda2)
    const double mag = double(n + 1) * std::log(-r.lambda2 / r.lambda1);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^{n+1}
    const double ratio_pow = sign * std::exp(mag);
    return double(n + 1) * std::log(r.lambda1) + std::log1p(-ratio_pow) -
           std::log(r.lambda1 - r.lambda2);
}

double second_moment_x(const Params& params, std::size_t n) {
    if (n == 0) return 1.0;
    MomentState s = moment_initial(params);
    for (std::size_t i = 1; i < n; ++i) s = moment_step(params, s);
    if (!std::isfinite(s.y)) {
        throw OverflowError(
            "second_moment_x: value exceeds double range; use log_second_moment_x");
    }
    return s.y;
}

double log_second_moment_x(const Params& params, std::size_t n) {
    if (n == 0) return 0.0;
    MomentState s = moment_initial(params);
    double log_scale = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        s = moment_step(params, s);
        if (s.y > 1e120 || s.y < 1e-120) {
            const double f = s.y;
            log_scale += std::log(f);
            s.y = 1.0;
            s.y_prev /= f;
            s.c /= f;
            s.d /= f;
        }
    }
    return log_scale + std::log(s.y);
}

double cassini_h1(const Params& params) {
    return params.b * (1.0 - params.eps);
}

double cassini_expectation(const Params& params, std::size_t n) {
    if (n < 1) {
        throw IndexError("cassini_expectation: requires n >= 1 (returns E h_{n+1})");
    }
    MomentState s = moment_initial(params);
    for (std::size_t i = 1; i < n + 1; ++i) s = moment_step(params, s);
    return s.c;
}

double cross_moment(const Params& params, std::size_t n, std::size_t k) {
    const double a = params.a;
    const double bq = params.b * (1.0 - params.eps);

    // Anchors at k = 0, 1 from the exact Y / Cassini recursion.
    MomentState s = moment_initial(params);
    for (std::size_t i = 1; i < n; ++i) s = moment_step(params, s);
    const double y_n = (n == 0) ? 1.0 : s.y;
    const MomentState s_next = (n == 0) ? moment_initial(params) : moment_step(params, s);
    const double y_next = (n == 0) ? a * a : s_next.y;
    const double h_next = (n == 0) ? bq : s_next.c; // E h_{n+1}

    if (k == 0) {
        if (!std::isfinite(y_n)) throw OverflowError("cross_moment: overflow");
        return y_n;
    }
    double u_prev = y_n;                               // U_{n,0}
    double u = (h_next + y_next - bq * y_n) / a;       // U_{n,1}
    for (std::size_t j = 1; j < k; ++j) {
        const double u_next = a * u + bq * u_prev;
        u_prev = u;
        u = u_next;
    }
    if (!std::isfinite(u)) throw OverflowError("cross_moment: overflow");
    return u;
}

double second_moment_growth_rate(const Params& params) {
    const double a = params.a;
    const double q = 1.0 - params.eps;
    const double bq = params.b * q;
    if (q == 0.0) return 2.0 * std::log(a); // X_n = a^n deterministically

    // Power iteration on the 3x3 pair-moment transfer matrix.
    const double t11 = a * a, t12 = 2.0 * a * bq, t13 = params.b * bq;
    double v1 = 1.0, v2 = 1.0, v3 = 1.0;
    double rate = 0.0;
    for (int it = 0; it < 200000; ++it) {
        const double w1 = t11 * v1 + t12 * v2 + t13 * v3;
        const double w2 = a * v1 + bq * v2;
        const double w3 = v1;
        const double next = w1 / v1;
        const double scale = 1.0 / w1;
        v1 = 1.0;
        v2 = w2 * scale;
        v3 = w3 * scale;
        if (it > 4 && std::abs(next - rate) <= 1e-15 * std::abs(next)) {
            rate = next;
            break;
        }
        rate = next;
    }
    return std::log(rate);
}

MomentOracle brute_force_moments(const Params& params, std::size_t n,
                                 std::size_t k_max) {
    if (n > 24) {
        std::ostringstream msg;
        msg << "brute_force_moments: n=" << n << " exceeds the n <= 24 cap "
            << "(cost 2^{n-1} patterns)";
        throw TooLargeError(msg.str());
    }
    const std::size_t horizon = std::max(n + 1, n + k_max); // need X_0..X_horizon
    if (horizon > 26) {
        throw TooLargeError("brute_force_moments: n + k_max horizon exceeds 26");
    }
    const std::size_t bits = (horizon >= 1) ? horizon - 1 : 0; // eta_0..eta_{horizon-2}
    const double a = params.a;
    const double b = params.b;
    const double q = 1.0 - params.eps;

    // Probability factors per count of ones/zeros, by repeated multiplication.
    std::vector<double> q_pow(bits + 1, 1.0), e_pow(bits + 1, 1.0);
    for (std::size_t i = 1; i <= bits; ++i) {
        q_pow[i] = q_pow[i - 1] * q;
        e_pow[i] = e_pow[i - 1] * params.eps;
    }

    struct Kahan {
        double sum = 0.0, comp = 0.0;
        void add(double v) {
            const double y = v - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    };

    Kahan mean_acc, second_acc, cassini_acc;
    std::vector<Kahan> cross_acc(k_max + 1);
    std::vector<double> x(horizon + 1);
    x[0] = 1.0;
    if (horizon >= 1) x[1] = a;

    const std::uint64_t total = std::uint64_t(1) << bits;
    for (std::uint64_t pat = 0; pat < total; ++pat) {
        int ones = 0;
        for (std::size_t j = 1; j < horizon; ++j) {
            const bool eta = (pat >> (j - 1)) & 1u;
            ones += eta ? 1 : 0;
            x[j + 1] = a * x[j] + (eta ? b * x[j - 1] : 0.0);
        }
        const double p = q_pow[ones] * e_pow[bits - std::size_t(ones)];
        if (p == 0.0) continue;
        mean_acc.add(p * x[n]);
        second_acc.add(p * x[n] * x[n]);
        if (n >= 1) cassini_acc.add(p * (x[n - 1] * x[n + 1] - x[n] * x[n]));
        for (std::size_t k = 0; k <= k_max; ++k) cross_acc[k].add(p * x[n] * x[n + k]);
    }

    MomentOracle out;
    out.mean = mean_acc.sum;
    out.second = second_acc.sum;
    out.cassini = (n >= 1) ? cassini_acc.sum : 0.0;
    out.cross.resize(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) out.cross[k] = cross_acc[k].sum;
    return out;
}

} // namespace randfib
