#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "randfib/csvio.hpp"
#include "randfib/dd.hpp"
#include "randfib/kernel.hpp"
#include "randfib/lyapunov.hpp"
#include "randfib/moments.hpp"
#include "randfib/montecarlo.hpp"
#include "randfib/perron.hpp"
#include "randfib/rng.hpp"
#include "randfib/tail.hpp"
#include "randfib/ztable.hpp"

namespace randfib::tools {

namespace {

constexpr double kPairs[3][2] = {{0.5, 0.6}, {0.3, 0.9}, {0.8, 0.25}};

struct Reporter {
    std::vector<std::vector<std::string>> rows;
    int failures = 0;

    void add(const std::string& name, bool pass, double detail) {
        rows.push_back({name, pass ? "PASS" : "FAIL", fmt_double(detail)});
        if (!pass) ++failures;
    }
};

struct DDTable {
    std::vector<DD> z;
    DD lambda1, lambda2;
};

DDTable dd_z_table(double a, double b, std::size_t n_max) {
    DDTable t;
    t.z.resize(n_max + 1);
    t.z[0] = DD{1.0, 0.0};
    t.z[1] = DD{a, 0.0};
    for (std::size_t n = 1; n < n_max; ++n) {
        t.z[n + 1] = dd_add(dd_mul(DD{a}, t.z[n]), dd_mul(DD{b}, t.z[n - 1]));
    }
    const DD disc = dd_sqrt(dd_add(dd_mul(DD{a}, DD{a}), dd_mul(DD{4.0 * b}, DD{1.0})));
    t.lambda1 = dd_mul(dd_add(DD{a}, disc), DD{0.5});
    t.lambda2 = dd_neg(dd_div(DD{b}, t.lambda1));
    return t;
}

// ---- core_model -----------------------------------------------------------

// The Cassini / lambda1 identities compare a difference of O(Z_n^2)-sized
// products against b^n resp. lambda2^{n+1}; once those targets fall below the
// arithmetic's rounding envelope the pure relative bound is not representable
// at any precision we carry. Residuals are therefore computed in double-double
// (~1e-31) and asserted at rel. 1e-10 wherever the target clears the DD noise
// floor, with a rounding-envelope bound on the double table elsewhere.
constexpr double kDDNoise = 1e-29;

void check_z_identities(Reporter& rep) {
    double worst_closed = 0.0, worst_cassini = 0.0, worst_lam = 0.0,
           worst_table = 0.0, worst_gap = 0.0, worst_envelope = 0.0;
    bool interlace_ok = true;

    for (const auto& pr : kPairs) {
        const Params p = validate_params(pr[0], pr[1], 0.0);
        const std::size_t N = 60;
        const ZTable tab = z_table(p, std::max<std::size_t>(N, 220));
        const DDTable dd = dd_z_table(p.a, p.b, N + 1);
        const Roots roots = lambda_roots(p, 0.0);

        // closed form vs recursion (double table)
        for (std::size_t n = 0; n <= N; ++n) {
            const double closed = (std::pow(roots.lambda1, double(n + 1)) -
                                   std::pow(roots.lambda2, double(n + 1))) /
                                  (roots.lambda1 - roots.lambda2);
            worst_closed = std::max(
                worst_closed, std::fabs(tab.values[n] - closed) / std::fabs(closed));
        }

        // Cassini: Z_{n-1} Z_{n+1} - Z_n^2 = (-1)^{n+1} b^n
        DD bpow = DD{p.b};
        for (std::size_t n = 1; n < N; ++n) {
            const DD cass = dd_sub(dd_mul(dd.z[n - 1], dd.z[n + 1]),
                                   dd_mul(dd.z[n], dd.z[n]));
            const double target = (n % 2 == 1) ? 1.0 : -1.0; // (-1)^{n+1}
            const DD resid = dd_sub(cass, dd_mul(bpow, DD{target}));
            const double z2 = dd_to_double(dd.z[n]) * dd_to_double(dd.z[n]);
            const double bn = dd_to_double(bpow);
            if (bn * 1e-10 > kDDNoise * z2) {
                worst_cassini =
                    std::max(worst_cassini, std::fabs(dd_to_double(resid)) / bn);
            } else {
                // double-table residual within the rounding envelope of Z^2
                const double c_tab = tab.values[n - 1] * tab.values[n + 1] -
                                     tab.values[n] * tab.values[n];
                const double env = 16.0 * double(n + 1) *
                                   std::numeric_limits<double>::epsilon() * z2;
                worst_envelope = std::max(
                    worst_envelope, std::fabs(c_tab - target * bn) / env);
            }
            bpow = dd_mul(bpow, DD{p.b});
        }

        // Z_{n+1} - lambda1 Z_n = lambda2^{n+1}
        DD l2pow = dd.lambda2;
        for (std::size_t n = 0; n < N; ++n) {
            const DD lhs = dd_sub(dd.z[n + 1], dd_mul(dd.lambda1, dd.z[n]));
            const DD resid = dd_sub(lhs, l2pow);
            const double rhs = std::fabs(dd_to_double(l2pow));
            const double zs = dd_to_double(dd.z[n + 1]);
            if (rhs * 1e-10 > kDDNoise * zs) {
                worst_lam =
                    std::max(worst_lam, std::fabs(dd_to_double(resid)) / rhs);
            }
            l2pow = dd_mul(l2pow, dd.lambda2);
        }

        // double table vs double-double recursion
        for (std::size_t n = 0; n <= N; ++n) {
            worst_table =
                std::max(worst_table, std::fabs(tab.values[n] - dd_to_double(dd.z[n])) /
                                          dd_to_double(dd.z[n]));
        }

        // interlacing chain, strict on DD values (compared in DD, since the
        // gaps shrink like (|lambda2|/lambda1)^n below double resolution)
        // while they clear the DD noise floor
        const double l1d = dd_to_double(dd.lambda1);
        const double shrink = -dd_to_double(dd.lambda2) / l1d;
        for (std::size_t k = 1; 2 * k + 2 <= N; ++k) {
            if (std::pow(shrink, double(2 * k + 2)) < 100.0 * kDDNoise) break;
            const auto ratio = [&](std::size_t num, std::size_t den) {
                return dd_div(dd.z[num], dd.z[den]);
            };
            const DD r1 = ratio(2 * k - 1, 2 * k - 2);
            const DD r2 = ratio(2 * k + 1, 2 * k);
            const DD r3 = ratio(2 * k + 2, 2 * k + 1);
            const DD r4 = ratio(2 * k, 2 * k - 1);
            const DD hi_bound = dd_div(dd_add(dd_mul(DD{p.a}, DD{p.a}), DD{p.b}),
                                       DD{p.a});
            if (dd_less(r1, DD{p.a}) || !dd_less(r1, r2) ||
                !dd_less(r2, dd.lambda1) || !dd_less(dd.lambda1, r3) ||
                !dd_less(r3, r4) || dd_less(hi_bound, r4)) {
                interlace_ok = false;
            }
        }
        // and with rounding slack on the full double table range
        for (std::size_t k = 1; 2 * k + 2 <= N; ++k) {
            const double slack = 1e-12;
            const auto lr = [&](std::size_t num, std::size_t den) {
                return tab.log_values[num] - tab.log_values[den];
            };
            const double s1 = lr(2 * k - 1, 2 * k - 2), s2 = lr(2 * k + 1, 2 * k),
                         s3 = lr(2 * k + 2, 2 * k + 1), s4 = lr(2 * k, 2 * k - 1);
            const double ll = std::log(l1d);
            if (!(std::log(p.a) <= s1 + slack && s1 < s2 + slack && s2 < ll + slack &&
                  ll < s3 + slack && s3 < s4 + slack &&
                  s4 <= std::log((p.a * p.a + p.b) / p.a) + slack)) {
                interlace_ok = false;
            }
        }

        // log-gap convergence to log lambda1 by n = 200
        const double gap = tab.log_values[200] - tab.log_values[199];
        worst_gap = std::max(worst_gap, std::fabs(gap / std::log(roots.lambda1) - 1.0));
    }

    rep.add("z_closed_form_vs_recursion_max_rel", worst_closed < 1e-10, worst_closed);
    rep.add("z_cassini_residual_max_rel", worst_cassini < 1e-10, worst_cassini);
    rep.add("z_cassini_envelope_max_ratio", worst_envelope < 1.0, worst_envelope);
    rep.add("z_lambda1_identity_max_rel", worst_lam < 1e-10, worst_lam);
    rep.add("z_table_vs_dd_max_rel", worst_table < 1e-10, worst_table);
    rep.add("z_interlacing", interlace_ok, interlace_ok ? 1.0 : 0.0);
    rep.add("z_loggap_to_loglambda1_at_200", worst_gap < 1e-8, worst_gap);
}

void check_roots(Reporter& rep) {
    double worst = 0.0;
    for (const auto& pr : kPairs) {
        for (double eps : {0.0, 0.1, 0.2, 0.5, 0.9, 1.0}) {
            const Params p = validate_params(pr[0], pr[1], eps);
            const Roots r = lambda_roots(p, eps);
            const double bq = p.b * (1.0 - eps);
            worst = std::max(worst, std::fabs(r.lambda1 + r.lambda2 - p.a));
            worst = std::max(worst, std::fabs(r.lambda1 * r.lambda2 + bq));
            const double q1 = r.lambda1 * r.lambda1 - p.a * r.lambda1 - bq;
            const double q2 = r.lambda2 * r.lambda2 - p.a * r.lambda2 - bq;
            worst = std::max(worst, std::fabs(q1) / (r.lambda1 * r.lambda1));
            if (r.lambda2 != 0.0) {
                worst = std::max(worst, std::fabs(q2) / std::max(1e-30, r.lambda2 * r.lambda2));
            }
        }
    }
    rep.add("roots_vieta_and_quadratic_max_rel", worst < 1e-12, worst);
}

// ---- moments --------------------------------------------------------------

void check_moments_oracle(Reporter& rep, std::size_t n_hi) {
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        for (double b : {0.8, 1.2}) {
            for (double eps : {0.1, 0.5, 0.9}) {
                const Params p = validate_params(a, b, eps);
                for (std::size_t n = 0; n <= n_hi; ++n) {
                    const MomentOracle oracle = brute_force_moments(p, n, 4);
                    const auto rel = [](double got, double want) {
                        return std::fabs(got - want) /
                               std::max(std::fabs(want), 1e-300);
                    };
                    worst = std::max(worst, rel(mean_x(p, n), oracle.mean));
                    worst = std::max(worst, rel(second_moment_x(p, n), oracle.second));
                    if (n >= 2) {
                        worst = std::max(
                            worst, rel(cassini_expectation(p, n - 1), oracle.cassini));
                    } else if (n == 1) {
                        worst = std::max(worst, rel(cassini_h1(p), oracle.cassini));
                    }
                    for (std::size_t k = 0; k <= 4; ++k) {
                        worst = std::max(worst, rel(cross_moment(p, n, k), oracle.cross[k]));
                    }
                }
            }
        }
    }
    rep.add("moments_vs_enumeration_max_rel", worst < 1e-12, worst);
}

void check_moment_growth(Reporter& rep) {
    double worst_mean = 0.0, worst_second = 0.0;
    for (const auto& pr : kPairs) {
        for (double eps : {0.1, 0.5}) {
            const Params p = validate_params(pr[0], pr[1], eps);
            const double lg1 = std::log(lambda_roots(p).lambda1);
            const double gap_mean = log_mean_x(p, 300) - log_mean_x(p, 299);
            worst_mean = std::max(worst_mean, std::fabs(gap_mean - lg1));
            const double rate = second_moment_growth_rate(p);
            const double gap_sec =
                log_second_moment_x(p, 300) - log_second_moment_x(p, 299);
            worst_second = std::max(worst_second, std::fabs(gap_sec - rate));
        }
    }
    rep.add("moment_mean_growth_rate_abs", worst_mean < 1e-6, worst_mean);
    rep.add("moment_second_growth_rate_abs", worst_second < 1e-6, worst_second);
}

void check_mean_monotone(Reporter& rep) {
    bool ok = true;
    for (const auto& pr : kPairs) {
        for (std::size_t n : {4u, 9u, 16u}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double eps = 0.0; eps <= 1.0 + 1e-12; eps += 0.05) {
                const Params p = validate_params(pr[0], pr[1], std::min(eps, 1.0));
                const double m = mean_x(p, n);
                if (m > prev + 1e-13 * std::fabs(prev)) ok = false;
                prev = m;
            }
        }
    }
    rep.add("moment_mean_nonincreasing_in_eps", ok, ok ? 1.0 : 0.0);
}

// ---- chain_spectral -------------------------------------------------------

void check_kernel_rows(Reporter& rep) {
    const Params p = validate_params(0.5, 0.6, 0.2);
    double worst = 0.0;

    for (std::size_t i : {1u, 2u, 5u}) {
        const auto row = forward_kernel_row(p, i, 0.0);
        double sum = 0.0;
        for (const auto& e : row) sum += e.weight;
        worst = std::max(worst, std::fabs(sum - 1.0));
    }
    const auto row1 = forward_kernel_row(p, 1, 1.0);
    worst = std::max(worst, std::fabs(row1[0].weight - 0.2 * 2.0));
    worst = std::max(worst, std::fabs(row1[1].weight - 0.8 * (0.5 / 0.85)));

    const auto rrow3 = reversed_kernel_row(p, 3, 16);
    const bool r3_ok = rrow3.entries.size() == 1 && rrow3.entries[0].col == 2 &&
                       rrow3.entries[0].weight == 1.0;
    const auto rrow1 = reversed_kernel_row(p, 1, 3);
    worst = std::max(worst, std::fabs(rrow1.entries[0].weight - 0.2));
    worst = std::max(worst, std::fabs(rrow1.entries[1].weight - 0.16));
    worst = std::max(worst, std::fabs(rrow1.entries[2].weight - 0.128));
    worst = std::max(worst, std::fabs(rrow1.tail_mass - 0.512));

    worst = std::max(worst, std::fabs(stationary_mass(p, 1) - 0.2));
    worst = std::max(worst, std::fabs(stationary_mass(p, 3) - 0.128));
    double mass = 0.0;
    for (std::size_t k = 1; k <= 400; ++k) mass += stationary_mass(p, k);
    worst = std::max(worst, std::fabs(mass - 1.0));

    rep.add("kernel_row_values_max_abs", r3_ok && worst < 1e-12, worst);
}

void check_perron_basics(Reporter& rep) {
    const Params p = validate_params(0.5, 0.6, 0.2);
    double worst = 0.0;

    KernelSpec fwd{p, KernelKind::Forward, 0.0};
    const PerronResult pr0 =
        perron(truncate_kernel(fwd, 128, TailPolicy::AbsorbLimit));
    worst = std::max(worst, std::fabs(pr0.alpha - 1.0));
    for (double v : pr0.f) worst = std::max(worst, std::fabs(v - 1.0));

    KernelSpec sub{p, KernelKind::SubMarkov, 0.0};
    const PerronResult prs =
        perron(truncate_kernel(sub, 64, TailPolicy::AbsorbLimit));
    worst = std::max(worst, std::fabs(prs.alpha - 0.8));

    // discard underestimates, absorb bounds from the other side; doubling K
    // moves log alpha by < 1e-10 once (1-eps)^K is negligible
    KernelSpec tilted{p, KernelKind::Forward, 1.7};
    const double a_discard =
        perron(truncate_kernel(tilted, 512, TailPolicy::Discard)).alpha;
    const double a_absorb =
        perron(truncate_kernel(tilted, 512, TailPolicy::AbsorbLimit)).alpha;
    const double a_absorb2 =
        perron(truncate_kernel(tilted, 1024, TailPolicy::AbsorbLimit)).alpha;
    const bool bracket_ok = a_discard <= a_absorb + 1e-14;
    worst = std::max(worst, std::fabs(std::log(a_absorb2) - std::log(a_absorb)));

    rep.add("perron_alpha_values", bracket_ok && worst < 1e-10, worst);
}

void check_lambda_properties(Reporter& rep) {
    bool zero_ok = true, jensen_ok = true, convex_ok = true, mono_ok = true,
         small_eps_ok = true, endpoints_ok = true;
    double worst_convex = 0.0;
    const double tol = 1e-9;

    for (const auto& prm : kPairs) {
        const double a = prm[0], b = prm[1];
        const CriticalEps ce = critical_epsilon(a, b, 1e-9);
        // evenly spaced so each interior point can be tested against its chord
        const std::vector<double> ts = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};

        for (double frac : {0.35, 0.75}) {
            const Params p = validate_params(a, b, frac * ce.eps_star);
            // Lambda(0) = 0 exactly through the kernel path
            if (lambda_function(p, 0.0, tol) != 0.0) zero_ok = false;
            const double g = gamma(p, 1e-14).gamma;
            std::vector<double> lam(ts.size());
            for (std::size_t i = 0; i < ts.size(); ++i) {
                lam[i] = lambda_function(p, ts[i], tol);
                // Jensen: Lambda(t) >= -t * gamma
                if (lam[i] < -ts[i] * g - 1e-8) jensen_ok = false;
            }
            for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
                const double mid = lam[i];
                const double chord = 0.5 * (lam[i - 1] + lam[i + 1]);
                worst_convex = std::max(worst_convex, mid - chord);
                if (mid > chord + 1e-8) convex_ok = false;
            }
        }

        // strict monotonicity in eps, the Lipschitz upper bound, and the
        // finite-(p,q) Holder display that the strict claim rests on
        const double e1 = 0.3 * ce.eps_star, e2 = 0.55 * ce.eps_star;
        const Params plo = validate_params(a, b, e1);
        const Params phi_p = validate_params(a, b, e2);
        const double c = b / (a * a + b);
        for (double t : {0.5, 1.0, 2.0}) {
            const double lam_lo = lambda_function(plo, t, tol);
            const double lam_hi = lambda_function(phi_p, t, tol);
            const double d = lam_hi - lam_lo;
            const double hi_bound = t * ((e2 - e1) / e2) * std::log(1.0 + b / (a * a));
            if (!(d > 0.0 && d <= hi_bound + 1e-8)) mono_ok = false;
            for (double pp : {1.5, 2.0, 4.0}) {
                const double qq = pp / (pp - 1.0);
                const double rhs = lambda_function(phi_p, pp * t, tol) / pp -
                                   (e2 - e1) * (1.0 - std::pow(1.0 + c, -qq * t)) / qq;
                if (lam_lo > rhs + 1e-8) mono_ok = false;
            }
        }

        // small-eps upper bound via the first-excursion states
        const ZTable tab = z_table(validate_params(a, b, 0.0), 400);
        const double l1 = lambda_roots(validate_params(a, b, 0.0), 0.0).lambda1;
        const double u = 0.5 * (1.0 + 1.0 / l1);
        std::size_t k0 = 1;
        for (std::size_t k = 1; k + 1 < 200; ++k) {
            if (state_ratio(tab, k) >= u) k0 = k;
            if (k % 2 == 1 && state_ratio(tab, k) < u && k > k0) break;
        }
        const double v = 1.0 / a;
        for (double eps : {0.01, 0.5 / double(k0 + 1)}) {
            if (eps >= 1.0 / double(k0 + 1)) continue;
            const Params p = validate_params(a, b, eps);
            for (double t : {0.5, 1.0, 2.0}) {
                const double bound =
                    std::log(std::pow(u, t) * (1.0 - eps * double(k0 + 1)) +
                             std::pow(v, t) * eps * double(k0 + 1));
                if (lambda_function(p, t, tol) > bound + 1e-8) small_eps_ok = false;
            }
        }

        // analytic endpoints
        const Params p0 = validate_params(a, b, 0.0);
        if (std::fabs(lambda_function(p0, 1.5, tol) + 1.5 * log_lambda1(p0)) > 1e-14) {
            endpoints_ok = false;
        }
        const Params p1 = validate_params(a, b, 1.0);
        if (std::fabs(lambda_function(p1, 1.5, tol) - 1.5 * std::log(1.0 / a)) > 1e-14) {
            endpoints_ok = false;
        }
    }
    rep.add("lambda_zero_at_origin", zero_ok, zero_ok ? 1.0 : 0.0);
    rep.add("lambda_jensen_bound", jensen_ok, jensen_ok ? 1.0 : 0.0);
    rep.add("lambda_convexity_max_violation", convex_ok, worst_convex);
    rep.add("lambda_eps_monotone_two_sided", mono_ok, mono_ok ? 1.0 : 0.0);
    rep.add("lambda_small_eps_bound", small_eps_ok, small_eps_ok ? 1.0 : 0.0);
    rep.add("lambda_analytic_endpoints", endpoints_ok, endpoints_ok ? 1.0 : 0.0);
}

// ---- lyapunov_tail --------------------------------------------------------

void check_gamma_and_critical(Reporter& rep) {
    bool ok = true;
    double worst = 0.0;

    for (const auto& prm : kPairs) {
        const Params p0 = validate_params(prm[0], prm[1], 0.0);
        const GammaResult g0 = gamma(p0, 1e-12);
        worst = std::max(worst, std::fabs(g0.gamma - log_lambda1(p0)));
        const Params p1 = validate_params(prm[0], prm[1], 1.0);
        worst = std::max(worst, std::fabs(gamma(p1, 1e-12).gamma - std::log(prm[0])));

        double prev = std::numeric_limits<double>::infinity();
        for (double eps = 0.0; eps <= 1.0 + 1e-9; eps += 0.02) {
            const Params p = validate_params(prm[0], prm[1], std::min(eps, 1.0));
            const GammaResult g = gamma(p, 1e-12);
            if (!(g.gamma < prev)) ok = false;
            if (!(g.gamma >= std::log(prm[0]) - 1e-12 &&
                  g.gamma <= log_lambda1(p0) + 1e-12)) {
                ok = false;
            }
            if (!(g.tail_bound < 1e-12)) ok = false;
            prev = g.gamma;
        }

        const CriticalEps ce = critical_epsilon(prm[0], prm[1], 1e-10);
        if (!(ce.hi - ce.lo < 1e-8)) ok = false;
        const double glo = gamma(validate_params(prm[0], prm[1], ce.lo), 1e-14).gamma;
        const double ghi = gamma(validate_params(prm[0], prm[1], ce.hi), 1e-14).gamma;
        if (!(glo > 0.0 && ghi < 0.0)) ok = false;
    }

    // frozen high-precision series value for the reference pair
    const CriticalEps ce = critical_epsilon(0.5, 0.6, 1e-10);
    worst = std::max(worst, std::fabs(ce.eps_star - 0.13488999405202669));

    // eps* -> 0 as b decreases to 1-a
    double prev_star = 1.0;
    for (int j = 0; j < 5; ++j) {
        const double b = 0.5 + 0.01 * std::pow(2.0, -j);
        const CriticalEps c = critical_epsilon(0.5, b, 1e-9);
        if (!(c.eps_star < prev_star)) ok = false;
        prev_star = c.eps_star;
    }
    ok = ok && worst < 1e-8;
    rep.add("gamma_endpoints_monotone_critical", ok, worst);
}

void check_tail_dual_method(Reporter& rep) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& prm : kPairs) {
        const CriticalEps ce = critical_epsilon(prm[0], prm[1], 1e-9);
        double prev_s = std::numeric_limits<double>::infinity();
        for (double frac : {0.25, 0.5, 0.75}) {
            const Params p = validate_params(prm[0], prm[1], frac * ce.eps_star);
            const TailExponent se = tail_exponent_series(p, 1e-11);
            const TailExponent sp = tail_exponent_spectral(p, 1e-11);
            worst = std::max(worst, std::fabs(se.s - sp.s));
            if (!(se.s < prev_s)) ok = false;
            prev_s = se.s;
            // cross-check: Lambda at the series root is within 1e-6 of zero
            if (std::fabs(lambda_function(p, se.s, 1e-11)) > 1e-6) ok = false;
        }
        // no root at or above criticality
        bool threw = false;
        try {
            tail_exponent_series(validate_params(prm[0], prm[1],
                                                 std::min(1.2 * ce.eps_star, 0.99)),
                                 1e-10);
        } catch (const NoRootError&) {
            threw = true;
        }
        if (!threw) ok = false;
    }
    ok = ok && worst < 1e-6;
    rep.add("tail_series_vs_spectral_max_abs", ok, worst);
}

void check_three_way_equivalence(Reporter& rep) {
    bool ok = true;
    for (const auto& prm : kPairs) {
        const CriticalEps ce = critical_epsilon(prm[0], prm[1], 1e-10);
        for (double eps = 0.03; eps < 1.0; eps += 0.08) {
            const Params p = validate_params(prm[0], prm[1], eps);
            const bool gamma_pos = gamma(p, 1e-13).gamma > 0.0;
            const bool below_star = eps < ce.eps_star;
            bool root_exists = true;
            try {
                tail_exponent_spectral(p, 1e-8);
            } catch (const NoRootError&) {
                root_exists = false;
            }
            if (gamma_pos != below_star || gamma_pos != root_exists) ok = false;
        }
    }
    rep.add("gamma_epsstar_root_equivalence", ok, ok ? 1.0 : 0.0);
}

void check_phi_and_limits(Reporter& rep) {
    bool phi_ok = true, limits_ok = true;
    const Params p = validate_params(0.5, 0.6, 0.07);
    if (phi_series(p, 0.0) != 1.0) phi_ok = false;
    // convexity in s: second differences nonnegative
    std::vector<double> vals;
    for (double s = 0.0; s <= 6.0; s += 0.25) vals.push_back(phi_series(p, s));
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
        if (vals[i + 1] - 2.0 * vals[i] + vals[i - 1] < -1e-10) phi_ok = false;
    }

    // s at eps*(1 - 2^-j) decreases toward 0; s at eps 2^-j grows
    const CriticalEps ce = critical_epsilon(0.5, 0.6, 1e-10);
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 2; j <= 6; ++j) {
        const double eps = ce.eps_star * (1.0 - std::pow(2.0, -j));
        const TailExponent te = tail_exponent_series(
            validate_params(0.5, 0.6, eps), 1e-10);
        if (!(te.s < prev)) limits_ok = false;
        prev = te.s;
    }
    if (!(prev < 0.1)) limits_ok = false;
    // s grows without bound as eps = 2^-j decreases
    double prev_grow = 0.0;
    for (int j = 4; j <= 7; ++j) {
        const double eps = std::pow(2.0, -j);
        const TailExponent te = tail_exponent_series(
            validate_params(0.5, 0.6, eps), 1e-10);
        if (!(te.s > prev_grow)) limits_ok = false;
        prev_grow = te.s;
    }
    rep.add("phi_normalized_and_convex", phi_ok, phi_ok ? 1.0 : 0.0);
    rep.add("s_monotone_limits", limits_ok, limits_ok ? 1.0 : 0.0);
}

// ---- montecarlo -----------------------------------------------------------

void check_mc_determinism(Reporter& rep, std::uint64_t seed, int threads,
                          simd::Backend backend) {
    SimConfig cfg;
    cfg.params = validate_params(0.5, 0.6, 0.2);
    cfg.n = 4096;
    cfg.m = 257; // odd count exercises the SIMD remainder path
    cfg.seed = seed;
    cfg.threads = 1;
    cfg.backend = backend;

    const SampleSet base = simulate_log_x(cfg);
    SimConfig cfg3 = cfg;
    cfg3.threads = (threads > 1) ? threads : 3;
    const SampleSet multi = simulate_log_x(cfg3);
    SimConfig cfg_s = cfg;
    cfg_s.backend = simd::Backend::Scalar;
    const SampleSet scal = simulate_log_x(cfg_s);

    bool ok = base.values == multi.values && base.values == scal.values;

    const SampleSet wb = simulate_w(cfg);
    SimConfig wcfg3 = cfg3;
    const SampleSet wm = simulate_w(wcfg3);
    SimConfig wcfg_s = cfg_s;
    const SampleSet ws = simulate_w(wcfg_s);
    ok = ok && wb.values == wm.values && wb.values == ws.values &&
         wb.log_values == ws.log_values;
    rep.add("mc_bitwise_determinism", ok, ok ? 1.0 : 0.0);
}

void check_mc_endpoints(Reporter& rep, std::uint64_t seed) {
    double worst = 0.0;
    // eps = 0: log X_n = log Z_n, W_n -> 1/(lambda1 - 1)
    {
        SimConfig cfg;
        cfg.params = validate_params(0.5, 0.6, 0.0);
        cfg.n = 1000;
        cfg.m = 3;
        cfg.seed = seed;
        const SampleSet lx = simulate_log_x(cfg);
        const ZTable tab = z_table(cfg.params, cfg.n);
        for (double v : lx.values) {
            worst = std::max(worst, std::fabs(v - tab.log_values[cfg.n]) /
                                        std::fabs(tab.log_values[cfg.n]));
        }
        const SampleSet w = simulate_w(cfg);
        const double lim = 1.0 / (lambda_roots(cfg.params, 0.0).lambda1 - 1.0);
        for (double v : w.values) {
            worst = std::max(worst, std::fabs(v - lim) / lim);
        }
    }
    // eps = 1: log X_n = n log a, W_n = (1 - a^n)/(a^n (1-a)) (geometric sums)
    {
        SimConfig cfg;
        cfg.params = validate_params(0.5, 0.6, 1.0);
        cfg.n = 64;
        cfg.m = 2;
        cfg.seed = seed;
        const SampleSet lx = simulate_log_x(cfg);
        for (double v : lx.values) {
            worst = std::max(worst,
                             std::fabs(v - double(cfg.n) * std::log(0.5)) /
                                 std::fabs(double(cfg.n) * std::log(0.5)));
        }
        const SampleSet w = simulate_w(cfg);
        const double an = std::pow(0.5, double(cfg.n));
        const double expect = (1.0 - an) / (an * 0.5);
        for (double v : w.values) {
            worst = std::max(worst, std::fabs(v - expect) / expect);
        }
    }
    rep.add("mc_deterministic_endpoints_max_rel", worst < 1e-9, worst);
}

void check_w_definition_equivalence(Reporter& rep, std::uint64_t seed) {
    // Direct-definition oracle: materialize X_k, accumulate sum, divide.
    const Params p = validate_params(0.5, 0.6, 0.2);
    const std::size_t n = 1000, m = 16;
    SimConfig cfg;
    cfg.params = p;
    cfg.n = n;
    cfg.m = m;
    cfg.seed = seed;
    const SampleSet w = simulate_w(cfg);

    double worst = 0.0;
    for (std::size_t traj = 0; traj < m; ++traj) {
        const std::uint64_t key = trajectory_key(seed, traj);
        std::vector<double> x(n + 1);
        x[0] = 1.0;
        x[1] = p.a;
        for (std::size_t j = 1; j < n; ++j) {
            const bool eta = eta_draw(unit_from_word(counter_word(key, j - 1)), p.eps);
            x[j + 1] = p.a * x[j] + (eta ? p.b * x[j - 1] : 0.0);
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += x[k];
        const double direct = sum / x[n];
        worst = std::max(worst, std::fabs(direct - w.values[traj]) / direct);
    }
    rep.add("w_definition_vs_recursion_max_rel", worst < 1e-9, worst);
}

void check_coupling_monotone(Reporter& rep, std::uint64_t seed) {
    // Shared uniforms: per-path log X_n non-increasing in eps.
    const double eps_grid[4] = {0.1, 0.3, 0.6, 0.9};
    const std::size_t n = 5000, m = 32;
    bool ok = true;
    for (std::size_t traj = 0; traj < m; ++traj) {
        const std::uint64_t key = trajectory_key(seed, traj);
        double prev_log = std::numeric_limits<double>::infinity();
        for (double eps : eps_grid) {
            double xm = 1.0, xc = 0.5, scale = 0.0;
            for (std::size_t j = 1; j < n; ++j) {
                const double u = unit_from_word(counter_word(key, j - 1));
                const double xn = 0.5 * xc + (eta_draw(u, eps) ? 0.6 * xm : 0.0);
                xm = xc;
                xc = xn;
                if (xc < 1e-150) {
                    scale += std::log(xc);
                    xm /= xc;
                    xc = 1.0;
                }
            }
            const double lx = scale + std::log(xc);
            if (lx > prev_log + 1e-12) ok = false;
            prev_log = lx;
        }
    }
    rep.add("coupled_logx_monotone_in_eps", ok, ok ? 1.0 : 0.0);
}

void check_mc_gamma_agreement(Reporter& rep, std::uint64_t seed, int threads,
                              simd::Backend backend) {
    double worst_sigma = 0.0;
    for (double eps : {0.1, 0.3, 0.6, 0.9}) {
        const Params p = validate_params(0.5, 0.6, eps);
        SimConfig cfg;
        cfg.params = p;
        cfg.n = 100000;
        cfg.m = 200;
        cfg.seed = seed + std::uint64_t(eps * 1000.0);
        cfg.threads = threads;
        cfg.backend = backend;
        const SampleSet lx = simulate_log_x(cfg);
        double mean = 0.0;
        for (double v : lx.values) mean += v / double(cfg.n);
        mean /= double(cfg.m);
        double var = 0.0;
        for (double v : lx.values) {
            const double d = v / double(cfg.n) - mean;
            var += d * d;
        }
        var /= double(cfg.m - 1);
        const double se = std::sqrt(var / double(cfg.m));
        const double g = gamma(p, 1e-13).gamma;
        worst_sigma = std::max(worst_sigma, std::fabs(mean - g) / se);
    }
    rep.add("mc_gamma_within_3se_max_sigma", worst_sigma < 3.0, worst_sigma);
}

void check_mc_lambda_agreement(Reporter& rep, std::uint64_t seed, int threads,
                               simd::Backend backend) {
    // The plain-average estimator of (1/n) log E[X_n^{-t}] only resolves the
    // limit while m stays well above exp(n * (Lambda(2t) - 2 Lambda(t)))
    // (relative variance of the weighted mean grows at that rate); keep t in
    // that regime and assert the regime condition itself.
    const Params p = validate_params(0.5, 0.6, 0.08);
    const std::size_t n = 2000, m = 100000;
    double worst_sigma = 0.0;
    bool ok = true;
    for (double t : {0.25, 0.5}) {
        const double lam = lambda_function(p, t, 1e-10);
        const double lam2 = lambda_function(p, 2.0 * t, 1e-10);
        if (!(double(n) * (lam2 - 2.0 * lam) < 0.7 * std::log(double(m)))) {
            ok = false;
            continue;
        }
        const Estimate est = lambda_mc(p, t, n, m, seed, threads, backend);
        // O(1/n) bias allowance on top of the 3 SE band
        worst_sigma = std::max(
            worst_sigma,
            std::fabs(est.value - lam) / (est.std_error + 2.0 / double(n)));
    }
    const Estimate zero = lambda_mc(p, 0.0, 500, 100, seed, threads, backend);
    ok = ok && zero.value == 0.0 && zero.std_error == 0.0;
    rep.add("mc_lambda_within_3se_max_sigma", ok && worst_sigma < 3.0, worst_sigma);
}

void check_w_distribution(Reporter& rep, std::uint64_t seed, int threads,
                          simd::Backend backend) {
    const CriticalEps ce = critical_epsilon(0.5, 0.6, 1e-9);
    const Params sub = validate_params(0.5, 0.6, 0.5 * ce.eps_star);
    const std::size_t m = 20000;

    SimConfig cfg;
    cfg.params = sub;
    cfg.m = m;
    cfg.threads = threads;
    cfg.backend = backend;

    cfg.n = 10000;
    cfg.seed = seed + 11;
    const SampleSet w1 = simulate_w(cfg);
    cfg.n = 20000;
    cfg.seed = seed + 12;
    const SampleSet w2 = simulate_w(cfg);
    const double ks = ks_distance(w1.log_values, w2.log_values);
    const double ks_bound = 3.0 * std::sqrt(std::log(2.0 / 0.001) / double(m));

    bool finite_ok = true;
    for (double v : w1.values) finite_ok = finite_ok && std::isfinite(v);

    // divergence at 1.2 eps*: median grows by a factor > 2 from n=1e3 to 1e4
    const Params super =
        validate_params(0.5, 0.6, std::min(1.2 * ce.eps_star, 0.99));
    SimConfig dcfg;
    dcfg.params = super;
    dcfg.m = 4000;
    dcfg.threads = threads;
    dcfg.backend = backend;
    dcfg.seed = seed + 13;
    dcfg.n = 1000;
    const SampleSet d1 = simulate_w(dcfg);
    dcfg.n = 10000;
    const SampleSet d2 = simulate_w(dcfg);
    const double med1 = empirical_quantile(d1.log_values, 0.5);
    const double med2 = empirical_quantile(d2.log_values, 0.5);
    const bool diverges = (med2 - med1) > std::log(2.0);

    rep.add("w_ks_stability_n_vs_2n", finite_ok && ks < ks_bound, ks);
    rep.add("w_divergence_median_growth", diverges, med2 - med1);
}

void check_hill_and_constant(Reporter& rep, std::uint64_t seed, int threads,
                             simd::Backend backend) {
    // Synthetic Pareto oracle: P(W > x) = x^{-2}, x >= 1.
    const std::size_t m = 100000;
    std::vector<double> pareto(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = uniform01(seed + 21, i, 0);
        pareto[i] = std::pow(1.0 - u, -0.5);
    }
    const SampleSet psamp = SampleSet::from_values(SampleKind::W, std::move(pareto));
    const Estimate ph = hill_estimator(psamp, 1000);
    bool ok = std::fabs(ph.value - 2.0) <= 3.0 * ph.std_error;

    const double qs[3] = {0.01, 0.005, 0.002};
    const TailConstant pk = tail_constant_estimate(psamp, 2.0, qs);
    for (double k : pk.k_hat) ok = ok && std::fabs(k - 1.0) < 0.2;

    // Shifted Pareto: P(W > x) = c x^{-2} for x >= sqrt(c).
    const double c = 2.5;
    std::vector<double> shifted(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = uniform01(seed + 22, i, 0);
        shifted[i] = std::sqrt(c / (1.0 - u));
    }
    const TailConstant sk = tail_constant_estimate(
        SampleSet::from_values(SampleKind::W, std::move(shifted)), 2.0, qs);
    ok = ok && std::fabs(sk.pooled_median - c) / c < 0.2;

    // Model samples at mid-range eps: Hill within 15% of the series exponent.
    const CriticalEps ce = critical_epsilon(0.5, 0.6, 1e-9);
    const Params p = validate_params(0.5, 0.6, 0.5 * ce.eps_star);
    const TailExponent te = tail_exponent_series(p, 1e-10);
    SimConfig cfg;
    cfg.params = p;
    cfg.n = 10000;
    cfg.m = 20000;
    cfg.seed = seed + 23;
    cfg.threads = threads;
    cfg.backend = backend;
    const SampleSet w = simulate_w(cfg);
    const std::size_t k = std::size_t(std::pow(double(cfg.m), 0.6));
    const Estimate hill = hill_estimator(w, k);
    const double rel = std::fabs(hill.value - te.s) / te.s;
    ok = ok && rel < 0.15;

    const TailConstant mk = tail_constant_estimate(w, te.s, qs);
    for (double kh : mk.k_hat) {
        ok = ok && std::fabs(kh - mk.pooled_median) / mk.pooled_median < 0.2;
    }
    rep.add("hill_pareto_oracle_and_model", ok, rel);
}

} // namespace

int run_verify(std::uint64_t seed, int threads, simd::Backend backend,
               std::ostream& os) {
    Reporter rep;

    check_z_identities(rep);
    check_roots(rep);
    check_moments_oracle(rep, 12);
    check_moment_growth(rep);
    check_mean_monotone(rep);
    check_kernel_rows(rep);
    check_perron_basics(rep);
    check_lambda_properties(rep);
    check_gamma_and_critical(rep);
    check_tail_dual_method(rep);
    check_three_way_equivalence(rep);
    check_phi_and_limits(rep);
    check_mc_determinism(rep, seed, threads, backend);
    check_mc_endpoints(rep, seed);
    check_w_definition_equivalence(rep, seed);
    check_coupling_monotone(rep, seed);
    check_mc_gamma_agreement(rep, seed, threads, backend);
    check_mc_lambda_agreement(rep, seed, threads, backend);
    check_w_distribution(rep, seed, threads, backend);
    check_hill_and_constant(rep, seed, threads, backend);

    CsvWriter csv(make_manifest("verify", "seed=" + std::to_string(seed), seed),
                  {"check", "status", "detail"});
    for (auto& row : rep.rows) csv.add_row(std::move(row));
    csv.write(os);
    return rep.failures;
}

} // namespace randfib::tools
