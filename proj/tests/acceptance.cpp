// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failures. Tolerances are pinned in each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "frogbound/branching.hpp"
#include "frogbound/frog_sim.hpp"
#include "frogbound/model_core.hpp"
#include "frogbound/poly_bounds.hpp"
#include "frogbound/renewal.hpp"

using namespace frogbound;

namespace {

// Published tables chop (not round) the 8th decimal; mirror that.
double trunc7(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    buf[std::strlen(buf) - 2] = '\0';
    return std::strtod(buf, nullptr);
}

// d, lb_pc, lb_pc_hat, ub_pc for d = 2..10, 20, 50, 100.
const double kTable[12][4] = {
    {2, 0.6261364, 0.7103674, 0.7137989},   {3, 0.5835921, 0.6419859, 0.6428580},
    {4, 0.5625890, 0.6071563, 0.6074957},   {5, 0.5500385, 0.5860557, 0.5862210},
    {6, 0.5416859, 0.5719015, 0.5719940},   {7, 0.5357250, 0.5617475, 0.5618043},
    {8, 0.5312564, 0.5541074, 0.5541448},   {9, 0.5277818, 0.5481503, 0.5481761},
    {10, 0.5250027, 0.5433751, 0.5433937},  {20, 0.5125001, 0.5217793, 0.5217815},
    {50, 0.5050000, 0.5087345, 0.5087346},  {100, 0.5025000, 0.5043711, 0.5043711}};

bool c1_table() {
    for (const auto& row : kTable) {
        const BoundsReport rep = bounds_report(static_cast<int>(row[0]));
        const double got[3] = {trunc7(rep.lb_pc), trunc7(rep.lb_pc_hat),
                               trunc7(rep.ub_pc)};
        for (int j = 0; j < 3; ++j)
            if (std::abs(got[j] - row[j + 1]) > 5e-8) return false;
    }
    return true;
}

bool c2_upper_closed_form() {
    for (int d = 2; d <= 10000; ++d) {
        const double a = theorem1_upper(d);
        const double b = p_of_r(r_U(d), d);
        if (std::abs(a - b) > 1e-14 * std::abs(b)) return false;
    }
    return true;
}

bool c3_newton() {
    for (int d = 2; d <= 100; ++d) {
        const Polynomial L = poly_L(d);
        const std::vector<double> t = newton_steps(L, 0.0, 2);
        if (std::abs(t[2] - r_L(d)) > 1e-13 * r_L(d)) return false;
        const RootBracket root = find_root(L, 1e-12, (1.0 - 1e-12) / d, 1e-13);
        for (double ti : t)
            if (ti > root.lo + 1e-13) return false;
    }
    return true;
}

bool c4_sandwich_chain() {
    for (int d = 2; d <= 100; ++d) {
        const RootBracket rootL = find_root(poly_L(d), 1e-12, (1.0 - 1e-12) / d, 1e-13);
        const RootBracket rootU = find_root(poly_U(d), 1e-12, (1.0 - 1e-12) / d, 1e-13);
        const RcBracket rc = solve_rc(d, 1e-11);
        const bool ok = r_L(d) <= rootL.hi && rootL.lo <= rc.hi &&
                        rc.lo <= rootU.hi && rootU.lo <= r_U(d) + 1e-15 &&
                        rc.width() <= 1e-9;
        if (!ok) return false;
    }
    return true;
}

bool c5_renewal_oracle() {
    const int n = 200;
    for (int d : {2, 3, 5}) {
        for (int i = 1; i <= 20; ++i) {
            const double r = i / (21.0 * d);
            const std::vector<double> u = u_sequence(r, n);   // u[k-1] = u_k
            const std::vector<double> f = inter_renewal(r, n); // f[k-1] = f_k
            std::vector<double> conv(n + 1, 0.0);
            conv[0] = 1.0;
            for (int k = 1; k <= n; ++k)
                for (int j = 1; j <= k; ++j) conv[k] += f[j - 1] * conv[k - j];
            for (int k = 1; k <= n; ++k)
                if (std::abs(u[k - 1] - conv[k]) > 1e-12) return false;
        }
    }
    return true;
}

bool c6_product_sandwich() {
    std::mt19937_64 gen(987654321);
    std::uniform_real_distribution<double> rd(1e-9, 0.5);
    std::uniform_int_distribution<int> kd(3, 60);
    for (int trial = 0; trial < 10000; ++trial) {
        const double r = rd(gen);
        const int k = kd(gen);
        long double prod = 1.0L;
        long double rp = 1.0L;
        for (int i = 1; i <= k - 1; ++i) {
            rp *= r;
            prod *= (1.0L - rp);
        }
        const long double lo = 1.0L - r - static_cast<long double>(r) * r;
        const long double hi = (1.0L - r) * (1.0L - static_cast<long double>(r) * r);
        if (!(lo <= prod + 1e-17L && prod <= hi + 1e-17L)) return false;
    }
    return true;
}

bool c7_coupling() {
    for (int d : {2, 3, 4}) {
        for (double p : {0.3, 0.5, 0.7, 0.9}) {
            for (int seed = 0; seed < 200; ++seed) {
                const CoupledResult res = run_coupled(
                    ModelParams(d, p), 10000,
                    static_cast<std::uint64_t>(seed), /*keep_trace=*/false);
                if (res.violations != 0 || res.class_anomalies != 0) return false;
            }
        }
    }
    return true;
}

bool c8_certificate() {
    if (!appendix_positivity_check()) return false;
    const double bound = cauchy_bound(certificate_poly());
    const double printed = 1.0 + 988904672.0 / 211441664.0;
    return std::abs(bound - printed) <= 1e-15 * printed && bound < 6.0;
}

bool c9_monte_carlo() {
    SimConfig config;
    config.d = 2;
    config.variant = Variant::oriented;
    config.max_activations = 10000;
    config.replicas = 1000;
    config.seed = 20250404;

    config.p = 0.65;
    if (survival_frequency(config).freq != 0.0) return false;
    config.p = 0.78;
    return survival_frequency(config).wilson_lo > 0.0;
}

bool c10_spectral_radius() {
    for (int d = 2; d <= 100; ++d) {
        const double rho =
            spectral_radius(moment_matrix(ModelParams(d, theorem1_lower(d))));
        if (std::abs(rho - 1.0) > 1e-12) return false;
    }
    return true;
}

bool c11_monotonicity() {
    for (int d = 2; d <= 10000; ++d)
        if (!monotonicity_gap(d, 1.75)) return false;
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*check)();
        double limit_seconds;
    };
    const Criterion criteria[] = {
        {"01 table reproduction (36 cells, 5e-8)", c1_table, 1.0},
        {"02 upper bound closed form (1e-14 rel, d<=1e4)", c2_upper_closed_form, 1.0},
        {"03 two Newton steps reach r_L and undershoot", c3_newton, 1.0},
        {"04 sandwich chain r_L<=root(L)<=r_c<=root(U)<=r_U", c4_sandwich_chain, 30.0},
        {"05 renewal recursion vs convolution oracle (1e-12)", c5_renewal_oracle, 10.0},
        {"06 product sandwich, 1e4 random (r,k)", c6_product_sandwich, 1.0},
        {"07 coupling dominance, 200 seeds x 12 configs", c7_coupling, 120.0},
        {"08 integer certificate + Cauchy bound < 6", c8_certificate, 1.0},
        {"09 Monte Carlo brackets the oriented transition", c9_monte_carlo, 300.0},
        {"10 spectral radius 1 at the lower bound (1e-12)", c10_spectral_radius, 1.0},
        {"11 monotonicity gap at a=1.75, d<=1e4", c11_monotonicity, 5.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.check();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  (exception: %s)\n", e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (secs > c.limit_seconds) ok = false;
        std::printf("%s %s [%.2fs, limit %.0fs]\n", ok ? "PASS" : "FAIL", c.name,
                    secs, c.limit_seconds);
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    return failures;
}
