#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace frogbound {

enum class Variant : std::uint8_t { full, oriented };

const char* variant_name(Variant v);

struct SimConfig {
    int d = 2;
    double p = 0.5;
    Variant variant = Variant::full;
    long max_activations = 10000;   // survival proxy cap A
    long max_steps = 100000000;     // global walk-step budget per replica
    int replicas = 1;
    std::uint64_t seed = 0;
};

struct SimOutcome {
    bool reached_cap = false;
    long activations = 0;
    long steps = 0;
    int frontier_depth = 0;
    bool memory_capped = false;
};

struct SurvivalEstimate {
    double freq = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::vector<SimOutcome> outcomes;
};

// Geometric(1-p) lifetime on {0,1,2,...} by inverse transform of u, so
// the lifetime is non-decreasing in p for a shared uniform; capped at cap.
long geometric_lifetime(double u, double p, long cap);

// One seeded replica of the frog model on T_d. Deterministic in
// (config.seed, replica_index); each frog's walk is driven by a
// counter-based stream keyed on its home vertex, so the same frog makes
// the same moves for every p sharing the seed.
SimOutcome run_once(const SimConfig& config, int replica_index);

// Fraction of replicas reaching the activation cap, with a 95% Wilson
// score interval. Replicas run in parallel up to FROGBOUND_THREADS.
SurvivalEstimate survival_frequency(const SimConfig& config);

// Empirical bisection bracket on the critical p (heuristic point
// estimate; the finite activation cap biases it).
std::pair<double, double> estimate_pc(int d, Variant variant, long max_activations,
                                      int replicas, double tol, std::uint64_t seed);

// Monte Carlo frequency that a single frog starting at the root visits a
// fixed vertex at distance n along the orientation order.
double direct_hit_probability_check(int d, double p, int n, long samples,
                                    std::uint64_t seed);

// CSV rows: replica,reached_cap,activations,steps,frontier_depth.
void write_outcomes_csv(std::ostream& os, const std::vector<SimOutcome>& outcomes);

}  // namespace frogbound
