#include "frogbound/frog_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "frogbound/rng.hpp"

namespace frogbound {

const char* variant_name(Variant v) {
    return v == Variant::full ? "full" : "oriented";
}

namespace {

constexpr std::size_t kVertexStoreCap = 1 << 22;

// Lazily materialised T_d for the walk simulator. Every vertex carries a
// creation-order-independent 64-bit name (hash of its root path) keying
// the counter-based stream of the frog that sleeps there.
struct WalkTree {
    int d;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<std::uint64_t> name;
    std::vector<std::vector<int>> children;
    std::vector<char> awake;

    explicit WalkTree(int d_) : d(d_) {
        parent.push_back(-1);
        depth.push_back(0);
        name.push_back(0x726f6f74ULL);
        children.emplace_back(d + 1, -1);
        awake.push_back(0);
    }

    bool full() const { return parent.size() >= kVertexStoreCap; }

    // Neighbour slot k in 0..d; slot 0 is the parent for non-root vertices.
    int neighbor(int v, int k) {
        int ci = k;
        if (v != 0) {
            if (k == 0) return parent[v];
            ci = k - 1;
        }
        int c = children[v][ci];
        if (c != -1) return c;
        c = static_cast<int>(parent.size());
        parent.push_back(v);
        depth.push_back(depth[v] + 1);
        name.push_back(mix64(name[v], static_cast<std::uint64_t>(ci) + 1));
        children.emplace_back(d, -1);
        awake.push_back(0);
        children[v][ci] = c;
        return c;
    }
};

}  // namespace

long geometric_lifetime(double u, double p, long cap) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return cap;
    if (u <= 0.0) return cap;
    const double n = std::floor(std::log(u) / std::log(p));
    if (!(n < static_cast<double>(cap))) return cap;
    return static_cast<long>(n);
}

SimOutcome run_once(const SimConfig& config, int replica_index) {
    if (config.max_activations < 1)
        throw std::invalid_argument("run_once: max_activations must be >= 1");
    const int d = config.d;
    const double p = config.p;
    const std::uint64_t replica_key =
        mix64(config.seed, static_cast<std::uint64_t>(replica_index));

    WalkTree tree(d);
    std::deque<int> queue;  // woken but not yet run
    tree.awake[0] = 1;
    queue.push_back(0);

    SimOutcome out;
    out.activations = 1;

    while (!queue.empty()) {
        if (out.activations >= config.max_activations) {
            out.reached_cap = true;
            break;
        }
        if (out.steps >= config.max_steps) break;
        if (tree.full()) {
            out.memory_capped = true;
            break;
        }
        const int origin = queue.front();
        queue.pop_front();

        UniformStream frog(mix64(replica_key, tree.name[origin]));
        const long budget = config.max_steps - out.steps;
        const long lifetime = geometric_lifetime(frog.next_double(), p, budget);

        int cur = origin;
        // Track position relative to subtree(origin): sub_depth >= 0 while
        // inside, -1 outside (re-entry only through origin itself).
        int sub_depth = 0;
        for (long s = 0; s < lifetime; ++s) {
            if (tree.full()) {
                out.memory_capped = true;
                break;
            }
            const double u = frog.next_double();
            const int slot = std::min(static_cast<int>(u * (d + 1)), d);
            const bool to_parent = (cur != 0 && slot == 0);
            cur = tree.neighbor(cur, slot);
            ++out.steps;
            if (sub_depth >= 0) {
                sub_depth += to_parent ? -1 : 1;
            } else if (cur == origin) {
                sub_depth = 0;
            }
            out.frontier_depth = std::max(out.frontier_depth, tree.depth[cur]);

            if (!tree.awake[cur]) {
                const bool qualifies =
                    config.variant == Variant::full || sub_depth >= 1;
                if (qualifies) {
                    tree.awake[cur] = 1;
                    queue.push_back(cur);
                    if (++out.activations >= config.max_activations) {
                        out.reached_cap = true;
                        break;
                    }
                }
            }
        }
        if (out.reached_cap) break;
    }
    return out;
}

namespace {

int thread_cap() {
    if (const char* env = std::getenv("FROGBOUND_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

SurvivalEstimate survival_frequency(const SimConfig& config) {
    if (config.replicas < 1)
        throw std::invalid_argument("survival_frequency: replicas must be >= 1");
    SurvivalEstimate est;
    est.outcomes.resize(config.replicas);

    const int workers = std::min(thread_cap(), config.replicas);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < config.replicas; i = next.fetch_add(1))
            est.outcomes[i] = run_once(config, i);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    long survived = 0;
    for (const SimOutcome& o : est.outcomes) survived += o.reached_cap ? 1 : 0;
    const double n = config.replicas;
    const double phat = survived / n;
    const double z = 1.959963984540054;  // 95%
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    est.freq = phat;
    est.wilson_lo = std::max(0.0, center - half);
    est.wilson_hi = std::min(1.0, center + half);
    return est;
}

std::pair<double, double> estimate_pc(int d, Variant variant, long max_activations,
                                      int replicas, double tol, std::uint64_t seed) {
    if (tol < 0.005)
        throw std::invalid_argument("estimate_pc: tol must be >= 0.005");
    constexpr double kThreshold = 0.01;
    SimConfig config;
    config.d = d;
    config.variant = variant;
    config.max_activations = max_activations;
    config.replicas = replicas;

    double lo = 0.0, hi = 1.0;
    int level = 0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        config.p = mid;
        config.seed = mix64(seed, static_cast<std::uint64_t>(++level));
        const SurvivalEstimate est = survival_frequency(config);
        if (est.freq > kThreshold)
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

double direct_hit_probability_check(int d, double p, int n, long samples,
                                    std::uint64_t seed) {
    if (n < 0 || n > 8)
        throw std::invalid_argument("direct_hit_probability_check: need 0 <= n <= 8");
    if (n == 0) return 1.0;

    // Walk tracked as the path from the root; the target is the all-zero
    // child path of length n. Once the walk is 64 levels past the target
    // depth the return probability is below r^64 < 1e-19, so the sample is
    // scored as a miss (bias far below Monte Carlo noise).
    const int cutoff = n + 64;
    long hits = 0;
    std::vector<int> path;
    for (long s = 0; s < samples; ++s) {
        UniformStream rng(mix64(seed, static_cast<std::uint64_t>(s)));
        const long lifetime = geometric_lifetime(rng.next_double(), p, 1L << 40);
        path.clear();
        bool on_spine = true;  // whole current path consists of 0-children
        bool hit = false;
        for (long t = 0; t < lifetime && !hit; ++t) {
            if (static_cast<int>(path.size()) > cutoff) break;
            const double u = rng.next_double();
            const int slot = std::min(static_cast<int>(u * (d + 1)), d);
            if (!path.empty() && slot == 0) {
                path.pop_back();
            } else {
                path.push_back(path.empty() ? slot : slot - 1);
            }
            on_spine = true;
            for (int c : path)
                if (c != 0) { on_spine = false; break; }
            if (on_spine && static_cast<int>(path.size()) == n) hit = true;
        }
        hits += hit ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

void write_outcomes_csv(std::ostream& os, const std::vector<SimOutcome>& outcomes) {
    os << "replica,reached_cap,activations,steps,frontier_depth\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const SimOutcome& o = outcomes[i];
        os << i << ',' << (o.reached_cap ? 1 : 0) << ',' << o.activations << ','
           << o.steps << ',' << o.frontier_depth << '\n';
    }
}

}  // namespace frogbound
