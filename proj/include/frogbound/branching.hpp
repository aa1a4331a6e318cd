#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "frogbound/model_core.hpp"

namespace frogbound {

// Offspring outcome (i,j) = (number of type-1 children, number of type-2
// children) of a moving particle.
enum class Outcome : std::uint8_t {
    none,       // (0,0) the particle just dies
    one_type1,  // (1,0)
    one_type2,  // (0,1)
    two_type1,  // (2,0)
};

const char* outcome_name(Outcome o);

// Probability mass over the four outcomes.
struct OffspringLaw {
    double p00;
    double p10;
    double p01;
    double p20;

    double prob(Outcome o) const;
    void validate() const;  // throws std::logic_error on a bad mass
};

// Ordered half-open cells covering [0,1] (last cell closed), one per
// nonzero-probability outcome, laid out as (0,1), (1,0), (2,0), (0,0).
struct IntervalCell {
    Outcome label;
    double lo;
    double hi;
};

struct IntervalPartition {
    std::vector<IntervalCell> cells;
};

// Offspring law of a type-1 / type-2 particle of the dominating two-type
// branching process.
OffspringLaw ttbp_law(int type, const ModelParams& params);

// Offspring law of a frog whose visited neighbourhood is summarised by
// (a,b): a >= 1, a+b >= 2, a+b <= d+1.
OffspringLaw fmbp_law(int a, int b, const ModelParams& params);

IntervalPartition build_partition(const OffspringLaw& law);

// Label of the unique cell containing u.
Outcome sample_offspring(const IntervalPartition& partition, double u);

// 2x2 first-moment matrix m[parent_type][child_type], 0-indexed.
struct MomentMatrix {
    double m[2][2];
};

MomentMatrix moment_matrix(const ModelParams& params);

// Largest eigenvalue, via the quadratic characteristic formula.
double spectral_radius(const MomentMatrix& m);

// Lazily materialised homogeneous tree T_d with visited flags. Every
// vertex has d+1 neighbour slots; the root's are all children, any other
// vertex has slot 0 = parent.
class ActivationTree {
public:
    explicit ActivationTree(int d);

    int d() const { return d_; }
    int root() const { return 0; }
    int size() const { return static_cast<int>(parent_.size()); }
    int visited_count() const { return visited_count_; }

    // Neighbour in slot k (0 <= k <= d), creating it on first access.
    int neighbor(int v, int k);

    // Neighbour in slot k without creating it; -1 when not yet
    // materialised (necessarily unvisited).
    int existing_neighbor(int v, int k) const;

    bool visited(int v) const { return visited_[v]; }
    int visited_neighbor_count(int v) const { return visited_nb_[v]; }

    // A tip has exactly d unvisited neighbours.
    bool is_tip(int v) const { return visited_[v] && visited_nb_[v] == 1; }

    // Marks v visited and bumps neighbour counts; returns the visited
    // neighbours whose count just reached 2 (they stop being tips).
    std::vector<int> mark_visited(int v);

private:
    int d_;
    int visited_count_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<char> visited_;
    std::vector<int> visited_nb_;
};

// Geometry-derived class of an active frog: type 1 iff its vertex is a
// tip; a counts visited non-tip neighbours, b visited tip neighbours.
struct FrogClass {
    int type;
    int a;
    int b;
    bool constraints_ok;  // a >= 1 and a+b >= 2 for type 2; (1,0) for type 1
};

FrogClass classify_frog(const ActivationTree& tree, int v);

struct CoupledStep {
    long t;
    long n_tt1;
    long n_tt2;
    long n_fm1;
    long n_fm2;
    int chosen_type;  // 0 once the frog side is extinct
    int a;
    int b;
    double u;
    Outcome outcome;
};

struct CoupledResult {
    std::vector<CoupledStep> trace;  // empty unless keep_trace
    long steps = 0;
    long violations = 0;         // dominance inequality failures
    long class_anomalies = 0;    // (a,b) constraint failures at selection
    bool seeded = false;         // reached |T| = d+3
    int seed_retries = 0;
    bool both_extinct = false;
    long final_tt1 = 0, final_tt2 = 0, final_fm1 = 0, final_fm2 = 0;
};

// Runs the frog-model branching process coupled to the two-type process
// through shared uniforms, checking the dominance pair every step.
CoupledResult run_coupled(const ModelParams& params, long max_steps,
                          std::uint64_t seed, bool keep_trace = true);

// One CSV row per step: t,n_tt1,n_tt2,n_fm1,n_fm2,chosen_type,a,b,u,outcome.
void write_trace_csv(std::ostream& os, const CoupledResult& result);

}  // namespace frogbound
