#include "frogbound/branching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "frogbound/rng.hpp"

namespace frogbound {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::none: return "0,0";
        case Outcome::one_type1: return "1,0";
        case Outcome::one_type2: return "0,1";
        case Outcome::two_type1: return "2,0";
    }
    return "?";
}

double OffspringLaw::prob(Outcome o) const {
    switch (o) {
        case Outcome::none: return p00;
        case Outcome::one_type1: return p10;
        case Outcome::one_type2: return p01;
        case Outcome::two_type1: return p20;
    }
    return 0.0;
}

void OffspringLaw::validate() const {
    for (double q : {p00, p10, p01, p20})
        if (!(q >= 0.0 && q <= 1.0))
            throw std::logic_error("OffspringLaw: probability outside [0,1]");
    if (std::abs(p00 + p10 + p01 + p20 - 1.0) > 1e-12)
        throw std::logic_error("OffspringLaw: probabilities do not sum to 1");
}

OffspringLaw ttbp_law(int type, const ModelParams& params) {
    const double p = params.p;
    const double d = params.d;
    OffspringLaw law{};
    if (type == 1) {
        law = {1.0 - p, 0.0, p / (d + 1), p * d / (d + 1)};
    } else if (type == 2) {
        law = {1.0 - p, p / (d + 1), p / (d + 1), p * (d - 1) / (d + 1)};
    } else {
        throw std::invalid_argument("ttbp_law: type must be 1 or 2");
    }
    law.validate();
    return law;
}

OffspringLaw fmbp_law(int a, int b, const ModelParams& params) {
    if (a < 1 || a + b < 2 || a + b > params.d + 1)
        throw std::invalid_argument("fmbp_law: need a >= 1, a+b >= 2, a+b <= d+1");
    const double p = params.p;
    const double d = params.d;
    OffspringLaw law{1.0 - p, p * b / (d + 1), p * a / (d + 1),
                     p * (d + 1 - a - b) / (d + 1)};
    law.validate();
    return law;
}

IntervalPartition build_partition(const OffspringLaw& law) {
    law.validate();
    IntervalPartition part;
    double lo = 0.0;
    for (Outcome o : {Outcome::one_type2, Outcome::one_type1, Outcome::two_type1,
                      Outcome::none}) {
        const double w = law.prob(o);
        if (w == 0.0) continue;
        part.cells.push_back({o, lo, lo + w});
        lo += w;
    }
    part.cells.back().hi = 1.0;  // absorb rounding; last cell is closed
    return part;
}

Outcome sample_offspring(const IntervalPartition& partition, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("sample_offspring: u must be in [0,1]");
    for (const IntervalCell& c : partition.cells)
        if (u < c.hi) return c.label;
    return partition.cells.back().label;  // u == 1.0, closed last cell
}

MomentMatrix moment_matrix(const ModelParams& params) {
    const double p = params.p;
    const double d = params.d;
    return {{{2.0 * d * p / (d + 1), p / (d + 1)},
             {(2.0 * d - 1.0) * p / (d + 1), p / (d + 1)}}};
}

double spectral_radius(const MomentMatrix& mm) {
    const double tr = mm.m[0][0] + mm.m[1][1];
    const double det = mm.m[0][0] * mm.m[1][1] - mm.m[0][1] * mm.m[1][0];
    const double disc = tr * tr - 4.0 * det;
    // Non-negative matrices have a real dominant eigenvalue.
    return 0.5 * (tr + std::sqrt(std::max(0.0, disc)));
}

ActivationTree::ActivationTree(int d) : d_(d) {
    if (d < 2) throw std::invalid_argument("ActivationTree: d must be >= 2");
    parent_.push_back(-1);
    children_.emplace_back(d + 1, -1);  // root has d+1 children
    visited_.push_back(0);
    visited_nb_.push_back(0);
}

int ActivationTree::existing_neighbor(int v, int k) const {
    if (k < 0 || k > d_) throw std::out_of_range("ActivationTree: slot out of range");
    if (v != 0) {
        if (k == 0) return parent_[v];
        --k;
    }
    return children_[v][k];
}

int ActivationTree::neighbor(int v, int k) {
    const int ex = existing_neighbor(v, k);
    if (ex != -1) return ex;
    const int c = static_cast<int>(parent_.size());
    parent_.push_back(v);
    children_.emplace_back(d_, -1);  // non-root: d children + parent slot
    visited_.push_back(0);
    visited_nb_.push_back(visited_[v] ? 1 : 0);
    children_[v][v == 0 ? k : k - 1] = c;
    return c;
}

std::vector<int> ActivationTree::mark_visited(int v) {
    if (visited_[v]) return {};
    visited_[v] = 1;
    ++visited_count_;
    std::vector<int> flipped;
    for (int k = 0; k <= d_; ++k) {
        const int x = existing_neighbor(v, k);
        if (x == -1) continue;
        if (++visited_nb_[x] == 2 && visited_[x]) flipped.push_back(x);
    }
    return flipped;
}

FrogClass classify_frog(const ActivationTree& tree, int v) {
    if (!tree.visited(v)) throw std::invalid_argument("classify_frog: v not in visited set");
    if (tree.is_tip(v)) {
        // A tip's single visited neighbour is non-tip once |T| >= d+3.
        bool ok = true;
        for (int k = 0; k <= tree.d(); ++k) {
            const int x = tree.existing_neighbor(v, k);
            if (x != -1 && tree.visited(x) && tree.is_tip(x)) ok = false;
        }
        return {1, 1, 0, ok};
    }
    int a = 0, b = 0;
    for (int k = 0; k <= tree.d(); ++k) {
        const int x = tree.existing_neighbor(v, k);
        if (x == -1 || !tree.visited(x)) continue;
        if (tree.is_tip(x))
            ++b;
        else
            ++a;
    }
    return {2, a, b, a >= 1 && a + b >= 2};
}

namespace {

// FMBP side of the coupling: visited tree plus a FIFO queue of active
// frogs, with the type-1/type-2 counts maintained incrementally.
class FrogWorld {
public:
    explicit FrogWorld(int d) : tree_(d) { tree_.mark_visited(tree_.root()); }

    ActivationTree& tree() { return tree_; }
    bool extinct() const { return frogs_.empty(); }
    long n1() const { return n1_; }
    long n2() const { return n2_; }

    void push_frog(int v) {
        frogs_.push_back(v);
        ++frogs_at_[v];
        (tree_.is_tip(v) ? n1_ : n2_)++;
    }

    int pop_frog() {
        const int v = frogs_.front();
        frogs_.pop_front();
        --frogs_at_[v];
        (tree_.is_tip(v) ? n1_ : n2_)--;
        return v;
    }

    void visit(int w) {
        for (int x : tree_.mark_visited(w)) {
            // x just stopped being a tip; its idle frogs change type.
            const auto it = frogs_at_.find(x);
            if (it == frogs_at_.end()) continue;
            n1_ -= it->second;
            n2_ += it->second;
        }
    }

    // Moves the already-popped frog from v through neighbour slot `slot`;
    // returns the outcome label of the resulting births.
    Outcome move_frog(int v, int slot) {
        const int w = tree_.neighbor(v, slot);
        if (!tree_.visited(w)) {
            visit(w);  // fresh vertex: w is a tip, mover plus woken frog
            push_frog(w);
            push_frog(w);
            return Outcome::two_type1;
        }
        push_frog(w);
        return tree_.is_tip(w) ? Outcome::one_type1 : Outcome::one_type2;
    }

private:
    ActivationTree tree_;
    std::deque<int> frogs_;
    std::unordered_map<int, int> frogs_at_;
    long n1_ = 0;
    long n2_ = 0;
};

struct TtbpCounts {
    long n1 = 0;
    long n2 = 0;

    // Applies the offspring of one particle of `particle_type` drawn from
    // the matching partition with uniform u.
    Outcome step(int particle_type, double u, double p, int d) {
        Outcome out;
        if (particle_type == 2) {
            if (u < p / (d + 1))
                out = Outcome::one_type2;
            else if (u < 2.0 * p / (d + 1))
                out = Outcome::one_type1;
            else if (u < p)
                out = Outcome::two_type1;
            else
                out = Outcome::none;
            --n2;
        } else {
            if (u < p / (d + 1))
                out = Outcome::one_type2;
            else if (u < p)
                out = Outcome::two_type1;
            else
                out = Outcome::none;
            --n1;
        }
        switch (out) {
            case Outcome::one_type1: n1 += 1; break;
            case Outcome::one_type2: n2 += 1; break;
            case Outcome::two_type1: n1 += 2; break;
            case Outcome::none: break;
        }
        return out;
    }
};

constexpr int kSeedRetryCap = 100000;

}  // namespace

CoupledResult run_coupled(const ModelParams& params, long max_steps,
                          std::uint64_t seed, bool keep_trace) {
    const int d = params.d;
    const double p = params.p;
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("run_coupled: p must be in (0,1)");

    UniformStream rng(mix64(seed, 0x66726f67ULL));
    CoupledResult res;

    // Seed the frog model until |T| = d+3, restarting on extinction.
    std::unique_ptr<FrogWorld> world;
    for (int retry = 0; retry < kSeedRetryCap; ++retry) {
        world = std::make_unique<FrogWorld>(d);
        world->push_frog(0);
        while (world->tree().visited_count() < d + 3 && !world->extinct()) {
            const double u = rng.next_double();
            const int v = world->pop_frog();
            if (u >= p) continue;
            const int slot = std::min(static_cast<int>(u / p * (d + 1)), d);
            world->move_frog(v, slot);
        }
        if (world->tree().visited_count() == d + 3 && !world->extinct()) {
            res.seeded = true;
            res.seed_retries = retry;
            break;
        }
    }
    if (!res.seeded) {
        res.seed_retries = kSeedRetryCap;
        return res;
    }

    TtbpCounts tt{world->n1(), world->n2()};

    for (long t = 1; t <= max_steps; ++t) {
        if (world->extinct() && tt.n1 + tt.n2 == 0) {
            res.both_extinct = true;
            break;
        }
        const double u = rng.next_double();
        CoupledStep step{};
        step.t = t;
        step.u = u;

        if (!world->extinct()) {
            const int v = world->pop_frog();
            const FrogClass cls = classify_frog(world->tree(), v);
            if (!cls.constraints_ok) ++res.class_anomalies;
            step.chosen_type = cls.type;
            step.a = cls.a;
            step.b = cls.b;

            // Frog-side update: u < p maps to a uniform neighbour, slots
            // ordered visited-non-tip, visited-tip, unvisited so the cell
            // layout of the coupling partition is realised geometrically.
            Outcome fm_out = Outcome::none;
            if (u < p) {
                const int idx = std::min(static_cast<int>(u / p * (d + 1)), d);
                int nontip = 0, tip = 0;
                std::vector<int> nontip_slots, tip_slots, unvis_slots;
                for (int k = 0; k <= d; ++k) {
                    const int x = world->tree().existing_neighbor(v, k);
                    if (x == -1 || !world->tree().visited(x))
                        unvis_slots.push_back(k);
                    else if (world->tree().is_tip(x))
                        tip_slots.push_back(k);
                    else
                        nontip_slots.push_back(k);
                }
                nontip = static_cast<int>(nontip_slots.size());
                tip = static_cast<int>(tip_slots.size());
                int slot;
                if (idx < nontip)
                    slot = nontip_slots[idx];
                else if (idx < nontip + tip)
                    slot = tip_slots[idx - nontip];
                else
                    slot = unvis_slots[idx - nontip - tip];
                fm_out = world->move_frog(v, slot);
            }
            step.outcome = fm_out;

            // Branching side, same uniform: match the frog's type, fall
            // back to type 1 when the type-2 pool is empty.
            int tt_type = (cls.type == 2 && tt.n2 > 0) ? 2 : 1;
            if (tt_type == 1 && tt.n1 == 0) tt_type = tt.n2 > 0 ? 2 : 0;
            if (tt_type != 0) tt.step(tt_type, u, p, d);
        } else {
            // Frogs extinct; run the branching process down alone.
            const int tt_type = tt.n2 > 0 ? 2 : 1;
            step.outcome = tt.step(tt_type, u, p, d);
            step.chosen_type = 0;
        }

        step.n_tt1 = tt.n1;
        step.n_tt2 = tt.n2;
        step.n_fm1 = world->n1();
        step.n_fm2 = world->n2();
        if (!(step.n_tt1 >= step.n_fm1 &&
              step.n_tt1 + step.n_tt2 >= step.n_fm1 + step.n_fm2))
            ++res.violations;
        res.steps = t;
        if (keep_trace) res.trace.push_back(step);
    }

    res.final_tt1 = tt.n1;
    res.final_tt2 = tt.n2;
    res.final_fm1 = world->n1();
    res.final_fm2 = world->n2();
    if (world->extinct() && tt.n1 + tt.n2 == 0) res.both_extinct = true;
    return res;
}

void write_trace_csv(std::ostream& os, const CoupledResult& result) {
    os << "t,n_tt1,n_tt2,n_fm1,n_fm2,chosen_type,a,b,u,outcome\n";
    char buf[64];
    for (const CoupledStep& s : result.trace) {
        std::snprintf(buf, sizeof(buf), "%.17g", s.u);
        os << s.t << ',' << s.n_tt1 << ',' << s.n_tt2 << ',' << s.n_fm1 << ','
           << s.n_fm2 << ',' << s.chosen_type << ',' << s.a << ',' << s.b << ','
           << buf << ",\"" << outcome_name(s.outcome) << "\"\n";
    }
}

}  // namespace frogbound
