#pragma once

#include <stdexcept>

namespace frogbound {

// Tree degree d (every vertex has d+1 neighbours) and lifetime parameter p.
struct ModelParams {
    int d;
    double p;

    ModelParams(int d_, double p_) : d(d_), p(p_) {
        if (d < 2) throw std::invalid_argument("ModelParams: d must be >= 2");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("ModelParams: p must be in [0,1]");
    }
};

// Return probability r = r(p,d), constrained to [0, 1/d].
struct ReturnProb {
    double r;
    int d;

    ReturnProb(double r_, int d_) : r(r_), d(d_) {
        if (d < 2) throw std::invalid_argument("ReturnProb: d must be >= 2");
        if (!(r >= 0.0 && r <= 1.0 / d + 1e-15))
            throw std::invalid_argument("ReturnProb: r must be in [0, 1/d]");
    }
};

// Per-d record of this work's bounds plus the four literature bounds on p_c.
// Upper bounds above 1 are clamped to 1 and flagged vacuous.
struct BoundsReport {
    int d = 0;
    double lb_pc = 0.0;       // two-type branching lower bound
    double lb_pc_hat = 0.0;   // p_of_r(r_L)
    double ub_pc = 0.0;       // p_of_r(r_U), also bounds p_c
    double amp2002_lb = 0.0;
    double amp2002_ub = 0.0;
    double lmp2005_ub = 0.0;
    double gms2018_ub = 0.0;
    double l2019_ub = 0.0;
    bool amp2002_ub_vacuous = false;
    bool lmp2005_ub_vacuous = false;
    bool gms2018_ub_vacuous = false;
    bool l2019_ub_vacuous = false;
};

// p -> r bijection on [0,1]; the p=0 case is the continuity limit.
ReturnProb r_of_p(const ModelParams& params);

// Exact inverse: p = (d+1) r / (1 + d r^2).
double p_of_r(const ReturnProb& rp);
double p_of_r(double r, double d);

// Lower bound on p_c: 2(d+1) / (sqrt(4d^2+4d-3) + 2d+1).
// Takes a real degree so the closed form can be compared at non-integer d.
double theorem1_lower(double d);

// Upper bound on p_c (equals p_of_r(r_U(d))).
double theorem1_upper(double d);

// Fills the four literature bounds of the report (plus d); the remaining
// fields are left at zero.
BoundsReport literature_bounds(int d);

// Complete report: literature bounds plus this work's three columns.
BoundsReport bounds_report(int d);

// True iff the lower bound at degree d exceeds the upper bound at real
// degree a*d.
bool monotonicity_gap(int d, double a);

}  // namespace frogbound
