#pragma once

#include <vector>

namespace frogbound {

// Rigorous enclosure of the activation series S(r,d) = sum_k (dr)^k
// prod_{i<k}(1 - r^i).
struct SeriesBracket {
    double lower;
    double upper;
    int terms_used;
};

struct RcBracket {
    double lo;
    double hi;
    int terms_used;     // series terms at the final midpoint
    bool tol_reached;   // false when double precision ran out first
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// Inter-renewal law f_k = r^k prod_{i=1}^{k-1}(1 - r^i), k = 1..kmax.
std::vector<double> inter_renewal(double r, int kmax);

// Renewal probabilities u_1..u_n via the recursion
//   u_k = r^k prod_{i<k}(1-r^i) + sum_{j<k} r^{k-j} u_j prod_{l<k-j}(1-r^l).
// Plain doubles; u_k underflows for large n, see scaled_u_sequence.
std::vector<double> u_sequence(double r, int n);

// d^k u_k for k = 1..n. Bounded at criticality, so usable for large n.
std::vector<double> scaled_u_sequence(double r, int d, int n);

// Partial sum plus a tail enclosure from the product sandwich
//   1 - r - r^2 <= prod_{i<k}(1-r^i) <= (1-r)(1-r^2).
// Requires d*r < 1; throws std::domain_error otherwise.
SeriesBracket series_bracket(double r, int d, double tol);

// Bisection on r -> S(r,d), maintaining S(lo).upper < 1 < S(hi).lower.
RcBracket solve_rc(int d, double tol);

// u_n^{1/n}, computed in log space (diagnostic; converges slowly).
double u_infty_estimate(double r, int d, int n);

}  // namespace frogbound
