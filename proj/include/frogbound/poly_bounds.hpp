#pragma once

#include <vector>

namespace frogbound {

// Dense univariate polynomial, coefficients in ascending order.
class Polynomial {
public:
    explicit Polynomial(std::vector<double> coefficients);

    double operator()(double x) const;  // Horner evaluation
    Polynomial derivative() const;

    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coef_; }

private:
    std::vector<double> coef_;
};

struct RootBracket {
    double lo;
    double hi;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// L(r) = -d^3 r^6 + d^3 r^5 + d^2 r^3 - 2 d r + 1
Polynomial poly_L(int d);

// U(r) = d^3 r^5 + d^2 r^3 - 2 d r + 1
Polynomial poly_U(int d);

// Quartic d r^4 - d(d+1) r^3 + 2 d r - 1 whose root in (0,1/d) gives the
// 2019 refinement of the upper bound.
Polynomial poly_l2019(int d);

// Sandwich functions: closed-form bounds on the activation series,
// singular at d r = 1.
double f_inf(double r, double d);
double f_sup(double r, double d);

// Bisection with a sign-change precondition; returns an enclosure of
// width <= tol. Throws std::invalid_argument when poly(lo)*poly(hi) > 0.
RootBracket find_root(const Polynomial& poly, double lo, double hi, double tol);

// Newton-Raphson iterates t_0..t_steps. Throws std::domain_error when the
// derivative vanishes along the trajectory.
std::vector<double> newton_steps(const Polynomial& poly, double t0, int steps);

// Closed forms bounding the roots of L and U.
double r_L(double d);
double r_U(double d);

// 1 + max_i |a_i / a_n|, bounding the modulus of every root.
double cauchy_bound(const Polynomial& poly);

// Exact-integer evaluation of the degree-14 certificate polynomial at
// d = 2..6; true iff all values are positive. Together with
// cauchy_bound(certificate) < 6 this certifies positivity for all d >= 2.
bool appendix_positivity_check();

// The degree-14 certificate polynomial (double coefficients, for
// cauchy_bound).
Polynomial certificate_poly();

// Returns sqrt(1/(5d)), below which U is strictly decreasing. Throws
// std::logic_error if r_U(d) or 1-sqrt((d-1)/d) fails to sit below it.
double u_monotone_window(int d);

}  // namespace frogbound
