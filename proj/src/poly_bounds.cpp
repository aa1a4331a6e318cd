#include "frogbound/poly_bounds.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace frogbound {

Polynomial::Polynomial(std::vector<double> coefficients) : coef_(std::move(coefficients)) {
    if (coef_.empty() || coef_.back() == 0.0)
        throw std::invalid_argument("Polynomial: leading coefficient must be nonzero");
}

double Polynomial::operator()(double x) const {
    double y = 0.0;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) y = y * x + *it;
    return y;
}

Polynomial Polynomial::derivative() const {
    if (coef_.size() == 1)
        throw std::logic_error("Polynomial::derivative: constant polynomial");
    std::vector<double> dc(coef_.size() - 1);
    for (std::size_t i = 1; i < coef_.size(); ++i)
        dc[i - 1] = static_cast<double>(i) * coef_[i];
    return Polynomial(std::move(dc));
}

Polynomial poly_L(int d) {
    const double dd = d;
    const double d2 = dd * dd, d3 = d2 * dd;
    return Polynomial({1.0, -2.0 * dd, 0.0, d2, 0.0, d3, -d3});
}

Polynomial poly_U(int d) {
    const double dd = d;
    const double d2 = dd * dd, d3 = d2 * dd;
    return Polynomial({1.0, -2.0 * dd, 0.0, d2, 0.0, d3});
}

Polynomial poly_l2019(int d) {
    const double dd = d;
    return Polynomial({-1.0, 2.0 * dd, 0.0, -dd * (dd + 1), dd});
}

namespace {

// Geometric tail sum_{k>=3} (dr)^k = -d^3 r^3 / (dr - 1) for dr < 1.
double geometric_tail(double r, double d) {
    const double dr = d * r;
    if (dr >= 1.0) throw std::domain_error("sandwich function singular at d*r >= 1");
    return -(d * d * d * r * r * r) / (dr - 1.0);
}

}  // namespace

double f_inf(double r, double d) {
    return d * r + d * d * (1.0 - r) * r * r + (1.0 - r - r * r) * geometric_tail(r, d);
}

double f_sup(double r, double d) {
    return d * r + d * d * (1.0 - r) * r * r +
           (1.0 - r) * (1.0 - r * r) * geometric_tail(r, d);
}

RootBracket find_root(const Polynomial& poly, double lo, double hi, double tol) {
    double flo = poly(lo);
    double fhi = poly(hi);
    if (flo == 0.0) return {lo, lo};
    if (fhi == 0.0) return {hi, hi};
    if ((flo > 0) == (fhi > 0))
        throw std::invalid_argument("find_root: no sign change on [lo, hi]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // double precision exhausted
        const double fm = poly(mid);
        if (fm == 0.0) return {mid, mid};
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

std::vector<double> newton_steps(const Polynomial& poly, double t0, int steps) {
    const Polynomial dpoly = poly.derivative();
    std::vector<double> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(t0);
    double t = t0;
    for (int n = 0; n < steps; ++n) {
        const double slope = dpoly(t);
        if (slope == 0.0) throw std::domain_error("newton_steps: derivative vanished");
        t -= poly(t) / slope;
        trajectory.push_back(t);
    }
    return trajectory;
}

double r_L(double d) {
    const double d2 = d * d, d3 = d2 * d, d4 = d3 * d;
    return (5.0 - 8.0 * d - 16.0 * d2 + 64.0 * d3) /
           (12.0 * d - 20.0 * d2 - 48.0 * d3 + 128.0 * d4);
}

double r_U(double d) {
    return (2.0 - 1.0 / (14.0 * d * d) - 4.0 * d) / (5.0 * d - 8.0 * d * d);
}

double cauchy_bound(const Polynomial& poly) {
    const auto& c = poly.coefficients();
    const double lead = std::abs(c.back());
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        m = std::max(m, std::abs(c[i]) / lead);
    return 1.0 + m;
}

namespace {

// Ascending coefficients of the degree-14 certificate polynomial.
constexpr std::array<std::int64_t, 15> kCertificateCoef = {
    -1,         0,          140,       -280,       -7840,
    26460,      203840,     -918064,   -2579360,   14993216,
    72342816,   -496642048, 988904672, -801511424, 211441664,
};

__int128 eval_certificate_exact(int d) {
    __int128 y = 0;
    for (int i = 14; i >= 0; --i) y = y * d + kCertificateCoef[i];
    return y;
}

}  // namespace

Polynomial certificate_poly() {
    std::vector<double> c(kCertificateCoef.begin(), kCertificateCoef.end());
    return Polynomial(std::move(c));
}

bool appendix_positivity_check() {
    for (int d = 2; d <= 6; ++d)
        if (eval_certificate_exact(d) <= 0) return false;
    return cauchy_bound(certificate_poly()) < 6.0;
}

double u_monotone_window(int d) {
    const double dd = d;
    const double window = std::sqrt(1.0 / (5.0 * dd));
    if (!(r_U(dd) < window))
        throw std::logic_error("u_monotone_window: r_U escapes the decreasing window");
    if (!(1.0 - std::sqrt((dd - 1.0) / dd) < window))
        throw std::logic_error("u_monotone_window: quadratic root bound escapes the window");
    return window;
}

}  // namespace frogbound
