#include "frogbound/renewal.hpp"

#include <cmath>
#include <stdexcept>

#include "frogbound/poly_bounds.hpp"

namespace frogbound {

std::vector<double> inter_renewal(double r, int kmax) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("inter_renewal: r must be in (0,1)");
    if (kmax < 1) throw std::invalid_argument("inter_renewal: kmax must be >= 1");
    std::vector<double> f(kmax);
    double rpow = 1.0;  // r^{k-1} entering iteration k
    double prod = 1.0;  // prod_{i=1}^{k-1}(1-r^i)
    double rk = 1.0;    // r^k for the product update
    for (int k = 1; k <= kmax; ++k) {
        rpow *= r;
        f[k - 1] = rpow * prod;
        rk *= r;
        prod *= (1.0 - rk);
    }
    return f;
}

namespace {

// prod_{i=1}^{m}(1-r^i) for m = 0..n. Converges to a positive constant,
// so plain doubles are fine at any n.
std::vector<double> prefix_products(double r, int n) {
    std::vector<double> q(n + 1);
    q[0] = 1.0;
    double rk = 1.0;
    for (int i = 1; i <= n; ++i) {
        rk *= r;
        q[i] = q[i - 1] * (1.0 - rk);
    }
    return q;
}

// Renewal recursion on v_k = c^k u_k for a scale factor c (c = 1 gives
// the plain sequence, c = d the bounded-at-criticality one).
std::vector<double> scaled_recursion(double r, double c, int n) {
    if (n < 1) throw std::invalid_argument("u_sequence: n must be >= 1");
    const std::vector<double> q = prefix_products(r, n);
    std::vector<double> cr_pow(n + 1);
    cr_pow[0] = 1.0;
    for (int i = 1; i <= n; ++i) cr_pow[i] = cr_pow[i - 1] * (c * r);
    std::vector<double> v(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double s = cr_pow[k] * q[k - 1];
        for (int j = 1; j < k; ++j) s += cr_pow[k - j] * v[j] * q[k - j - 1];
        v[k] = s;
    }
    v.erase(v.begin());
    return v;
}

}  // namespace

std::vector<double> u_sequence(double r, int n) { return scaled_recursion(r, 1.0, n); }

std::vector<double> scaled_u_sequence(double r, int d, int n) {
    return scaled_recursion(r, static_cast<double>(d), n);
}

SeriesBracket series_bracket(double r, int d, double tol) {
    const double dr = d * r;
    if (dr >= 1.0) throw std::domain_error("series_bracket: diverges for d*r >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("series_bracket: tol must be > 0");
    if (r == 0.0) return {0.0, 0.0, 0};

    const double tail_lo_c = std::max(0.0, 1.0 - r - r * r);
    const double tail_hi_c = (1.0 - r) * (1.0 - r * r);
    double sum = 0.0;
    double term = 1.0;  // (dr)^k
    double prod = 1.0;  // prod_{i<k}(1-r^i)
    double rk = 1.0;
    constexpr int kMaxTerms = 1 << 20;
    // Products drop below the sandwich only through the first few factors;
    // direct multiplication never underflows here since prod converges to
    // a positive constant and (dr)^k is handled by the geometric tail.
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= dr;
        sum += term * prod;
        rk *= r;
        prod *= (1.0 - rk);
        const double tail_geom = term * dr / (1.0 - dr);  // sum_{j>k} (dr)^j
        const double lower = sum + tail_lo_c * tail_geom;
        const double upper = sum + tail_hi_c * tail_geom;
        if (k >= 3 && upper - lower <= tol) return {lower, upper, k};
    }
    // Tail could not be squeezed below tol; report the best bracket.
    const double tail_geom = term * dr / (1.0 - dr);
    return {sum + tail_lo_c * tail_geom, sum + tail_hi_c * tail_geom, kMaxTerms};
}

RcBracket solve_rc(int d, double tol) {
    if (d < 2) throw std::invalid_argument("solve_rc: d must be >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_rc: tol must be > 0");

    double lo = r_L(d) * 0.5;
    double hi = std::min(r_U(d) * 1.5, 0.999 / d);
    const double series_tol = 1e-14;
    if (!(series_bracket(lo, d, series_tol).upper < 1.0 &&
          series_bracket(hi, d, series_tol).lower > 1.0))
        throw std::logic_error("solve_rc: initial bracket does not straddle the root");

    RcBracket out{lo, hi, 0, true};
    while (out.hi - out.lo > tol) {
        const double mid = 0.5 * (out.lo + out.hi);
        if (mid <= out.lo || mid >= out.hi) {
            out.tol_reached = false;  // double precision exhausted
            break;
        }
        const SeriesBracket s = series_bracket(mid, d, series_tol);
        out.terms_used = s.terms_used;
        if (s.upper < 1.0) {
            out.lo = mid;
        } else if (s.lower > 1.0) {
            out.hi = mid;
        } else {
            out.tol_reached = false;  // series enclosure straddles 1
            break;
        }
    }
    return out;
}

double u_infty_estimate(double r, int d, int n) {
    if (n < 1) throw std::invalid_argument("u_infty_estimate: n must be >= 1");
    if (!(r > 0.0 && r * d <= 1.0 + 1e-12))
        throw std::invalid_argument("u_infty_estimate: need 0 < r <= 1/d");
    // The recursion in log space (log-sum-exp per step, all terms are
    // positive), so u_k spanning thousands of orders of magnitude stays
    // representable.
    const std::vector<double> q = prefix_products(r, n);
    std::vector<double> lq(n + 1);
    for (int i = 0; i <= n; ++i) lq[i] = std::log(q[i]);
    const double lr = std::log(r);

    std::vector<double> lu(n + 1, 0.0);  // lu[k] = log u_k
    std::vector<double> expo;
    for (int k = 1; k <= n; ++k) {
        expo.clear();
        expo.push_back(k * lr + lq[k - 1]);
        for (int j = 1; j < k; ++j)
            expo.push_back((k - j) * lr + lu[j] + lq[k - j - 1]);
        double m = expo[0];
        for (double e : expo) m = std::max(m, e);
        double s = 0.0;
        for (double e : expo) s += std::exp(e - m);
        lu[k] = m + std::log(s);
    }
    return std::exp(lu[n] / n);
}

}  // namespace frogbound
