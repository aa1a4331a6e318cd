#include "frogbound/model_core.hpp"

#include <algorithm>
#include <cmath>

#include "frogbound/poly_bounds.hpp"

namespace frogbound {

ReturnProb r_of_p(const ModelParams& params) {
    const double d = params.d;
    const double p = params.p;
    if (p == 0.0) return ReturnProb(0.0, params.d);
    const double disc = (d + 1) * (d + 1) - 4.0 * d * p * p;
    const double r = (d + 1 - std::sqrt(disc)) / (2.0 * d * p);
    return ReturnProb(std::min(r, 1.0 / d), params.d);
}

double p_of_r(double r, double d) {
    // r = 1/d maps to exactly 1; clip the last-ulp rounding excess
    return std::min(1.0, (d + 1) * r / (1.0 + d * r * r));
}

double p_of_r(const ReturnProb& rp) { return p_of_r(rp.r, rp.d); }

double theorem1_lower(double d) {
    return 2.0 * (d + 1) / (std::sqrt(4.0 * d * d + 4.0 * d - 3.0) + 2.0 * d + 1.0);
}

double theorem1_upper(double d) {
    const double q = 2.0 - 1.0 / (14.0 * d * d) - 4.0 * d;
    const double s = 5.0 * d - 8.0 * d * d;
    return (d + 1) * q * s / (s * s + d * q * q);
}

namespace {

double clamp_ub(double ub, bool& vacuous) {
    if (ub > 1.0) {
        vacuous = true;
        return 1.0;
    }
    return ub;
}

}  // namespace

BoundsReport literature_bounds(int d) {
    if (d < 2) throw std::invalid_argument("literature_bounds: d must be >= 2");
    BoundsReport rep;
    rep.d = d;
    const double dd = d;
    rep.amp2002_lb = (dd + 1) / (2 * dd + 1);
    rep.amp2002_ub = clamp_ub((dd + 1) / (2 * dd - 2), rep.amp2002_ub_vacuous);
    rep.lmp2005_ub = clamp_ub((dd + 1) / (2 * dd), rep.lmp2005_ub_vacuous);

    const double c = 7 * dd - 1;
    const double s = std::sqrt(c * c - 14.0);
    rep.gms2018_ub = clamp_ub(
        (dd + 1) * (c - s) / (dd * c * c - 7 * dd + 2 - dd * c * s),
        rep.gms2018_ub_vacuous);

    const Polynomial quartic = poly_l2019(d);
    const RootBracket root = find_root(quartic, 1e-12, (1.0 - 1e-12) / dd, 1e-14);
    rep.l2019_ub = clamp_ub(p_of_r(root.mid(), dd), rep.l2019_ub_vacuous);
    return rep;
}

BoundsReport bounds_report(int d) {
    BoundsReport rep = literature_bounds(d);
    rep.lb_pc = theorem1_lower(d);
    rep.lb_pc_hat = p_of_r(r_L(d), d);
    rep.ub_pc = theorem1_upper(d);
    return rep;
}

bool monotonicity_gap(int d, double a) {
    if (d < 2 || a * d < 2.0)
        throw std::invalid_argument("monotonicity_gap: need d >= 2 and a*d >= 2");
    return theorem1_lower(d) > theorem1_upper(a * d);
}

}  // namespace frogbound
