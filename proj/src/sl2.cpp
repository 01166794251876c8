#include "cascade/sl2.hpp"

namespace cascade {

Sl2Matrix sl2_exp(Sl2Generator gen, double t) {
    if (!gen.finite() || !std::isfinite(t)) {
        throw std::invalid_argument("non-finite generator");
    }
    const double mu2 = -gen.det(); // p^2 + q r
    double c0, c1;
    if (mu2 > 1e-14) {
        const double mu = std::sqrt(mu2);
        c0 = std::cosh(mu * t);
        c1 = std::sinh(mu * t) / mu;
    } else if (mu2 < -1e-14) {
        const double nu = std::sqrt(-mu2);
        c0 = std::cos(nu * t);
        c1 = std::sin(nu * t) / nu;
    } else {
        // cosh/cos and sinh/sin as even series in z = mu^2 t^2; two terms
        // keep |det - 1| at rounding level for |z| <= 1e-14 t^2.
        const double z = mu2 * t * t;
        c0 = 1.0 + z / 2.0;
        c1 = t * (1.0 + z / 6.0);
    }
    return {c0 + c1 * gen.p, c1 * gen.q, c1 * gen.r, c0 - c1 * gen.p};
}

} // namespace cascade
