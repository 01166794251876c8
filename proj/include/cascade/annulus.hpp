#ifndef CASCADE_ANNULUS_HPP
#define CASCADE_ANNULUS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "cascade/sl2.hpp"

namespace cascade {

/// Tensor quadrature on the dyadic annulus A_j = {2^-j <= |x| < 2^(1-j)}:
/// Gauss-Legendre in radius, uniform trapezoid in angle, weights carry the
/// polar Jacobian r.  Total weight is the annulus area 3*pi*4^-j.
struct AnnulusQuadrature {
    int j = 0;
    int n_r = 0;
    int n_theta = 0;
    std::vector<Vec2> nodes;
    std::vector<double> weights;

    double inner_radius() const { return std::ldexp(1.0, -j); }
    double outer_radius() const { return std::ldexp(1.0, 1 - j); }
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

AnnulusQuadrature build_annulus_quadrature(int j, int n_r = 24, int n_theta = 96);

/// Initial band vorticity omega_{0,j} sampled at the quadrature nodes of
/// scale j.  sup_norm bounds max |node_values|.
struct BandVorticity {
    int j = 0;
    std::vector<double> node_values;
    double sup_norm = 0.0;
};

/// Band with node values f(s_q); used for analytic patterns in tests and
/// the validation suite.
template <typename F>
BandVorticity sample_band(const AnnulusQuadrature& quad, F f) {
    BandVorticity band;
    band.j = quad.j;
    band.node_values.reserve(quad.nodes.size());
    for (const Vec2& p : quad.nodes) {
        const double v = f(p);
        band.node_values.push_back(v);
        band.sup_norm = std::max(band.sup_norm, std::abs(v));
    }
    return band;
}

/// Flat zero band matching the quadrature layout.
inline BandVorticity zero_band(const AnnulusQuadrature& quad) {
    return sample_band(quad, [](Vec2) { return 0.0; });
}

} // namespace cascade

#endif
