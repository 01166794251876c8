#include "cascade/annulus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cascade {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

AnnulusQuadrature build_annulus_quadrature(int j, int n_r, int n_theta) {
    if (j < 0) throw std::invalid_argument("scale index must be non-negative");
    if (n_r < 4 || n_theta < 8) {
        throw std::invalid_argument("annulus quadrature needs n_r >= 4 and n_theta >= 8");
    }

    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(n_r, gl_nodes, gl_weights);

    AnnulusQuadrature quad;
    quad.j = j;
    quad.n_r = n_r;
    quad.n_theta = n_theta;
    quad.nodes.reserve(static_cast<size_t>(n_r) * n_theta);
    quad.weights.reserve(static_cast<size_t>(n_r) * n_theta);

    // Radii at scale j are exact power-of-two rescalings of the j = 0 rule,
    // so kernel homogeneity cancels the area scaling bit-for-bit in tests.
    const double scale = std::ldexp(1.0, -j);
    const double dtheta = 2.0 * std::numbers::pi / n_theta;
    for (int i = 0; i < n_r; ++i) {
        const double r0 = 1.5 + 0.5 * gl_nodes[i]; // [1, 2]
        const double r = scale * r0;
        const double wr = 0.5 * gl_weights[i] * r * dtheta * scale;
        for (int k = 0; k < n_theta; ++k) {
            const double theta = dtheta * k;
            quad.nodes.push_back({r * std::cos(theta), r * std::sin(theta)});
            quad.weights.push_back(wr);
        }
    }
    return quad;
}

} // namespace cascade
