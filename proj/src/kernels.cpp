#include "cascade/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cascade {

namespace {
constexpr double kPi = std::numbers::pi;

void check_not_origin(Vec2 x) {
    if (std::abs(x.x) < 1e-300 && std::abs(x.y) < 1e-300) {
        throw std::domain_error("kernel evaluated at origin");
    }
}
} // namespace

double kernel_K12(Vec2 x) {
    check_not_origin(x);
    const double r2 = x.x * x.x + x.y * x.y;
    return x.x * x.y / (kPi * r2 * r2);
}

double kernel_K11(Vec2 x) {
    check_not_origin(x);
    const double r2 = x.x * x.x + x.y * x.y;
    return (x.y * x.y - x.x * x.x) / (2.0 * kPi * r2 * r2);
}

TraceFreeMatrix grad_u_model(const BandVorticity& band, const AnnulusQuadrature& quad,
                             const Sl2Matrix& h) {
    if (band.j != quad.j) {
        throw std::invalid_argument("band/quadrature scale mismatch");
    }
    if (band.node_values.size() != quad.nodes.size()) {
        throw std::invalid_argument("band/quadrature node count mismatch");
    }
    if (!h.finite() || std::abs(h.det() - 1.0) > 1e-6) {
        throw std::invalid_argument("deformation is not in SL(2)");
    }

    double g1 = 0.0, g2 = 0.0;
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        const Vec2 y = transform(h, quad.nodes[q]);
        if (y.x * y.x + y.y * y.y < 1e-24) {
            throw std::domain_error("degenerate deformation");
        }
        const double w = quad.weights[q] * band.node_values[q];
        const double r2 = y.x * y.x + y.y * y.y;
        const double inv = 1.0 / (r2 * r2);
        g1 += w * (y.y * y.y - y.x * y.x) * inv;
        g2 += w * (y.x * y.y) * inv;
    }
    return {g1 / (2.0 * kPi), g2 / kPi};
}

} // namespace cascade
