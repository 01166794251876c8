#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/annulus.hpp"
#include "cascade/kernels.hpp"

using namespace cascade;

namespace {
constexpr double kPi = std::numbers::pi;

BandVorticity quadrupole_band(const AnnulusQuadrature& quad) {
    return sample_band(quad, [](Vec2 p) {
        const double r2 = p.x * p.x + p.y * p.y;
        return (p.x * p.x - p.y * p.y) / r2; // cos(2 theta)
    });
}
} // namespace

TEST_CASE("gauss_legendre integrates polynomials of degree < 2n exactly") {
    std::vector<double> nodes, weights;
    gauss_legendre(6, nodes, weights);
    for (int k = 0; k <= 11; ++k) {
        double integral = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) integral += weights[i] * std::pow(nodes[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(integral == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("annulus quadrature weights sum to the annulus area") {
    for (int j : {0, 3, 5}) {
        const AnnulusQuadrature quad = build_annulus_quadrature(j);
        double total = 0.0;
        for (double w : quad.weights) total += w;
        const double area = 3.0 * kPi * std::ldexp(1.0, -2 * j);
        CHECK(std::abs(total - area) / area <= 1e-12);
    }
}

TEST_CASE("annulus quadrature nodes stay inside A_j") {
    const AnnulusQuadrature quad = build_annulus_quadrature(4, 8, 16);
    for (const Vec2& p : quad.nodes) {
        const double r = norm(p);
        CHECK(r >= quad.inner_radius());
        CHECK(r < quad.outer_radius());
    }
}

TEST_CASE("odd monomial integrates to zero on the annulus") {
    const AnnulusQuadrature quad = build_annulus_quadrature(0);
    double integral = 0.0;
    for (size_t q = 0; q < quad.nodes.size(); ++q) integral += quad.weights[q] * quad.nodes[q].x;
    CHECK(std::abs(integral) <= 1e-14);
}

TEST_CASE("quadrature resolution limits are enforced") {
    CHECK_THROWS_AS(build_annulus_quadrature(0, 3, 96), std::invalid_argument);
    CHECK_THROWS_AS(build_annulus_quadrature(0, 24, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_annulus_quadrature(-1), std::invalid_argument);
}

TEST_CASE("kernel point values") {
    CHECK(kernel_K12({1.0, 1.0}) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
    CHECK(kernel_K12({1.0, 0.0}) == 0.0);
    CHECK(kernel_K12({2.0, 2.0}) == doctest::Approx(0.25 / (4.0 * kPi)).epsilon(1e-15));
    CHECK(kernel_K11({1.0, 1.0}) == 0.0);
    CHECK(kernel_K11({1.0, 0.0}) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-15));
    CHECK(kernel_K11({0.0, 1.0}) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
}

TEST_CASE("kernels have homogeneity degree -2") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.2, 2.0);
    for (int i = 0; i < 50; ++i) {
        const Vec2 x{uni(rng), uni(rng)};
        const double lambda = uni(rng);
        const Vec2 lx{lambda * x.x, lambda * x.y};
        CHECK(kernel_K12(lx) ==
              doctest::Approx(kernel_K12(x) / (lambda * lambda)).epsilon(1e-12));
        CHECK(kernel_K11(lx) ==
              doctest::Approx(kernel_K11(x) / (lambda * lambda)).epsilon(1e-12));
    }
}

TEST_CASE("kernels reject the origin") {
    CHECK_THROWS_WITH_AS(kernel_K12({0.0, 0.0}), "kernel evaluated at origin", std::domain_error);
    CHECK_THROWS_AS(kernel_K11({0.0, 0.0}), std::domain_error);
}

TEST_CASE("radially symmetric band gives zero strain at the identity") {
    // Angular integrals of cos/sin(2 theta) vanish already at n_theta = 8.
    const AnnulusQuadrature quad = build_annulus_quadrature(2, 4, 8);
    const BandVorticity band = sample_band(quad, [](Vec2 p) { return std::exp(-norm(p)); });
    const TraceFreeMatrix g = grad_u_model(band, quad, Sl2Matrix::identity());
    CHECK(std::abs(g.g1) <= 1e-12);
    CHECK(std::abs(g.g2) <= 1e-12);
}

TEST_CASE("quadrupole band reproduces the analytic annulus integrals") {
    const AnnulusQuadrature quad = build_annulus_quadrature(0);
    const BandVorticity band = quadrupole_band(quad);

    // K11 = -cos(2 theta) / (2 pi r^2): angular integral pi, radial log 2.
    const TraceFreeMatrix g = grad_u_model(band, quad, Sl2Matrix::identity());
    CHECK(g.g1 == doctest::Approx(-0.5 * std::numbers::ln2).epsilon(1e-12));
    CHECK(std::abs(g.g2) <= 1e-12);

    // Rotating the annulus by pi/4 shifts the pattern onto K12.
    const double c = std::cos(kPi / 4.0), s = std::sin(kPi / 4.0);
    const Sl2Matrix rot{c, -s, s, c};
    const TraceFreeMatrix gr = grad_u_model(band, quad, rot);
    CHECK(std::abs(gr.g1) <= 1e-12);
    CHECK(gr.g2 == doctest::Approx(0.5 * std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("strain is invariant under transplanting the pattern across scales") {
    const AnnulusQuadrature base = build_annulus_quadrature(0);
    const TraceFreeMatrix g0 =
        grad_u_model(quadrupole_band(base), base, Sl2Matrix::identity());
    for (int j = 1; j <= 10; ++j) {
        const AnnulusQuadrature quad = build_annulus_quadrature(j);
        const TraceFreeMatrix g = grad_u_model(quadrupole_band(quad), quad,
                                               Sl2Matrix::identity());
        CHECK(std::abs(g.g1 - g0.g1) <= 1e-10);
        CHECK(std::abs(g.g2 - g0.g2) <= 1e-10);
    }
}

TEST_CASE("grad_u_model is linear in the band values") {
    const AnnulusQuadrature quad = build_annulus_quadrature(1, 12, 32);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    BandVorticity u = zero_band(quad), v = zero_band(quad), w = zero_band(quad);
    const double alpha = 0.7, beta = -1.3;
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        u.node_values[q] = uni(rng);
        v.node_values[q] = uni(rng);
        w.node_values[q] = alpha * u.node_values[q] + beta * v.node_values[q];
    }
    const Sl2Matrix h = sl2_exp(TraceFreeMatrix{0.4, -0.2}, 1.0);
    const TraceFreeMatrix gu = grad_u_model(u, quad, h);
    const TraceFreeMatrix gv = grad_u_model(v, quad, h);
    const TraceFreeMatrix gw = grad_u_model(w, quad, h);
    CHECK(gw.g1 == doctest::Approx(alpha * gu.g1 + beta * gv.g1).epsilon(1e-12));
    CHECK(gw.g2 == doctest::Approx(alpha * gu.g2 + beta * gv.g2).epsilon(1e-12));
}

TEST_CASE("quadrature converges under resolution doubling") {
    // The diag(2, 1/2) deformation puts the integrand's angular poles at
    // Im(theta) = asinh(1/sqrt(15)) ~ 0.255, so the trapezoid error decays
    // like e^(-0.255 n_theta): n_theta = 64 still carries ~2e-6 and the
    // 1e-8 plateau is reached one doubling later.
    const Sl2Matrix stretch{2.0, 0.0, 0.0, 0.5};
    const auto strain = [&](int n_r, int n_theta) {
        const AnnulusQuadrature quad = build_annulus_quadrature(0, n_r, n_theta);
        return grad_u_model(quadrupole_band(quad), quad, stretch);
    };
    const TraceFreeMatrix a = strain(16, 64);
    const TraceFreeMatrix b = strain(32, 128);
    const TraceFreeMatrix c = strain(64, 256);
    CHECK(std::abs(a.g1 - b.g1) <= 1e-5);
    CHECK(std::abs(a.g2 - b.g2) <= 1e-5);
    CHECK(std::abs(b.g1 - c.g1) <= 1e-8);
    CHECK(std::abs(b.g2 - c.g2) <= 1e-8);
}

TEST_CASE("grad_u_model validates its inputs") {
    const AnnulusQuadrature q0 = build_annulus_quadrature(0, 8, 16);
    const AnnulusQuadrature q1 = build_annulus_quadrature(1, 8, 16);
    const BandVorticity band = quadrupole_band(q0);
    CHECK_THROWS_AS(grad_u_model(band, q1, Sl2Matrix::identity()), std::invalid_argument);

    const Sl2Matrix not_sl2{2.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(grad_u_model(band, q0, not_sl2), std::invalid_argument);

    // Unit determinant, but the theta = 0 node lies exactly on the
    // contracted axis and lands below the 1e-12 guard.
    const Sl2Matrix squeeze{1e-13, 0.0, 0.0, 1e13};
    CHECK_THROWS_WITH_AS(grad_u_model(band, q0, squeeze), "degenerate deformation",
                         std::domain_error);
}
