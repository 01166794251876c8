#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/annulus.hpp"
#include "cascade/grid.hpp"
#include "cascade/littlewood_paley.hpp"

using namespace cascade;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Pure Fourier mode cos(2 pi (m . x) / (2L) + phase); |xi| = |m| / (2L).
Grid2D make_mode(int n, double L, int m0, int m1, double phase = 0.0) {
    Grid2D grid(n, L);
    for (int p = 0; p < n; ++p) {
        const double x = grid.coord(p);
        for (int q = 0; q < n; ++q) {
            const double y = grid.coord(q);
            grid.at(p, q) = std::cos(kTwoPi * (m0 * x + m1 * y) / (2.0 * L) + phase);
        }
    }
    return grid;
}

double rel_l2_diff(const Grid2D& a, const Grid2D& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    return std::sqrt(num / den);
}

Grid2D random_band_limited(int n, double L, int max_abs_m, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Grid2D grid(n, L);
    for (int trial = 0; trial < 12; ++trial) {
        const int m0 = static_cast<int>(uni(rng) * max_abs_m);
        const int m1 = static_cast<int>(uni(rng) * max_abs_m);
        const double amp = uni(rng);
        const double phase = uni(rng) * 3.0;
        const Grid2D mode = make_mode(n, L, m0, m1, phase);
        for (size_t i = 0; i < grid.values.size(); ++i) grid.values[i] += amp * mode.values[i];
    }
    return grid;
}

} // namespace

TEST_CASE("bump function plateau, support, and midpoint") {
    CHECK(bump_psi(0.0) == 1.0);
    CHECK(bump_psi(0.5) == 1.0);
    CHECK(bump_psi(1.0) == 1.0);
    CHECK(bump_psi(2.0) == 0.0);
    CHECK(bump_psi(3.0) == 0.0);
    CHECK(bump_psi(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        const double v = bump_psi(r);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(bump_psi(-0.1), std::domain_error);
}

TEST_CASE("band symbol boundary values and support") {
    CHECK(band_symbol(1, 2.0) == 1.0);
    CHECK(band_symbol(3, 0.0) == 0.0);
    CHECK(band_symbol(-1, 1.0) == 0.0);
    CHECK(band_symbol(2, 4.0) == 1.0); // exactly 2^j
    CHECK(band_symbol(2, 2.0) == 0.0); // open lower edge
    CHECK(band_symbol(2, 8.0) == 0.0); // open upper edge
    CHECK(band_symbol(0, Vec2{0.3, 0.4}) == 1.0);
}

TEST_CASE("band symbols telescope to a partition of unity") {
    const int J = 6;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(0.0, std::ldexp(1.0, J - 1));
    for (int i = 0; i < 2000; ++i) {
        const double xi = uni(rng);
        double sum = 0.0;
        for (int j = 0; j <= J; ++j) sum += band_symbol(j, xi);
        CHECK(std::abs(sum - 1.0) <= 1e-14);
    }
}

TEST_CASE("apply_band passes, kills, or rejects pure modes") {
    const int n = 128;
    // |xi| = 4 = 2^2: the j = 2 symbol is exactly 1 there.
    const Grid2D inside = make_mode(n, 2.0, 16, 0, 0.7);
    const Grid2D banded = apply_band(inside, 2);
    double worst = 0.0;
    for (size_t i = 0; i < banded.values.size(); ++i) {
        worst = std::max(worst, std::abs(banded.values[i] - inside.values[i]));
    }
    CHECK(worst <= 1e-12);

    // |xi| = 1 is outside the support (2, 8) of band 2.
    const Grid2D outside = make_mode(n, 2.0, 4, 0);
    const Grid2D killed = apply_band(outside, 2);
    CHECK(killed.max_abs() <= 1e-12);

    // Band 3 is exactly covered at this resolution (open support up to
    // 2^4 = Nyquist); band 4 is not.
    CHECK_NOTHROW(apply_band(outside, 3));
    CHECK_THROWS_WITH_AS(apply_band(outside, 4), "scale unresolvable at this resolution",
                         std::invalid_argument);
}

TEST_CASE("summed bands reconstruct band-limited fields") {
    const int n = 128;
    const Grid2D f = random_band_limited(n, 2.0, 20, 37); // |xi| <= sqrt(2)*5 < 2^3
    Grid2D sum(n, 2.0);
    for (int j = 0; j <= 3; ++j) {
        const Grid2D band = apply_band(f, j);
        for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += band.values[i];
    }
    CHECK(rel_l2_diff(sum, f) <= 1e-10);
}

TEST_CASE("averaging operator basics") {
    const int n = 128;
    Grid2D constant(n, 2.0);
    for (double& v : constant.values) v = 2.5;
    const Grid2D averaged = apply_average(constant, 3);
    double worst = 0.0;
    for (double v : averaged.values) worst = std::max(worst, std::abs(v - 2.5));
    CHECK(worst <= 1e-12);

    // |xi| = 8 = 2^3 is annihilated by E_3.
    const Grid2D high = make_mode(n, 2.0, 32, 0);
    CHECK(apply_average(high, 3).max_abs() <= 1e-12);
}

TEST_CASE("averaging telescopes the band projections") {
    const int n = 256;
    const Grid2D f = random_band_limited(n, 2.0, 40, 41);
    const Grid2D avg = apply_average(f, 4);
    Grid2D sum = apply_band(f, 0);
    for (int k = 1; k <= 3; ++k) {
        const Grid2D band = apply_band(f, k);
        for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += band.values[i];
    }
    double worst = 0.0;
    for (size_t i = 0; i < sum.values.size(); ++i) {
        worst = std::max(worst, std::abs(sum.values[i] - avg.values[i]));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("band projections commute with whole-cell translations") {
    const int n = 64;
    const Grid2D f = random_band_limited(n, 2.0, 10, 43);
    const auto translate = [n](const Grid2D& g, int dp, int dq) {
        Grid2D out(g.n, g.L);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                out.at(p, q) = g.at(((p + dp) % n + n) % n, ((q + dq) % n + n) % n);
            }
        }
        return out;
    };
    const Grid2D a = apply_band(translate(f, 5, -3), 1);
    const Grid2D b = translate(apply_band(f, 1), 5, -3);
    double worst = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("cheap Littlewood-Paley constant stays small on random fields") {
    const int n = 128;
    double kappa = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Grid2D f = random_band_limited(n, 2.0, 28, 1000 + trial);
        const double sup = f.max_abs();
        for (int j = 0; j <= 3; ++j) kappa = std::max(kappa, apply_band(f, j).max_abs() / sup);
        for (int j = 1; j <= 3; ++j) kappa = std::max(kappa, apply_average(f, j).max_abs() / sup);
    }
    MESSAGE("measured cheap Littlewood-Paley constant: ", kappa);
    CHECK(kappa <= 3.0);
}

TEST_CASE("gradient bands of the zero field vanish") {
    const Grid2D zero(64, 2.0);
    const BandSpectrum spectrum = gradient_bands_from_vorticity(zero);
    CHECK(spectrum.N_estimate == 0.0);
    for (double s : spectrum.band_sup) CHECK(s == 0.0);
}

TEST_CASE("gradient bands of a pure mode touch at most adjacent bands") {
    const int n = 128;
    const Grid2D mode = make_mode(n, 2.0, 12, 0); // |xi| = 3
    const BandSpectrum spectrum = gradient_bands_from_vorticity(mode);
    const double peak = spectrum.sup_band;
    int nonzero = 0;
    for (size_t j = 0; j < spectrum.band_sup.size(); ++j) {
        if (spectrum.band_sup[j] > 1e-10 * peak) {
            ++nonzero;
            CHECK(band_symbol(static_cast<int>(j), 3.0) > 0.0);
        }
    }
    CHECK(nonzero >= 1);
    CHECK(nonzero <= 3);

    // The gradient of a unit pure mode is rank one with pointwise norm 1,
    // so the band sups are exactly the symbol values: 0.5 each here.
    CHECK(spectrum.band_sup[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(spectrum.band_sup[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(spectrum.N_estimate == doctest::Approx(1.0).epsilon(1e-12));

    // Same total along the diagonal, where all three multipliers engage.
    // Zero phase keeps the mode's extremum on a grid point, so the sampled
    // sup is the continuum sup.
    const BandSpectrum diag = gradient_bands_from_vorticity(make_mode(n, 2.0, 8, 8));
    CHECK(diag.N_estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gradient bands require zero mean") {
    Grid2D biased(64, 2.0);
    for (double& v : biased.values) v = 1.0;
    CHECK_THROWS_WITH_AS(gradient_bands_from_vorticity(biased), "vorticity must have zero mean",
                         std::invalid_argument);
}

TEST_CASE("spectral sampling reproduces band-limited values off-grid") {
    const int n = 256;
    const Grid2D mode = make_mode(n, 2.0, 20, 0, 0.3); // |xi| = 5
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    std::vector<Vec2> points;
    for (int i = 0; i < 200; ++i) points.push_back({uni(rng), uni(rng)});
    const std::vector<double> sampled = spectral_sample(mode, points);
    double worst = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        const double exact = std::cos(kTwoPi * (20.0 * points[i].x) / 4.0 + 0.3);
        worst = std::max(worst, std::abs(sampled[i] - exact));
    }
    MESSAGE("interpolation error on the |xi|=5 mode: ", worst);
    CHECK(worst <= 1e-6);
}

TEST_CASE("band vorticity of the zero field is zero") {
    const AnnulusQuadrature quad = build_annulus_quadrature(1, 8, 16);
    const Grid2D zero(64, 2.0);
    const BandVorticity band = build_band_vorticity(zero, 1, 2, quad);
    CHECK(band.sup_norm == 0.0);
    for (double v : band.node_values) CHECK(v == 0.0);
}

TEST_CASE("band vorticity window excludes far modes") {
    const int n = 256; // axis Nyquist 32
    const int j = 1, w = 2;
    // |xi| = 17 >= 2^(j+w+1) = 16: outside the window.
    const Grid2D far = make_mode(n, 2.0, 68, 0);
    const AnnulusQuadrature quad = build_annulus_quadrature(j);
    const BandVorticity band = build_band_vorticity(far, j, w, quad);
    for (double v : band.node_values) CHECK(std::abs(v) <= 1e-8);
}

TEST_CASE("band vorticity keeps in-band modes intact at the nodes") {
    const int n = 256;
    const int j = 2, w = 2;
    const Grid2D mode = make_mode(n, 2.0, 20, 0, 0.45); // |xi| = 5 in (2, 8)
    const AnnulusQuadrature quad = build_annulus_quadrature(j);
    const BandVorticity band = build_band_vorticity(mode, j, w, quad);
    double worst = 0.0;
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        const double exact = std::cos(kTwoPi * (20.0 * quad.nodes[q].x) / 4.0 + 0.45);
        worst = std::max(worst, std::abs(band.node_values[q] - exact));
    }
    MESSAGE("in-band node sampling error: ", worst);
    CHECK(worst <= 1e-6);
    CHECK(band.sup_norm >= band.node_values[0]);

    double node_max = 0.0;
    for (double v : band.node_values) node_max = std::max(node_max, std::abs(v));
    CHECK(band.sup_norm >= node_max);
}

TEST_CASE("band vorticity scale checks") {
    const Grid2D f(64, 2.0); // axis Nyquist 8, corner ~ 11.3
    const AnnulusQuadrature q1 = build_annulus_quadrature(1, 8, 16);
    CHECK_THROWS_AS(build_band_vorticity(f, 2, 2, q1), std::invalid_argument); // j mismatch
    const AnnulusQuadrature q9 = build_annulus_quadrature(9, 8, 16);
    // Window lower edge 2^(9-2-1) = 64 is far above every representable mode.
    CHECK_THROWS_WITH_AS(build_band_vorticity(f, 9, 2, q9),
                         "scale unresolvable at this resolution", std::invalid_argument);
}
