#include "cascade/validation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cascade/cascade.hpp"
#include "cascade/config.hpp"
#include "cascade/diagnostics.hpp"
#include "cascade/kernels.hpp"
#include "cascade/littlewood_paley.hpp"
#include "cascade/runner.hpp"

namespace cascade {

namespace {

struct Mat2 {
    double a, b, c, d;
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

double frobenius_diff(const Sl2Matrix& x, const Sl2Matrix& y) {
    const double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

} // namespace

Sl2Matrix matrix_exp_series(Sl2Generator gen, double t, int terms) {
    Mat2 m{t * gen.p, t * gen.q, t * gen.r, -t * gen.p};
    const double scale = std::max(std::abs(m.a) + std::abs(m.b), std::abs(m.c) + std::abs(m.d));
    int squarings = 0;
    while (scale > 0.5 * std::ldexp(1.0, squarings)) ++squarings;
    const double factor = std::ldexp(1.0, -squarings);
    m = {m.a * factor, m.b * factor, m.c * factor, m.d * factor};

    Mat2 sum{1.0, 0.0, 0.0, 1.0};
    Mat2 term{1.0, 0.0, 0.0, 1.0};
    for (int k = 1; k <= terms; ++k) {
        term = mul(term, m);
        const double inv = 1.0 / k;
        term = {term.a * inv, term.b * inv, term.c * inv, term.d * inv};
        sum = {sum.a + term.a, sum.b + term.b, sum.c + term.c, sum.d + term.d};
    }
    for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
    return {sum.a, sum.b, sum.c, sum.d};
}

namespace {

CheckResult check_exponential() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Sl2Generator gen{uni(rng), uni(rng), uni(rng)};
        const double t = uni(rng);
        worst = std::max(worst, frobenius_diff(sl2_exp(gen, t), matrix_exp_series(gen, t)));
    }
    return {"sl2 exponential vs power series", worst <= 1e-12,
            "max deviation " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

CheckResult check_quadrature() {
    double worst = 0.0;
    for (int j = 0; j <= 8; ++j) {
        const AnnulusQuadrature quad = build_annulus_quadrature(j);
        double total = 0.0;
        for (double w : quad.weights) total += w;
        const double expected = 3.0 * std::numbers::pi * std::ldexp(1.0, -2 * j);
        worst = std::max(worst, std::abs(total - expected) / expected);
    }
    return {"annulus quadrature area", worst <= 1e-12,
            "max relative weight error " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

CheckResult check_kernel_integrals() {
    const double target = -0.5 * std::numbers::ln2;
    double worst_g1 = 0.0, worst_g2 = 0.0, spread = 0.0;
    double first = 0.0;
    for (int j = 0; j <= 10; ++j) {
        const AnnulusQuadrature quad = build_annulus_quadrature(j);
        const BandVorticity band = sample_band(quad, [](Vec2 p) {
            const double r2 = p.x * p.x + p.y * p.y;
            return (p.x * p.x - p.y * p.y) / r2;
        });
        const TraceFreeMatrix g = grad_u_model(band, quad, Sl2Matrix::identity());
        worst_g1 = std::max(worst_g1, std::abs(g.g1 - target));
        worst_g2 = std::max(worst_g2, std::abs(g.g2));
        if (j == 0) {
            first = g.g1;
        } else {
            spread = std::max(spread, std::abs(g.g1 - first));
        }
    }
    const bool pass = worst_g1 <= 1e-8 && worst_g2 <= 1e-12 && spread <= 1e-10;
    return {"quadrupole kernel integrals",
            pass,
            "g1 error " + fmt("%.3g", worst_g1) + ", g2 error " + fmt("%.3g", worst_g2) +
                ", scale spread " + fmt("%.3g", spread)};
}

CheckResult check_partition(bool quick) {
    const int n = quick ? 128 : 512;
    const Grid2D probe(n, 2.0);
    const int J = grid_max_band(probe);
    double worst = 0.0;
    for (int k0 = -n / 2; k0 < n / 2; ++k0) {
        for (int k1 = 0; k1 <= n / 2; ++k1) {
            const double xi = std::sqrt(static_cast<double>(k0) * k0 + k1 * k1) / (2.0 * probe.L);
            double sum = 0.0;
            for (int j = 0; j <= J; ++j) sum += band_symbol(j, xi);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    return {"partition of unity", worst <= 1e-14,
            "max |sum - 1| = " + fmt("%.3g", worst) + " over bands 0.." + std::to_string(J)};
}

CheckResult check_closed_form() {
    const std::vector<AnnulusQuadrature> quads = {build_annulus_quadrature(0),
                                                  build_annulus_quadrature(1)};
    const BandVorticity band0 = sample_band(quads[0], [](Vec2 p) {
        const double r2 = p.x * p.x + p.y * p.y;
        return (p.x * p.x - p.y * p.y) / r2;
    });
    const std::vector<BandVorticity> bands = {band0, zero_band(quads[1])};

    ModelParams params;
    params.N = 256.0;
    params.J = 2;
    const Trajectory traj = run(params, bands, quads);

    const std::vector<TraceFreeMatrix> m =
        rhs_generators(CascadeState::initial(2), bands, quads);
    const double T = traj.samples.back().t;
    const Sl2Matrix expected = matrix_exp_series(Sl2Generator::from_strain(m[1]), T);
    const double err = frobenius_diff(traj.samples.back().h[1], expected);
    return {"closed-form constant-generator trajectory", err <= 1e-10,
            "|h_1(T) - exp(T M_1)| = " + fmt("%.3g", err) + " (tol 1e-10)"};
}

CheckResult check_integrator_order(bool quick) {
    const int n_r = 12, n_theta = 48;
    std::vector<AnnulusQuadrature> quads;
    std::vector<BandVorticity> bands;
    for (int j = 0; j < 3; ++j) {
        quads.push_back(build_annulus_quadrature(j, n_r, n_theta));
    }
    bands.push_back(sample_band(quads[0], [](Vec2 p) {
        const double theta = std::atan2(p.y, p.x);
        return std::cos(2.0 * theta);
    }));
    bands.push_back(sample_band(quads[1], [](Vec2 p) {
        const double theta = std::atan2(p.y, p.x);
        return std::cos(2.0 * (theta - 0.3));
    }));
    bands.push_back(zero_band(quads[2]));

    const double T = 4.0;
    const auto integrate = [&](long steps) {
        CascadeState state = CascadeState::initial(3);
        const double dt = T / steps;
        for (long i = 0; i < steps; ++i) state = step_rkmk4(state, bands, quads, dt);
        return state.h[2];
    };

    const Sl2Matrix reference = integrate(quick ? 1024 : 4096);
    std::vector<double> log_dt, log_err;
    for (long steps : {16, 32, 64, 128}) {
        const double err = frobenius_diff(integrate(steps), reference);
        log_dt.push_back(std::log(T / steps));
        log_err.push_back(std::log(err));
    }
    double slope = 0.0, intercept = 0.0;
    fit_line(log_dt, log_err, slope, intercept);
    const bool pass = std::abs(slope - 4.0) <= 0.3;
    return {"integrator convergence order", pass,
            "measured order " + fmt("%.3f", slope) + " (target 4.0 +- 0.3)"};
}

CheckResult check_gronwall() {
    const GronwallReport report = gronwall_harness(1.0, 4000);
    bool ok = true;
    double worst_rel = 0.0;
    for (const GronwallCase& c : report.cases) {
        ok = ok && c.within_bound;
        // Exact solution of d' = N d + E over the full horizon (N T < 1).
        const double exact = (c.E / c.N) * (std::exp(0.09 * std::log(c.N)) - 1.0);
        worst_rel = std::max(worst_rel, std::abs(c.final_diff - exact) / exact);
    }
    ok = ok && worst_rel <= 1e-8 && std::abs(report.envelope_slope + 0.91) <= 1e-6;
    return {"gronwall closed form and envelope", ok,
            "closed-form mismatch " + fmt("%.2g", worst_rel) + ", envelope slope " +
                fmt("%.6f", report.envelope_slope) + ", raw slope " + fmt("%.4f", report.slope)};
}

CheckResult check_radial_null(bool quick) {
    ExperimentConfig cfg;
    cfg.mode = "preset";
    cfg.preset = "radial";
    cfg.grid_n = quick ? 256 : 512;
    cfg.N = 256.0;
    cfg.J = 8;
    const RunOutput out = execute_run(cfg, "", false);
    double worst = 0.0;
    for (const TrajectorySample& s : out.trajectory.samples) {
        for (const Sl2Matrix& h : s.h) {
            worst = std::max(worst, frobenius_diff(h, Sl2Matrix::identity()));
        }
    }
    return {"radial null trajectory", worst <= 1e-9,
            "max |h - I| = " + fmt("%.3g", worst) + " (tol 1e-9)"};
}

} // namespace

std::vector<CheckResult> run_validation_suite(bool quick) {
    std::vector<CheckResult> results;
    results.push_back(check_exponential());
    results.push_back(check_quadrature());
    results.push_back(check_kernel_integrals());
    results.push_back(check_partition(quick));
    results.push_back(check_closed_form());
    results.push_back(check_integrator_order(quick));
    results.push_back(check_gronwall());
    results.push_back(check_radial_null(quick));
    return results;
}

} // namespace cascade
