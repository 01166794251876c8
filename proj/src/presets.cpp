#include "cascade/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cascade/littlewood_paley.hpp"

namespace cascade {

namespace {

// Smooth cutoff: 1 for r <= r0, 0 for r >= r1.
double radial_window(double r, double r0, double r1) {
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    return bump_psi(1.0 + (r - r0) / (r1 - r0));
}

template <typename F>
Grid2D fill(int n, double L, F f) {
    Grid2D grid(n, L);
    for (int p = 0; p < n; ++p) {
        const double x = grid.coord(p);
        for (int q = 0; q < n; ++q) {
            grid.at(p, q) = f(x, grid.coord(q));
        }
    }
    return grid;
}

// Core/ring pair: a Gaussian bump and its r^2-weighted ring have equal mass,
// so their difference has (almost) zero mean; the residual is removed by an
// exact grid-measured ring coefficient.
Grid2D radial_preset(double amplitude, int n, double L) {
    const double sigma = 0.18;
    const auto envelope = [&](double x, double y, bool ring) {
        const double r = std::hypot(x, y);
        const double u2 = (r / sigma) * (r / sigma);
        const double w = radial_window(r, 0.75, 0.95);
        return (ring ? u2 : 1.0) * std::exp(-u2) * w;
    };
    const Grid2D core = fill(n, L, [&](double x, double y) { return envelope(x, y, false); });
    const Grid2D ring = fill(n, L, [&](double x, double y) { return envelope(x, y, true); });

    double sum_core = 0.0, sum_ring = 0.0;
    for (size_t i = 0; i < core.values.size(); ++i) {
        sum_core += core.values[i];
        sum_ring += ring.values[i];
    }
    const double alpha = sum_core / sum_ring;

    Grid2D grid(n, L);
    for (size_t i = 0; i < grid.values.size(); ++i) {
        grid.values[i] = amplitude * (core.values[i] - alpha * ring.values[i]);
    }
    return grid;
}

Grid2D quadrupole_preset(double amplitude, int support_j, int n, double L) {
    // A_j with j >= 1 keeps the support inside the unit disk.
    if (support_j < 1) throw std::invalid_argument("quadrupole support scale must be >= 1");
    const double r_in = std::ldexp(1.0, -support_j);
    const double r_out = std::ldexp(1.0, 1 - support_j);
    return fill(n, L, [&](double x, double y) {
        const double r2 = x * x + y * y;
        const double r = std::sqrt(r2);
        if (r < r_in || r >= r_out) return 0.0;
        return amplitude * (x * x - y * y) / r2; // cos(2 theta)
    });
}

Grid2D odd_odd_preset(double amplitude, int n, double L) {
    const double sigma = 0.25;
    return fill(n, L, [&](double x, double y) {
        const double r = std::hypot(x, y);
        const double w = radial_window(r, 0.7, 0.95);
        return amplitude * (x / sigma) * (y / sigma) * std::exp(-(r / sigma) * (r / sigma)) * w;
    });
}

// Removes the grid mean with a multiple of the radial core bump, keeping
// the support inside the unit disk.
void cancel_mean_with_core(Grid2D& grid) {
    const double m = grid.mean();
    if (m == 0.0) return;
    const Grid2D core = fill(grid.n, grid.L, [&](double x, double y) {
        const double r = std::hypot(x, y);
        return std::exp(-(r / 0.3) * (r / 0.3)) * radial_window(r, 0.7, 0.95);
    });
    const double cm = core.mean();
    for (size_t i = 0; i < grid.values.size(); ++i) {
        grid.values[i] -= (m / cm) * core.values[i];
    }
}

Grid2D random_bands_preset(const PresetParams& params, int n, double L) {
    if (params.J < 1) throw std::invalid_argument("random_bands needs J >= 1");
    Grid2D probe(n, L);
    const double nyquist = grid_nyquist(probe);
    if (std::ldexp(1.0, params.J) > nyquist) {
        throw std::invalid_argument("grid too coarse for requested J");
    }

    Grid2D total(n, L);
    for (int jb = 0; jb < params.J; ++jb) {
        std::mt19937_64 rng(params.seed + 0x9E3779B97F4A7C15ULL * (jb + 1));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Grid2D noise(n, L);
        for (double& v : noise.values) v = gauss(rng);

        Grid2D component = apply_band(noise, jb);
        for (int p = 0; p < n; ++p) {
            const double x = component.coord(p);
            for (int q = 0; q < n; ++q) {
                component.at(p, q) *= radial_window(std::hypot(x, component.coord(q)), 0.6, 0.95);
            }
        }
        cancel_mean_with_core(component);

        const double sup = gradient_band_sup(component, jb);
        if (!(sup > 0.0)) throw std::runtime_error("degenerate random band component");
        const double scale = params.amplitude / sup;
        for (size_t i = 0; i < total.values.size(); ++i) {
            total.values[i] += scale * component.values[i];
        }
    }
    cancel_mean_with_core(total);
    return total;
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"radial", "quadrupole", "odd_odd",
                                                   "random_bands"};
    return names;
}

Grid2D preset_vorticity(const std::string& name, const PresetParams& params, int n, double L) {
    if (!is_power_of_two(n) || n < 16) {
        throw std::invalid_argument("preset grid size must be a power of two, at least 16");
    }
    if (name == "radial") return radial_preset(params.amplitude, n, L);
    if (name == "quadrupole") return quadrupole_preset(params.amplitude, params.support_j, n, L);
    if (name == "odd_odd") return odd_odd_preset(params.amplitude, n, L);
    if (name == "random_bands") return random_bands_preset(params, n, L);
    throw std::invalid_argument("unknown preset: " + name);
}

} // namespace cascade
