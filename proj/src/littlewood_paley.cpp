#include "cascade/littlewood_paley.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace cascade {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex g_plan_mutex;

using Spectrum = std::vector<std::complex<double>>;

Spectrum fft_forward(const Grid2D& grid) {
    const int n = grid.n;
    Spectrum spec(static_cast<size_t>(n) * (n / 2 + 1));
    std::vector<double> in = grid.values;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft_r2c_2d(n, n, in.data(),
                                    reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return spec;
}

// Consumes the spectrum (c2r transforms destroy their input).
Grid2D fft_inverse(Spectrum spec, int n, double L, double scale) {
    Grid2D out(n, L);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(spec.data()),
                                    out.values.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    for (double& v : out.values) v *= scale;
    return out;
}

// Integer frequency of row k in an n-point transform.
int row_freq(int k, int n) { return k <= n / 2 ? k : k - n; }

// Applies a radial multiplier S(|xi|) in place; xi = m / (2L).
template <typename Symbol>
void apply_radial_symbol(Spectrum& spec, int n, double L, Symbol symbol) {
    const int cols = n / 2 + 1;
    const double inv2L = 1.0 / (2.0 * L);
    for (int k0 = 0; k0 < n; ++k0) {
        const double m0 = row_freq(k0, n);
        for (int k1 = 0; k1 < cols; ++k1) {
            const double m1 = k1;
            const double xi = std::sqrt(m0 * m0 + m1 * m1) * inv2L;
            spec[static_cast<size_t>(k0) * cols + k1] *= symbol(xi);
        }
    }
}

// The band support (2^(j-1), 2^(j+1)) is open, so equality with the axis
// Nyquist frequency still covers it.
void require_band_resolvable(const Grid2D& grid, int j) {
    if (std::ldexp(1.0, j + 1) > grid_nyquist(grid)) {
        throw std::invalid_argument("scale unresolvable at this resolution");
    }
}

} // namespace

double bump_psi(double r) {
    if (r < 0.0) throw std::domain_error("bump argument must be non-negative");
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = std::exp(-1.0 / (2.0 - r));
    const double b = std::exp(-1.0 / (r - 1.0));
    return a / (a + b);
}

double band_symbol(int j, double xi_norm) {
    if (j < 0) return 0.0;
    if (j == 0) return bump_psi(xi_norm);
    // psi_1(2^(1-j) xi) = psi(2^-j |xi|) - psi(2^(1-j) |xi|)
    return bump_psi(std::ldexp(xi_norm, -j)) - bump_psi(std::ldexp(xi_norm, 1 - j));
}

double band_symbol(int j, Vec2 xi) { return band_symbol(j, norm(xi)); }

double average_symbol(int j, double xi_norm) {
    if (j <= 0) return 0.0;
    return bump_psi(std::ldexp(xi_norm, 1 - j));
}

double grid_nyquist(const Grid2D& grid) { return grid.n / (4.0 * grid.L); }

int grid_max_band(const Grid2D& grid) {
    const double corner = std::sqrt(2.0) * grid_nyquist(grid);
    int J = 0;
    while (std::ldexp(1.0, J) < corner) ++J;
    return J;
}

Grid2D apply_band(const Grid2D& f, int j) {
    require_band_resolvable(f, j);
    Spectrum spec = fft_forward(f);
    apply_radial_symbol(spec, f.n, f.L, [j](double xi) { return band_symbol(j, xi); });
    return fft_inverse(std::move(spec), f.n, f.L, 1.0 / (static_cast<double>(f.n) * f.n));
}

Grid2D apply_average(const Grid2D& f, int j) {
    require_band_resolvable(f, j);
    Spectrum spec = fft_forward(f);
    apply_radial_symbol(spec, f.n, f.L, [j](double xi) { return average_symbol(j, xi); });
    return fft_inverse(std::move(spec), f.n, f.L, 1.0 / (static_cast<double>(f.n) * f.n));
}

namespace {

void require_zero_mean(const Grid2D& omega) {
    if (std::abs(omega.mean()) > 1e-12) {
        throw std::invalid_argument("vorticity must have zero mean");
    }
}

// grad u = [[-R1R2, -R2^2], [R1^2, R1R2]] omega; entry multipliers on
// omega-hat are (xi1 xi2, xi2^2, -xi1^2) / |xi|^2, zero at xi = 0.  The
// (2,2) entry is the negation of (1,1), so three inversions per band,
// then the sup of the pointwise 2x2 operator norm.
double band_gradient_sup(const Spectrum& base, int n, double L, int j) {
    const int cols = n / 2 + 1;
    const double norm_scale = 1.0 / (static_cast<double>(n) * n);
    Spectrum s11(base.size()), s12(base.size()), s21(base.size());
    for (int k0 = 0; k0 < n; ++k0) {
        const double m0 = row_freq(k0, n);
        for (int k1 = 0; k1 < cols; ++k1) {
            const double m1 = k1;
            const double mm = m0 * m0 + m1 * m1;
            const size_t idx = static_cast<size_t>(k0) * cols + k1;
            if (mm == 0.0) {
                s11[idx] = s12[idx] = s21[idx] = 0.0;
                continue;
            }
            const double band = band_symbol(j, std::sqrt(mm) / (2.0 * L));
            const std::complex<double> v = base[idx] * band;
            s11[idx] = v * (m0 * m1 / mm);
            s12[idx] = v * (m1 * m1 / mm);
            s21[idx] = v * (-m0 * m0 / mm);
        }
    }
    const Grid2D f11 = fft_inverse(std::move(s11), n, L, norm_scale);
    const Grid2D f12 = fft_inverse(std::move(s12), n, L, norm_scale);
    const Grid2D f21 = fft_inverse(std::move(s21), n, L, norm_scale);

    double sup = 0.0;
    for (size_t i = 0; i < f11.values.size(); ++i) {
        const double p = f11.values[i], q = f12.values[i], r = f21.values[i];
        const double fro2 = 2.0 * p * p + q * q + r * r;
        const double det = -p * p - q * r;
        const double disc = std::max(fro2 * fro2 - 4.0 * det * det, 0.0);
        const double sigma2 = 0.5 * (fro2 + std::sqrt(disc));
        sup = std::max(sup, std::sqrt(sigma2));
    }
    return sup;
}

} // namespace

BandSpectrum gradient_bands_from_vorticity(const Grid2D& omega) {
    require_zero_mean(omega);
    const Spectrum base = fft_forward(omega);
    const int J = grid_max_band(omega);

    BandSpectrum result;
    result.band_sup.assign(static_cast<size_t>(J) + 1, 0.0);
    for (int j = 0; j <= J; ++j) {
        const double sup = band_gradient_sup(base, omega.n, omega.L, j);
        result.band_sup[j] = sup;
        result.N_estimate += sup;
        result.sup_band = std::max(result.sup_band, sup);
    }
    return result;
}

double gradient_band_sup(const Grid2D& omega, int j) {
    require_zero_mean(omega);
    return band_gradient_sup(fft_forward(omega), omega.n, omega.L, j);
}

Grid2D band_window_field(const Grid2D& omega, int j, int logn_bands) {
    if (logn_bands < 1) throw std::invalid_argument("band window width must be at least 1");
    const int hi = j + logn_bands;
    const int lo = j - logn_bands;
    Spectrum spec = fft_forward(omega);
    apply_radial_symbol(spec, omega.n, omega.L, [hi, lo](double xi) {
        return average_symbol(hi, xi) - average_symbol(lo, xi);
    });
    return fft_inverse(std::move(spec), omega.n, omega.L,
                       1.0 / (static_cast<double>(omega.n) * omega.n));
}

Grid2D spectral_oversample(const Grid2D& grid, int factor) {
    if (factor < 1) throw std::invalid_argument("oversample factor must be positive");
    const int n = grid.n;
    const int fn = n * factor;
    if (factor == 1) return grid;

    Spectrum coarse = fft_forward(grid);
    Spectrum fine(static_cast<size_t>(fn) * (fn / 2 + 1), 0.0);
    const int cols = n / 2 + 1;
    const int fcols = fn / 2 + 1;
    for (int k0 = 0; k0 < n; ++k0) {
        if (k0 == n / 2) continue; // drop the axis Nyquist line
        const int m0 = row_freq(k0, n);
        const int fk0 = m0 >= 0 ? m0 : fn + m0;
        for (int k1 = 0; k1 < n / 2; ++k1) {
            fine[static_cast<size_t>(fk0) * fcols + k1] =
                coarse[static_cast<size_t>(k0) * cols + k1];
        }
    }
    return fft_inverse(std::move(fine), fn, grid.L, 1.0 / (static_cast<double>(n) * n));
}

double interpolate_periodic(const Grid2D& grid, Vec2 x) {
    // Degree-5 Lagrange on the 6-point stencil around the target cell.
    static const double denom[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
    const int n = grid.n;
    const double h = grid.spacing();

    const auto axis = [&](double coord, int* idx, double* w) {
        const double u = (coord + grid.L) / h;
        const double base = std::floor(u);
        const double frac = u - base;
        const int ib = static_cast<int>(base);
        for (int k = -2; k <= 3; ++k) {
            double num = 1.0;
            for (int m = -2; m <= 3; ++m) {
                if (m != k) num *= frac - m;
            }
            w[k + 2] = num / denom[k + 2];
            idx[k + 2] = ((ib + k) % n + n) % n;
        }
    };

    int ip[6], iq[6];
    double wp[6], wq[6];
    axis(x.x, ip, wp);
    axis(x.y, iq, wq);

    double value = 0.0;
    for (int a = 0; a < 6; ++a) {
        double row = 0.0;
        for (int b = 0; b < 6; ++b) row += wq[b] * grid.at(ip[a], iq[b]);
        value += wp[a] * row;
    }
    return value;
}

std::vector<double> spectral_sample(const Grid2D& grid, const std::vector<Vec2>& points,
                                    int oversample) {
    const Grid2D fine = spectral_oversample(grid, oversample);
    std::vector<double> out;
    out.reserve(points.size());
    for (const Vec2& p : points) out.push_back(interpolate_periodic(fine, p));
    return out;
}

BandVorticity build_band_vorticity(const Grid2D& omega, int j, int logn_bands,
                                   const AnnulusQuadrature& quad) {
    if (quad.j != j) throw std::invalid_argument("band/quadrature scale mismatch");
    const double corner = std::sqrt(2.0) * grid_nyquist(omega);
    if (j - logn_bands >= 1 && std::ldexp(1.0, j - logn_bands - 1) >= corner) {
        // The window's lower edge already saturates on every representable
        // mode, so the result would be identically zero.
        throw std::invalid_argument("scale unresolvable at this resolution");
    }

    const Grid2D windowed = band_window_field(omega, j, logn_bands);
    const Grid2D fine = spectral_oversample(windowed, 4);

    BandVorticity band;
    band.j = j;
    band.node_values.reserve(quad.nodes.size());
    double sup = 0.0;
    for (const Vec2& p : quad.nodes) {
        const double v = interpolate_periodic(fine, p);
        band.node_values.push_back(v);
        sup = std::max(sup, std::abs(v));
    }

    // Tighten the sup with fine-grid values inside the annulus.
    const double r_in = quad.inner_radius();
    const double r_out = quad.outer_radius();
    const int fn = fine.n;
    const double h = fine.spacing();
    const int lo = std::max(0, static_cast<int>((-r_out + fine.L) / h) - 1);
    const int hi_idx = std::min(fn - 1, static_cast<int>((r_out + fine.L) / h) + 1);
    for (int p = lo; p <= hi_idx; ++p) {
        const double xp = fine.coord(p);
        for (int q = lo; q <= hi_idx; ++q) {
            const double yq = fine.coord(q);
            const double r = std::hypot(xp, yq);
            if (r >= r_in && r < r_out) {
                sup = std::max(sup, std::abs(fine.at(p, q)));
            }
        }
    }
    band.sup_norm = sup;
    return band;
}

} // namespace cascade
