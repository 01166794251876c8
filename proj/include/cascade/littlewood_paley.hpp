#ifndef CASCADE_LITTLEWOOD_PALEY_HPP
#define CASCADE_LITTLEWOOD_PALEY_HPP

#include <vector>

#include "cascade/annulus.hpp"
#include "cascade/grid.hpp"
#include "cascade/sl2.hpp"

namespace cascade {

/// Smooth radial bump: 1 on [0, 1], 0 on [2, inf), exp(-1/x) transition
/// in between, with psi(1) = 1 and psi(2) = 0.
double bump_psi(double r);

/// Littlewood-Paley band multiplier psi_j.  j = 0 is the low-pass psi,
/// j >= 1 is supported on 2^(j-1) < |xi| < 2^(j+1), j < 0 is zero.
double band_symbol(int j, double xi_norm);
double band_symbol(int j, Vec2 xi);

/// Telescoped symbol of E_j = sum_{k<j} P_k; zero operator for j <= 0.
double average_symbol(int j, double xi_norm);

/// Per-axis Nyquist frequency n/(4L) of the grid's sampling lattice.
double grid_nyquist(const Grid2D& grid);

/// Smallest J with 2^J >= max |xi| over grid modes; bands 0..J partition
/// unity on every representable frequency.
int grid_max_band(const Grid2D& grid);

/// Spectral band projection P_j f.  Requires the band fully below the
/// axis Nyquist frequency (2^(j+1) < n/(4L)).
Grid2D apply_band(const Grid2D& f, int j);

/// Spectral averaging E_j f; same resolvability requirement as apply_band.
Grid2D apply_average(const Grid2D& f, int j);

/// Per-band sup norms of the velocity gradient recovered from vorticity.
struct BandSpectrum {
    std::vector<double> band_sup; // ||P_j grad u||_inf, j = 0..grid_max_band
    double N_estimate = 0.0;      // sum of band_sup
    double sup_band = 0.0;        // max over j, for the per-band assumption
};

/// Velocity-gradient band norms of a zero-mean vorticity field, computed
/// through the Biot-Savart multiplier matrix (+-xi_a xi_b / |xi|^2).
BandSpectrum gradient_bands_from_vorticity(const Grid2D& omega);

/// ||P_j grad u||_inf for a single band; same multiplier route as
/// gradient_bands_from_vorticity.
double gradient_band_sup(const Grid2D& omega, int j);

/// (E_{j+w} - E_{j-w}) omega on the grid; E with index <= 0 is the zero
/// operator, and indices above the Nyquist band saturate to the identity.
Grid2D band_window_field(const Grid2D& omega, int j, int logn_bands);

/// Zero-padded spectral refinement of the grid by an integer factor.
/// Modes on the axis Nyquist line are dropped.
Grid2D spectral_oversample(const Grid2D& grid, int factor);

/// Degree-5 Lagrange interpolation on a periodic grid.
double interpolate_periodic(const Grid2D& grid, Vec2 x);

/// Band-limited point samples: oversample then interpolate.
std::vector<double> spectral_sample(const Grid2D& grid, const std::vector<Vec2>& points,
                                    int oversample = 4);

/// omega_{0,j}: band-window the field, then sample it at the annulus
/// quadrature nodes of scale j (all inside A_j, so the cutoff is implicit).
BandVorticity build_band_vorticity(const Grid2D& omega, int j, int logn_bands,
                                   const AnnulusQuadrature& quad);

} // namespace cascade

#endif
