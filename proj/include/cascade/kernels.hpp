#ifndef CASCADE_KERNELS_HPP
#define CASCADE_KERNELS_HPP

#include "cascade/annulus.hpp"
#include "cascade/sl2.hpp"

namespace cascade {

/// Off-diagonal Biot-Savart kernel K12(x) = x1 x2 / (pi |x|^4).
double kernel_K12(Vec2 x);

/// Diagonal Biot-Savart kernel K11(x) = (x2^2 - x1^2) / (2 pi |x|^4).
double kernel_K11(Vec2 x);

/// Model strain of scale j under the deformation h:
///   g_i = sum_q w_q * omega_q * K_1i(h s_q),
/// accumulated over nodes in a fixed order so trajectories are reproducible.
TraceFreeMatrix grad_u_model(const BandVorticity& band, const AnnulusQuadrature& quad,
                             const Sl2Matrix& h);

} // namespace cascade

#endif
