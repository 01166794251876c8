#ifndef CASCADE_PRESETS_HPP
#define CASCADE_PRESETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/grid.hpp"

namespace cascade {

struct PresetParams {
    int J = 8;              // random_bands: number of calibrated bands
    uint64_t seed = 42;     // random_bands: noise seed
    int support_j = 1;      // quadrupole: annulus A_j carrying the pattern
    double amplitude = 1.0; // overall scale
};

const std::vector<std::string>& preset_names();

/// Initial vorticity fields, all supported in the unit disk with zero grid
/// mean:
///   radial       f(|x|) core bump plus a compensating annular ring
///   quadrupole   cos(2 theta) on the annulus A_{support_j}
///   odd_odd      x1 x2 times a radial envelope (odd in each coordinate)
///   random_bands sum of band-limited noise profiles, one per scale,
///                scaled so each ||P_j grad u||_inf is close to 1
Grid2D preset_vorticity(const std::string& name, const PresetParams& params, int n,
                        double L = 2.0);

} // namespace cascade

#endif
