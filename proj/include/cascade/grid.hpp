#ifndef CASCADE_GRID_HPP
#define CASCADE_GRID_HPP

#include <string>
#include <vector>

namespace cascade {

/// Periodic real field on [-L, L)^2, n x n row-major samples; sample (p, q)
/// sits at x = (-L + 2L p/n, -L + 2L q/n).  n must be a power of two.
struct Grid2D {
    int n = 0;
    double L = 2.0;
    std::vector<double> values;

    Grid2D() = default;
    Grid2D(int n_, double L_);

    double& at(int p, int q) { return values[static_cast<size_t>(p) * n + q]; }
    double at(int p, int q) const { return values[static_cast<size_t>(p) * n + q]; }

    double coord(int index) const { return -L + 2.0 * L * index / n; }
    double spacing() const { return 2.0 * L / n; }

    double mean() const;
    double max_abs() const;
};

bool is_power_of_two(int n);

/// Binary field format: one text header line
///   grid2d n=<n> L=<L> dtype=f64\n
/// followed by n^2 little-endian doubles, row-major.
void write_grid(const Grid2D& grid, const std::string& path);
Grid2D read_grid(const std::string& path);

} // namespace cascade

#endif
