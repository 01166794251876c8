#include "cascade/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cascade {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid2D::Grid2D(int n_, double L_) : n(n_), L(L_) {
    if (!is_power_of_two(n_)) throw std::invalid_argument("grid size must be a power of two");
    if (!(L_ > 0.0)) throw std::invalid_argument("grid half-width must be positive");
    values.assign(static_cast<size_t>(n_) * n_, 0.0);
}

double Grid2D::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double Grid2D::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void byteswap_doubles(std::vector<double>& v) {
    for (double& d : v) {
        uint64_t u;
        std::memcpy(&u, &d, 8);
        u = __builtin_bswap64(u);
        std::memcpy(&d, &u, 8);
    }
}

} // namespace

void write_grid(const Grid2D& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char header[128];
    std::snprintf(header, sizeof(header), "grid2d n=%d L=%.17g dtype=f64\n", grid.n, grid.L);
    out << header;
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(grid.values.data()),
                  static_cast<std::streamsize>(grid.values.size() * 8));
    } else {
        std::vector<double> tmp = grid.values;
        byteswap_doubles(tmp);
        out.write(reinterpret_cast<const char*>(tmp.data()),
                  static_cast<std::streamsize>(tmp.size() * 8));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Grid2D read_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::string header;
    std::getline(in, header);
    int n = 0;
    double L = 0.0;
    if (std::sscanf(header.c_str(), "grid2d n=%d L=%lf dtype=f64", &n, &L) != 2) {
        throw std::runtime_error("bad field header in " + path);
    }
    Grid2D grid(n, L);
    in.read(reinterpret_cast<char*>(grid.values.data()),
            static_cast<std::streamsize>(grid.values.size() * 8));
    if (in.gcount() != static_cast<std::streamsize>(grid.values.size() * 8)) {
        throw std::runtime_error("truncated field file: " + path);
    }
    if constexpr (std::endian::native != std::endian::little) {
        byteswap_doubles(grid.values);
    }
    for (double v : grid.values) {
        if (!std::isfinite(v)) throw std::runtime_error("non-finite sample in " + path);
    }
    return grid;
}

} // namespace cascade
