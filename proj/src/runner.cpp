#include "cascade/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "cascade/diagnostics.hpp"
#include "cascade/grid.hpp"
#include "cascade/littlewood_paley.hpp"
#include "cascade/presets.hpp"

namespace cascade {

Grid2D build_input_field(const ExperimentConfig& cfg) {
    if (cfg.mode == "preset") {
        return preset_vorticity(cfg.preset, cfg.preset_params(), cfg.grid_n, cfg.L);
    }
    return read_grid(cfg.field_path);
}

RunOutput execute_run(const ExperimentConfig& cfg, const std::string& out_dir, bool write_files) {
    const auto t_begin = std::chrono::steady_clock::now();

    const Grid2D omega = build_input_field(cfg);
    const BandSpectrum spectrum = gradient_bands_from_vorticity(omega);

    double N_used = 0.0;
    if (cfg.N) {
        N_used = *cfg.N;
    } else {
        N_used = spectrum.N_estimate;
        if (!(N_used > 1.0)) {
            throw ConfigError("estimated N does not exceed 1; specify N explicitly");
        }
    }
    const ModelParams params = cfg.model_params(N_used);

    std::vector<AnnulusQuadrature> quads;
    std::vector<BandVorticity> bands;
    quads.reserve(params.J);
    bands.reserve(params.J);
    for (int j = 0; j < params.J; ++j) {
        quads.push_back(build_annulus_quadrature(j, params.n_r, params.n_theta));
        bands.push_back(build_band_vorticity(omega, j, params.logn_bands, quads.back()));
    }

    RunOutput out;
    out.trajectory = run(params, bands, quads, cfg.sample_interval);

    const GrowthSeries series = growth_metrics(out.trajectory);
    RunReport& report = out.report;
    report.config = cfg;
    report.N_used = N_used;
    report.N_estimate = spectrum.N_estimate;
    report.T = params.horizon();
    report.steps = out.trajectory.steps;
    report.renormalizations = out.trajectory.renormalizations;
    report.spectrum = spectrum;
    for (int j = 0; j < params.J; ++j) {
        report.final_sigma_max.push_back(series.sigma_max[j].back());
        for (double drift : series.det_drift[j]) {
            report.max_det_drift = std::max(report.max_det_drift, drift);
        }
        const FitReport fit = doubleexp_fit(series, j);
        ScaleFitSummary summary;
        summary.j = j;
        summary.classification = to_string(fit.preferred);
        summary.exp_rate = fit.exp_rate;
        summary.exp_residual = fit.exp_residual;
        summary.dbl_slope = fit.dbl_slope;
        summary.dbl_residual = fit.dbl_residual;
        summary.points_used = fit.points_used;
        report.fits.push_back(summary);
    }

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    if (write_files) {
        write_trajectory(out.trajectory, report, out_dir);
    }
    return out;
}

ExperimentConfig apply_override(ExperimentConfig cfg, const std::string& key, double value) {
    const auto as_int = [&](int lo, int hi) {
        const int v = static_cast<int>(std::llround(value));
        if (v < lo || v > hi || v != value) {
            throw ConfigError("sweep value for '" + key + "' out of range");
        }
        return v;
    };
    if (key == "N") {
        if (!(value > 1.0)) throw ConfigError("N must exceed 1");
        cfg.N = value;
    } else if (key == "J") {
        cfg.J = as_int(1, 64);
    } else if (key == "C") {
        if (!(value > 0.0)) throw ConfigError("C must be positive");
        cfg.C = value;
    } else if (key == "tau") {
        if (!(value > 0.0)) throw ConfigError("tau must be positive");
        cfg.tau = value;
    } else if (key == "logN_bands") {
        cfg.logn_bands = as_int(1, 40);
    } else if (key == "n_r") {
        cfg.n_r = as_int(4, 512);
    } else if (key == "n_theta") {
        cfg.n_theta = as_int(8, 4096);
    } else if (key == "grid_n") {
        cfg.grid_n = as_int(16, 16384);
        if (!is_power_of_two(cfg.grid_n)) throw ConfigError("grid_n must be a power of two");
    } else if (key == "seed") {
        cfg.seed = static_cast<uint64_t>(as_int(0, 1 << 30));
    } else if (key == "sample_interval") {
        cfg.sample_interval = as_int(1, 1 << 20);
    } else {
        throw ConfigError("unknown sweep key '" + key + "'");
    }
    return cfg;
}

namespace {

std::string format_value(double v) {
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%g", v);
    }
    return buf;
}

int worker_count(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CASCADE_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) n = static_cast<unsigned>(parsed);
    }
    return static_cast<int>(std::min<size_t>(n, jobs));
}

} // namespace

std::vector<SweepPoint> execute_sweep(const ExperimentConfig& base,
                                      const std::vector<SweepAxis>& axes,
                                      const std::string& out_root) {
    if (axes.empty()) throw ConfigError("sweep needs at least one --vary axis");
    for (const SweepAxis& axis : axes) {
        if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.key + "' has no values");
    }

    std::vector<SweepPoint> points;
    std::vector<size_t> index(axes.size(), 0);
    while (true) {
        SweepPoint point;
        ExperimentConfig cfg = base;
        std::string label;
        for (size_t a = 0; a < axes.size(); ++a) {
            const double value = axes[a].values[index[a]];
            cfg = apply_override(cfg, axes[a].key, value);
            if (!label.empty()) label += "_";
            label += axes[a].key + "=" + format_value(value);
        }
        point.label = label;
        point.dir = out_root + "/" + label;
        point.config = cfg;
        points.push_back(point);

        size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++index[a] < axes[a].values.size()) break;
            index[a] = 0;
        }
        if (a == axes.size()) break;
    }

    std::atomic<size_t> next{0};
    const int workers = worker_count(points.size());
    const auto work = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            SweepPoint& point = points[i];
            try {
                point.report = execute_run(point.config, point.dir, true).report;
                point.ok = true;
            } catch (const std::exception& e) {
                point.ok = false;
                point.error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    return points;
}

} // namespace cascade
