#ifndef CASCADE_RUNNER_HPP
#define CASCADE_RUNNER_HPP

#include <string>
#include <vector>

#include "cascade/config.hpp"
#include "cascade/report.hpp"

namespace cascade {

struct RunOutput {
    RunReport report;
    Trajectory trajectory;
};

/// The input field named by the config: a preset or a field file.
Grid2D build_input_field(const ExperimentConfig& cfg);

/// Full pipeline: input field, band spectrum and N, annulus quadratures,
/// band vorticities, cascade integration, growth diagnostics; optionally
/// writes trajectory.csv / report.json / bands.csv into out_dir.
RunOutput execute_run(const ExperimentConfig& cfg, const std::string& out_dir,
                      bool write_files = true);

/// One sweep axis: a config key and the values it takes.
struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

struct SweepPoint {
    std::string label;
    std::string dir;
    ExperimentConfig config;
    bool ok = false;
    std::string error;
    RunReport report;
};

/// Cartesian product over the axes; each point runs in its own output
/// subdirectory on a worker pool bounded by CASCADE_THREADS.
std::vector<SweepPoint> execute_sweep(const ExperimentConfig& base,
                                      const std::vector<SweepAxis>& axes,
                                      const std::string& out_root);

ExperimentConfig apply_override(ExperimentConfig cfg, const std::string& key, double value);

} // namespace cascade

#endif
