#ifndef CASCADE_REPORT_HPP
#define CASCADE_REPORT_HPP

#include <string>
#include <vector>

#include "cascade/cascade.hpp"
#include "cascade/config.hpp"
#include "cascade/diagnostics.hpp"
#include "cascade/littlewood_paley.hpp"

namespace cascade {

struct ScaleFitSummary {
    int j = 0;
    std::string classification;
    double exp_rate = 0.0;
    double exp_residual = 0.0;
    double dbl_slope = 0.0;
    double dbl_residual = 0.0;
    int points_used = 0;
};

struct RunReport {
    ExperimentConfig config;
    double N_used = 0.0;
    double N_estimate = 0.0;
    double T = 0.0;
    long steps = 0;
    long renormalizations = 0;
    double wall_time_s = 0.0;
    double max_det_drift = 0.0;
    std::vector<double> final_sigma_max;
    std::vector<ScaleFitSummary> fits;
    BandSpectrum spectrum;
};

/// Writes trajectory.csv (one row per sample and scale, 17 significant
/// digits), report.json, and bands.csv into dir.
void write_trajectory(const Trajectory& traj, const RunReport& report, const std::string& dir);

std::string report_to_json(const RunReport& report);

/// CSV text of per-band gradient sup norms plus the final N_estimate row;
/// shared by bands.csv and the decompose subcommand.
std::string spectrum_to_csv(const BandSpectrum& spectrum);

} // namespace cascade

#endif
