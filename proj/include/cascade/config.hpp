#ifndef CASCADE_CONFIG_HPP
#define CASCADE_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "cascade/cascade.hpp"
#include "cascade/presets.hpp"

namespace cascade {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what, int line_ = 0, int col_ = 0)
        : std::runtime_error(what), line(line_), col(col_) {}
    int line = 0;
    int col = 0;
};

/// One experiment: input selection (preset or field file) plus the model
/// parameters and output policy.  N may be left unset, in which case the
/// band estimate of the input field is used.
struct ExperimentConfig {
    std::string mode;       // "preset" | "field"
    std::string preset;     // mode == preset
    std::string field_path; // mode == field
    int support_j = 1;      // quadrupole pattern scale
    double amplitude = 1.0;

    int grid_n = 512;
    double L = 2.0;

    std::optional<double> N;
    int J = 0;
    double C = 0.09;
    double tau = 0.01;
    std::optional<int> logn_bands; // default: ceil(log2 N)
    int n_r = 24;
    int n_theta = 96;
    std::string log_base_horizon = "e"; // "e" | "2"
    uint64_t seed = 42;
    int sample_interval = 1;
    std::string output_dir;

    bool operator==(const ExperimentConfig&) const = default;

    ModelParams model_params(double N_used) const;
    PresetParams preset_params() const;
};

/// Parses and validates a JSON config; unknown keys are rejected and range
/// violations name the key and its legal range.  Throws ConfigError with
/// line/column on syntax errors.
ExperimentConfig parse_config(const std::string& text);

std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::string& path);

} // namespace cascade

#endif
