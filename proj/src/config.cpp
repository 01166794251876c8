#include "cascade/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cascade/grid.hpp"

namespace cascade {

using nlohmann::json;

ModelParams ExperimentConfig::model_params(double N_used) const {
    ModelParams p;
    p.N = N_used;
    p.J = J;
    p.C = C;
    p.tau = tau;
    p.logn_bands = logn_bands ? *logn_bands : default_logn_bands(N_used);
    p.n_r = n_r;
    p.n_theta = n_theta;
    p.log_base_horizon = log_base_horizon == "2" ? LogBase::two : LogBase::natural;
    p.seed = seed;
    return p;
}

PresetParams ExperimentConfig::preset_params() const {
    PresetParams p;
    p.J = J;
    p.seed = seed;
    p.support_j = support_j;
    p.amplitude = amplitude;
    return p;
}

namespace {

void locate(const std::string& text, size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

[[noreturn]] void range_error(const std::string& message) { throw ConfigError(message); }

double get_number(const json& j, const std::string& key) {
    if (!j.at(key).is_number()) range_error("key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key) {
    if (!j.at(key).is_number_integer()) range_error("key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

std::string get_string(const json& j, const std::string& key) {
    if (!j.at(key).is_string()) range_error("key '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 0, col = 0;
        locate(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        std::ostringstream msg;
        msg << "config syntax error at line " << line << ", column " << col;
        throw ConfigError(msg.str(), line, col);
    }
    if (!root.is_object()) throw ConfigError("config must be a JSON object");

    static const std::set<std::string> known = {
        "mode",   "preset", "field_path", "support_j",        "amplitude",
        "grid_n", "L",      "N",          "J",                "C",
        "tau",    "logN_bands",           "n_r",              "n_theta",
        "log_base_horizon", "seed",       "sample_interval",  "output_dir"};
    for (const auto& item : root.items()) {
        if (!known.count(item.key())) {
            throw ConfigError("unknown config key '" + item.key() + "'");
        }
    }

    ExperimentConfig cfg;
    if (!root.contains("mode")) range_error("missing required key 'mode'");
    cfg.mode = get_string(root, "mode");
    if (cfg.mode != "preset" && cfg.mode != "field") {
        range_error("mode must be 'preset' or 'field'");
    }
    if (cfg.mode == "preset") {
        if (!root.contains("preset")) range_error("mode 'preset' requires key 'preset'");
        if (root.contains("field_path")) range_error("mode 'preset' forbids key 'field_path'");
        cfg.preset = get_string(root, "preset");
        bool ok = false;
        for (const std::string& name : preset_names()) ok = ok || name == cfg.preset;
        if (!ok) range_error("unknown preset '" + cfg.preset + "'");
    } else {
        if (!root.contains("field_path")) range_error("mode 'field' requires key 'field_path'");
        if (root.contains("preset")) range_error("mode 'field' forbids key 'preset'");
        cfg.field_path = get_string(root, "field_path");
    }

    if (!root.contains("J")) range_error("missing required key 'J'");
    cfg.J = get_int(root, "J");
    if (cfg.J < 1 || cfg.J > 64) range_error("J must be in [1, 64]");

    if (root.contains("N")) {
        cfg.N = get_number(root, "N");
        if (!(*cfg.N > 1.0)) range_error("N must exceed 1");
    }
    if (root.contains("C")) {
        cfg.C = get_number(root, "C");
        if (!(cfg.C > 0.0)) range_error("C must be positive");
    }
    if (root.contains("tau")) {
        cfg.tau = get_number(root, "tau");
        if (!(cfg.tau > 0.0)) range_error("tau must be positive");
    }
    if (root.contains("logN_bands")) {
        cfg.logn_bands = get_int(root, "logN_bands");
        if (*cfg.logn_bands < 1 || *cfg.logn_bands > 40) {
            range_error("logN_bands must be in [1, 40]");
        }
    }
    if (root.contains("n_r")) {
        cfg.n_r = get_int(root, "n_r");
        if (cfg.n_r < 4 || cfg.n_r > 512) range_error("n_r must be in [4, 512]");
    }
    if (root.contains("n_theta")) {
        cfg.n_theta = get_int(root, "n_theta");
        if (cfg.n_theta < 8 || cfg.n_theta > 4096) range_error("n_theta must be in [8, 4096]");
    }
    if (root.contains("log_base_horizon")) {
        cfg.log_base_horizon = get_string(root, "log_base_horizon");
        if (cfg.log_base_horizon != "e" && cfg.log_base_horizon != "2") {
            range_error("log_base_horizon must be 'e' or '2'");
        }
    }
    if (root.contains("seed")) {
        if (!root.at("seed").is_number_integer()) range_error("key 'seed' must be an integer");
        cfg.seed = root.at("seed").get<uint64_t>();
    }
    if (root.contains("sample_interval")) {
        cfg.sample_interval = get_int(root, "sample_interval");
        if (cfg.sample_interval < 1) range_error("sample_interval must be at least 1");
    }
    if (root.contains("grid_n")) {
        cfg.grid_n = get_int(root, "grid_n");
        if (!is_power_of_two(cfg.grid_n) || cfg.grid_n < 16 || cfg.grid_n > 16384) {
            range_error("grid_n must be a power of two in [16, 16384]");
        }
    }
    if (root.contains("L")) {
        cfg.L = get_number(root, "L");
        if (!(cfg.L > 0.0)) range_error("L must be positive");
    }
    if (root.contains("support_j")) {
        cfg.support_j = get_int(root, "support_j");
        if (cfg.support_j < 1 || cfg.support_j > 20) range_error("support_j must be in [1, 20]");
    }
    if (root.contains("amplitude")) {
        cfg.amplitude = get_number(root, "amplitude");
        if (!(cfg.amplitude > 0.0)) range_error("amplitude must be positive");
    }
    if (root.contains("output_dir")) cfg.output_dir = get_string(root, "output_dir");
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json root;
    root["mode"] = cfg.mode;
    if (cfg.mode == "preset") {
        root["preset"] = cfg.preset;
    } else {
        root["field_path"] = cfg.field_path;
    }
    root["support_j"] = cfg.support_j;
    root["amplitude"] = cfg.amplitude;
    root["grid_n"] = cfg.grid_n;
    root["L"] = cfg.L;
    if (cfg.N) root["N"] = *cfg.N;
    root["J"] = cfg.J;
    root["C"] = cfg.C;
    root["tau"] = cfg.tau;
    if (cfg.logn_bands) root["logN_bands"] = *cfg.logn_bands;
    root["n_r"] = cfg.n_r;
    root["n_theta"] = cfg.n_theta;
    root["log_base_horizon"] = cfg.log_base_horizon;
    root["seed"] = cfg.seed;
    root["sample_interval"] = cfg.sample_interval;
    if (!cfg.output_dir.empty()) root["output_dir"] = cfg.output_dir;
    return root.dump(2) + "\n";
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace cascade
