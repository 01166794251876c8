#include "cascade/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cascade/config.hpp"
#include "cascade/grid.hpp"
#include "cascade/littlewood_paley.hpp"
#include "cascade/presets.hpp"
#include "cascade/report.hpp"
#include "cascade/runner.hpp"
#include "cascade/validation.hpp"

namespace cascade {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

double parse_sweep_value(const std::string& token) {
    if (token.rfind("2^", 0) == 0) {
        return std::pow(2.0, std::stod(token.substr(2)));
    }
    return std::stod(token);
}

SweepAxis parse_vary(const std::string& spec) {
    const size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--vary expects KEY=V1,V2,...  got '" + spec + "'");
    }
    SweepAxis axis;
    axis.key = spec.substr(0, eq);
    size_t pos = eq + 1;
    while (pos <= spec.size()) {
        const size_t comma = spec.find(',', pos);
        const std::string token =
            spec.substr(pos, (comma == std::string::npos ? spec.size() : comma) - pos);
        if (token.empty()) throw ConfigError("empty value in --vary '" + spec + "'");
        try {
            axis.values.push_back(parse_sweep_value(token));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse sweep value '" + token + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return axis;
}

std::string resolve_out_dir(const std::string& cli_out, const ExperimentConfig& cfg) {
    if (!cli_out.empty()) return cli_out;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    throw ConfigError("output directory required (--out or config key 'output_dir')");
}

void print_run_summary(const RunReport& report) {
    std::printf("N=%g (estimate %.6g)  T=%.6g  steps=%ld  renormalizations=%ld  wall=%.2fs\n",
                report.N_used, report.N_estimate, report.T, report.steps,
                report.renormalizations, report.wall_time_s);
    std::printf("max |det h - 1| = %.3g\n", report.max_det_drift);
    for (size_t j = 0; j < report.final_sigma_max.size(); ++j) {
        const ScaleFitSummary& fit = report.fits[j];
        std::printf("  j=%zu  sigma_max(T)=%.9g  growth=%s", j, report.final_sigma_max[j],
                    fit.classification.c_str());
        if (fit.classification == "single_exp") {
            std::printf("  rate=%.6g", fit.exp_rate);
        } else if (fit.classification == "double_exp") {
            std::printf("  loglog_slope=%.6g", fit.dbl_slope);
        }
        std::printf("\n");
    }
}

int cmd_run(const std::string& config_path, const std::string& out) {
    const ExperimentConfig cfg = load_config_file(config_path);
    const std::string dir = resolve_out_dir(out, cfg);
    const RunOutput result = execute_run(cfg, dir);
    print_run_summary(result.report);
    std::printf("wrote %s/{trajectory.csv,report.json,bands.csv}\n", dir.c_str());
    return kExitOk;
}

int cmd_decompose(const std::string& field, int grid_n) {
    Grid2D omega;
    if (std::filesystem::exists(field)) {
        omega = read_grid(field);
    } else {
        bool preset = false;
        for (const std::string& name : preset_names()) preset = preset || name == field;
        if (!preset) {
            throw ConfigError("field file not found and not a preset name: " + field);
        }
        PresetParams params;
        const Grid2D probe(grid_n, 2.0);
        params.J = std::min(8, static_cast<int>(std::floor(std::log2(grid_nyquist(probe)))));
        omega = preset_vorticity(field, params, grid_n);
    }
    const BandSpectrum spectrum = gradient_bands_from_vorticity(omega);
    std::fputs(spectrum_to_csv(spectrum).c_str(), stdout);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& vary,
              const std::string& out) {
    const ExperimentConfig base = load_config_file(config_path);
    const std::string out_root = resolve_out_dir(out, base);
    std::vector<SweepAxis> axes;
    for (const std::string& spec : vary) axes.push_back(parse_vary(spec));

    const std::vector<SweepPoint> points = execute_sweep(base, axes, out_root);

    std::string csv = "label,status,N_used,T,steps,renormalizations,max_det_drift,max_sigma\n";
    bool all_ok = true;
    for (const SweepPoint& p : points) {
        if (p.ok) {
            double max_sigma = 1.0;
            for (double s : p.report.final_sigma_max) max_sigma = std::max(max_sigma, s);
            char line[256];
            std::snprintf(line, sizeof(line), "%s,ok,%.17g,%.17g,%ld,%ld,%.17g,%.17g\n",
                          p.label.c_str(), p.report.N_used, p.report.T, p.report.steps,
                          p.report.renormalizations, p.report.max_det_drift, max_sigma);
            csv += line;
            std::printf("done %-28s steps=%ld max_sigma=%.6g\n", p.label.c_str(),
                        p.report.steps, max_sigma);
        } else {
            all_ok = false;
            csv += p.label + ",error,,,,,,\n";
            std::printf("FAIL %-28s %s\n", p.label.c_str(), p.error.c_str());
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(out_root, ec);
    const std::string summary_path = out_root + "/sweep_summary.csv";
    std::FILE* f = std::fopen(summary_path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot open for writing: " + summary_path);
    std::fputs(csv.c_str(), f);
    std::fclose(f);
    return all_ok ? kExitOk : kExitFailure;
}

int cmd_validate(bool quick) {
    const std::vector<CheckResult> results = run_validation_suite(quick);
    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::printf("%s  %-42s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitFailure;
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Multiscale SL(2) cascade model for 2D incompressible flow"};
    app.require_subcommand(1);

    std::string config_path, out_dir, field_path;
    int grid_n = 512;
    std::vector<std::string> vary;
    bool quick = false;

    CLI::App* s_run = app.add_subcommand("run", "integrate one configured experiment");
    s_run->add_option("--config", config_path, "JSON config path")->required();
    s_run->add_option("--out", out_dir, "output directory");

    CLI::App* s_dec = app.add_subcommand("decompose", "per-band gradient norms and N estimate");
    s_dec->add_option("--field", field_path, "field file path or preset name")->required();
    s_dec->add_option("--grid-n", grid_n, "grid size used for preset names");

    CLI::App* s_sweep = app.add_subcommand("sweep", "cartesian parameter sweep");
    s_sweep->add_option("--config", config_path, "JSON config path")->required();
    s_sweep->add_option("--vary", vary, "axis KEY=V1,V2,... (repeatable; 2^k accepted)")
        ->required();
    s_sweep->add_option("--out", out_dir, "output root directory");

    CLI::App* s_val = app.add_subcommand("validate", "run the analytic oracle suite");
    s_val->add_flag("--quick", quick, "reduced sizes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (s_run->parsed()) return cmd_run(config_path, out_dir);
        if (s_dec->parsed()) return cmd_decompose(field_path, grid_n);
        if (s_sweep->parsed()) return cmd_sweep(config_path, vary, out_dir);
        if (s_val->parsed()) return cmd_validate(quick);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitConfig;
}

} // namespace cascade
