#include "cascade/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace cascade {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

std::string spectrum_to_csv(const BandSpectrum& spectrum) {
    std::string csv = "j,grad_u_band_sup\n";
    for (size_t j = 0; j < spectrum.band_sup.size(); ++j) {
        csv += std::to_string(j) + "," + fmt17(spectrum.band_sup[j]) + "\n";
    }
    csv += "N_estimate," + fmt17(spectrum.N_estimate) + "\n";
    return csv;
}

std::string report_to_json(const RunReport& report) {
    json root;
    root["config"] = json::parse(serialize_config(report.config));
    root["N_used"] = report.N_used;
    root["N_estimate"] = report.N_estimate;
    root["T"] = report.T;
    root["steps"] = report.steps;
    root["renormalizations"] = report.renormalizations;
    root["wall_time_s"] = report.wall_time_s;
    root["max_det_drift"] = report.max_det_drift;
    root["final_sigma_max"] = report.final_sigma_max;
    json fits = json::array();
    for (const ScaleFitSummary& f : report.fits) {
        fits.push_back({{"j", f.j},
                        {"classification", f.classification},
                        {"exp_rate", f.exp_rate},
                        {"exp_residual", f.exp_residual},
                        {"loglog_slope", f.dbl_slope},
                        {"loglog_residual", f.dbl_residual},
                        {"points_used", f.points_used}});
    }
    root["fits"] = fits;
    return root.dump(2) + "\n";
}

void write_trajectory(const Trajectory& traj, const RunReport& report, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);

    std::string csv = "t,j,h11,h12,h21,h22,det,sigma_max,gen_norm\n";
    for (const TrajectorySample& s : traj.samples) {
        TraceFreeMatrix prefix;
        for (size_t j = 0; j < s.h.size(); ++j) {
            const Sl2Matrix& h = s.h[j];
            csv += fmt17(s.t) + "," + std::to_string(j) + "," + fmt17(h.a) + "," + fmt17(h.b) +
                   "," + fmt17(h.c) + "," + fmt17(h.d) + "," + fmt17(h.det()) + "," +
                   fmt17(operator_norm(h)) + "," + fmt17(prefix.frobenius()) + "\n";
            prefix = prefix + s.contribs[j];
        }
    }
    write_file(dir + "/trajectory.csv", csv);
    write_file(dir + "/report.json", report_to_json(report));
    write_file(dir + "/bands.csv", spectrum_to_csv(report.spectrum));
}

} // namespace cascade
