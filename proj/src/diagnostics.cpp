#include "cascade/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

double operator_norm(const Sl2Matrix& h) {
    const double fro2 = h.a * h.a + h.b * h.b + h.c * h.c + h.d * h.d;
    const double det = h.det();
    const double disc = std::max(fro2 * fro2 - 4.0 * det * det, 0.0);
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

GrowthSeries growth_metrics(const Trajectory& traj) {
    if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");
    const size_t J = traj.samples.front().h.size();
    const size_t S = traj.samples.size();

    GrowthSeries g;
    g.times.reserve(S);
    g.sigma_max.assign(J, {});
    g.frobenius.assign(J, {});
    g.det_drift.assign(J, {});
    g.gen_norm.assign(J, {});
    g.sum_contrib_norm.reserve(S);

    for (const TrajectorySample& s : traj.samples) {
        g.times.push_back(s.t);
        TraceFreeMatrix prefix;
        double contrib_sum = 0.0;
        for (size_t j = 0; j < J; ++j) {
            g.sigma_max[j].push_back(operator_norm(s.h[j]));
            g.frobenius[j].push_back(s.h[j].frobenius());
            g.det_drift[j].push_back(std::abs(s.h[j].det() - 1.0));
            g.gen_norm[j].push_back(prefix.frobenius());
            prefix = prefix + s.contribs[j];
            contrib_sum += s.contribs[j].frobenius();
        }
        g.sum_contrib_norm.push_back(contrib_sum);
    }
    return g;
}

std::string to_string(GrowthModel model) {
    switch (model) {
        case GrowthModel::none: return "no_growth";
        case GrowthModel::single_exp: return "single_exp";
        case GrowthModel::double_exp: return "double_exp";
    }
    return "unknown";
}

double fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("need at least two points to fit");
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate abscissae in line fit");
    slope = sxy / sxx;
    intercept = my - slope * mx;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        ss += r * r;
    }
    return std::sqrt(ss / n);
}

FitReport doubleexp_fit(const GrowthSeries& series, int j) {
    if (j < 0 || static_cast<size_t>(j) >= series.sigma_max.size()) {
        throw std::invalid_argument("scale index out of range");
    }
    const std::vector<double>& sigma = series.sigma_max[j];

    // log log is singular at sigma = 1; near-identity samples carry no signal.
    constexpr double kThreshold = 1.0 + 1e-6;
    std::vector<double> t, log_sigma, loglog_sigma;
    for (size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > kThreshold) {
            t.push_back(series.times[i]);
            log_sigma.push_back(std::log(sigma[i]));
            loglog_sigma.push_back(std::log(std::log(sigma[i])));
        }
    }

    FitReport report;
    report.points_used = static_cast<int>(t.size());
    if (t.size() < 2 || 2 * t.size() < sigma.size()) {
        report.preferred = GrowthModel::none;
        return report;
    }

    report.dbl_residual = fit_line(t, loglog_sigma, report.dbl_slope, report.dbl_intercept);
    report.exp_residual = fit_line(t, log_sigma, report.exp_rate, report.exp_intercept);
    report.preferred = report.dbl_residual < report.exp_residual ? GrowthModel::double_exp
                                                                 : GrowthModel::single_exp;
    return report;
}

namespace {

// RK4 for the coupled pair (w, v); the forcing difference switches off at
// t1 = 1/N, so the integration is split there to keep the right-hand side
// smooth on each segment.
void integrate_pair(double N, double E, double t_begin, double t_end, int steps, double& w,
                    double& v, double& max_diff) {
    if (steps < 1) steps = 1;
    const double dt = (t_end - t_begin) / steps;
    const double g1 = 1.0; // G1; only the difference G1 - G2 = E matters
    const double g2 = 1.0 - E;
    const bool forced = t_begin < 1.0 / N;
    for (int i = 0; i < steps; ++i) {
        const auto f = [&](double w_, double v_, double& dw, double& dv) {
            dw = N * w_ + g1;
            dv = N * v_ + (forced ? g2 : g1);
        };
        double k1w, k1v, k2w, k2v, k3w, k3v, k4w, k4v;
        f(w, v, k1w, k1v);
        f(w + 0.5 * dt * k1w, v + 0.5 * dt * k1v, k2w, k2v);
        f(w + 0.5 * dt * k2w, v + 0.5 * dt * k2v, k3w, k3v);
        f(w + dt * k3w, v + dt * k3v, k4w, k4v);
        w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        max_diff = std::max(max_diff, std::abs(w - v));
    }
}

} // namespace

GronwallCase gronwall_case(double N, double E, int num_steps) {
    if (N < 16.0) throw std::invalid_argument("gronwall harness needs N >= 16");
    if (E < 0.0) throw std::invalid_argument("forcing difference must be non-negative");

    const double T = 0.09 * std::log(N) / N;
    const double t1 = std::min(1.0 / N, T);

    GronwallCase result;
    result.N = N;
    result.E = E;

    double w = 1.0, v = 1.0, max_diff = 0.0;
    const int steps1 = std::max(1, static_cast<int>(num_steps * t1 / T));
    integrate_pair(N, E, 0.0, t1, steps1, w, v, max_diff);
    if (t1 < T) {
        integrate_pair(N, E, t1, T, std::max(1, num_steps - steps1), w, v, max_diff);
    }

    result.max_diff = max_diff;
    result.final_diff = std::abs(w - v);
    result.bound = 10.0 * E * std::pow(N, -0.9 - 0.01);
    result.within_bound = result.final_diff <= result.bound;
    return result;
}

GronwallReport gronwall_harness(double E, int num_steps, std::vector<double> Ns) {
    if (!(E > 0.0)) throw std::invalid_argument("forcing difference must be positive");
    if (Ns.size() < 2) throw std::invalid_argument("need at least two N values for the slope");
    GronwallReport report;
    std::vector<double> logN, log_ratio, log_envelope;
    bool all_in_bound = true;
    for (double N : Ns) {
        GronwallCase c = gronwall_case(N, E, num_steps);
        all_in_bound = all_in_bound && c.within_bound;
        logN.push_back(std::log(N));
        log_ratio.push_back(std::log(c.max_diff / E));
        log_envelope.push_back(std::log((c.max_diff + E / N) / E));
        report.cases.push_back(c);
    }
    double intercept = 0.0;
    fit_line(logN, log_ratio, report.slope, intercept);
    fit_line(logN, log_envelope, report.envelope_slope, intercept);
    report.pass = all_in_bound && report.slope <= -0.9 + 0.05;
    return report;
}

} // namespace cascade
