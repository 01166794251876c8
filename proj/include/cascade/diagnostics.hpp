#ifndef CASCADE_DIAGNOSTICS_HPP
#define CASCADE_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "cascade/cascade.hpp"
#include "cascade/sl2.hpp"

namespace cascade {

/// Largest singular value from the 2x2 closed form; >= 1 (up to rounding)
/// for unit-determinant input.
double operator_norm(const Sl2Matrix& h);

/// Growth observables per sample and scale.  sigma_max is the primary
/// observable; sigma_max * sigma_min recovers |det| rather than being >= 1.
struct GrowthSeries {
    std::vector<double> times;
    // Indexed [scale][sample].
    std::vector<std::vector<double>> sigma_max;
    std::vector<std::vector<double>> frobenius;
    std::vector<std::vector<double>> det_drift;
    std::vector<std::vector<double>> gen_norm; // ||M_j||_F
    std::vector<double> sum_contrib_norm;      // sum_k ||c_k||_F per sample
};

GrowthSeries growth_metrics(const Trajectory& traj);

enum class GrowthModel { none, single_exp, double_exp };

struct FitReport {
    GrowthModel preferred = GrowthModel::none;
    int points_used = 0;
    // log log sigma = slope * t + intercept
    double dbl_slope = 0.0;
    double dbl_intercept = 0.0;
    double dbl_residual = 0.0;
    // log sigma = rate * t + intercept
    double exp_rate = 0.0;
    double exp_intercept = 0.0;
    double exp_residual = 0.0;
};

std::string to_string(GrowthModel model);

/// Classifies the growth of sigma_max(h_j): fits log log sigma and log sigma
/// against t on the samples with sigma > 1 + 1e-6 and prefers the model with
/// the smaller RMS residual.  Fewer than half the samples above the
/// threshold means there is no growth signal to classify.
FitReport doubleexp_fit(const GrowthSeries& series, int j);

/// One comparison run of the scalar pair dw/dt = N w + G1, dv/dt = N v + G2
/// with w(0) = v(0), G1 - G2 = E for t <= 1/N and 0 afterwards, integrated
/// to T = 0.09 log(N) / N.
struct GronwallCase {
    double N = 0.0;
    double E = 0.0;
    double max_diff = 0.0;
    double final_diff = 0.0;
    double bound = 0.0; // 10 E N^(-9/10 - 1/100)
    bool within_bound = false;
};

GronwallCase gronwall_case(double N, double E, int num_steps);

struct GronwallReport {
    std::vector<GronwallCase> cases;
    double slope = 0.0; // log(max|w-v|/E) vs log N
    // Slope of log((max|w-v| + E/N)/E) vs log N.  The horizon satisfies
    // N T = 0.09 log N < 1 for every swept N, so max|w-v| = (E/N)(e^(NT)-1)
    // exactly; adding back the E/N recovers the (E/N)e^(NT) envelope whose
    // scaling is N^(-0.91) on the nose.
    double envelope_slope = 0.0;
    bool pass = false; // every case in bound and slope <= -0.85
};

GronwallReport gronwall_harness(double E, int num_steps,
                                std::vector<double> Ns = {256.0, 1024.0, 4096.0, 16384.0});

/// Least-squares line fit y = slope x + intercept; returns RMS residual.
double fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept);

} // namespace cascade

#endif
