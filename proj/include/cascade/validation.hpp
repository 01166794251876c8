#ifndef CASCADE_VALIDATION_HPP
#define CASCADE_VALIDATION_HPP

#include <string>
#include <vector>

#include "cascade/sl2.hpp"

namespace cascade {

/// Truncated power series for exp(tA) with scaling and squaring; reference
/// route kept independent of the closed-form sl2_exp it cross-checks.
Sl2Matrix matrix_exp_series(Sl2Generator gen, double t, int terms = 24);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Analytic oracle suite behind the `validate` subcommand: exponential
/// cross-check, quadrature weights, kernel integrals, partition of unity,
/// closed-form trajectory, integrator order, Gronwall scaling, radial null.
std::vector<CheckResult> run_validation_suite(bool quick);

} // namespace cascade

#endif
