#ifndef CASCADE_CASCADE_HPP
#define CASCADE_CASCADE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/annulus.hpp"
#include "cascade/kernels.hpp"
#include "cascade/sl2.hpp"

namespace cascade {

enum class LogBase { natural, two };

struct ModelParams {
    double N = 256.0;       // scale of the summed band norms, > 1
    int J = 8;              // number of dyadic scales
    double C = 0.09;        // horizon factor, T = C log(N) / N
    double tau = 0.01;      // step factor, dt = tau / N
    int logn_bands = 8;     // band window half-width, ceil(log2 N) by default
    int n_r = 24;
    int n_theta = 96;
    LogBase log_base_horizon = LogBase::natural;
    uint64_t seed = 42;

    double horizon() const;
    double step_size() const { return tau / N; }
};

int default_logn_bands(double N);

struct CascadeState {
    double t = 0.0;
    std::vector<Sl2Matrix> h;

    static CascadeState initial(int J) {
        CascadeState s;
        s.h.assign(static_cast<size_t>(J), Sl2Matrix::identity());
        return s;
    }
};

struct TrajectorySample {
    double t = 0.0;
    std::vector<Sl2Matrix> h;
    std::vector<TraceFreeMatrix> contribs; // c_k = strain of scale k at this state
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    long steps = 0;
    long renormalizations = 0;
};

struct BlowupError : std::runtime_error {
    BlowupError(const std::string& what, Trajectory partial_)
        : std::runtime_error(what), partial(std::move(partial_)) {}
    Trajectory partial;
};

/// Raised by step_rkmk4 when a stage stops being finite; run() translates
/// it into a BlowupError carrying the trajectory so far.
struct NumericalOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-scale strain contributions c_k = grad_u_model(band_k, quad_k, h_k).
std::vector<TraceFreeMatrix> strain_contributions(const CascadeState& state,
                                                  const std::vector<BandVorticity>& bands,
                                                  const std::vector<AnnulusQuadrature>& quads);

/// Right-hand-side generators M_j = sum_{k<j} c_k (prefix sums, M_0 = 0);
/// J kernel evaluations total.
std::vector<TraceFreeMatrix> rhs_generators(const CascadeState& state,
                                            const std::vector<BandVorticity>& bands,
                                            const std::vector<AnnulusQuadrature>& quads);

/// One step of 4th-order Runge-Kutta-Munthe-Kaas on SL(2)^J: stage
/// generators are combined in the Lie algebra with the degree-4 commutator
/// correction, and each h_j is updated by an exact trace-free exponential,
/// so determinants are preserved to rounding.
CascadeState step_rkmk4(const CascadeState& state, const std::vector<BandVorticity>& bands,
                        const std::vector<AnnulusQuadrature>& quads, double dt);

/// Integrates from the identity at t = 0 to T = C log(N) / N with fixed step
/// dt = tau / N (last step shortened), recording every sample_interval-th
/// step plus the endpoints.  Throws BlowupError when a state stops being
/// finite; renormalizes (and counts) any h_j whose determinant drifts past
/// 1e-10, which the exact exponential should never trigger.
Trajectory run(const ModelParams& params, const std::vector<BandVorticity>& bands,
               const std::vector<AnnulusQuadrature>& quads, int sample_interval = 1);

} // namespace cascade

#endif
