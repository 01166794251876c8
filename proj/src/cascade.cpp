#include "cascade/cascade.hpp"

#include <cmath>
#include <cstdio>

namespace cascade {

double ModelParams::horizon() const {
    const double logN = log_base_horizon == LogBase::natural ? std::log(N) : std::log2(N);
    return C * logN / N;
}

int default_logn_bands(double N) {
    return std::max(1, static_cast<int>(std::ceil(std::log2(N))));
}

std::vector<TraceFreeMatrix> strain_contributions(const CascadeState& state,
                                                  const std::vector<BandVorticity>& bands,
                                                  const std::vector<AnnulusQuadrature>& quads) {
    const size_t J = state.h.size();
    if (bands.size() != J || quads.size() != J) {
        throw std::invalid_argument("state/bands/quadratures length mismatch");
    }
    std::vector<TraceFreeMatrix> c(J);
    for (size_t k = 0; k < J; ++k) {
        c[k] = grad_u_model(bands[k], quads[k], state.h[k]);
    }
    return c;
}

std::vector<TraceFreeMatrix> rhs_generators(const CascadeState& state,
                                            const std::vector<BandVorticity>& bands,
                                            const std::vector<AnnulusQuadrature>& quads) {
    const std::vector<TraceFreeMatrix> c = strain_contributions(state, bands, quads);
    std::vector<TraceFreeMatrix> m(c.size());
    TraceFreeMatrix acc;
    for (size_t j = 0; j < c.size(); ++j) {
        m[j] = acc; // exclusive prefix: M_j = sum_{k<j} c_k
        acc = acc + c[j];
    }
    return m;
}

namespace {

CascadeState stage_state(const CascadeState& base, const std::vector<Sl2Generator>& offsets,
                         double t) {
    CascadeState s;
    s.t = t;
    s.h.resize(base.h.size());
    for (size_t j = 0; j < base.h.size(); ++j) {
        if (!offsets[j].finite()) throw NumericalOverflow("non-finite stage generator");
        s.h[j] = sl2_compose(sl2_exp(offsets[j], 1.0), base.h[j]);
        if (!s.h[j].finite()) throw NumericalOverflow("non-finite stage state");
    }
    return s;
}

} // namespace

CascadeState step_rkmk4(const CascadeState& state, const std::vector<BandVorticity>& bands,
                        const std::vector<AnnulusQuadrature>& quads, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step size must be positive");
    const size_t J = state.h.size();

    const std::vector<TraceFreeMatrix> k1 = rhs_generators(state, bands, quads);

    std::vector<Sl2Generator> theta(J);
    for (size_t j = 0; j < J; ++j) {
        theta[j] = (0.5 * dt) * Sl2Generator::from_strain(k1[j]);
    }
    const std::vector<TraceFreeMatrix> k2 =
        rhs_generators(stage_state(state, theta, state.t + 0.5 * dt), bands, quads);

    for (size_t j = 0; j < J; ++j) {
        const Sl2Generator a = Sl2Generator::from_strain(k1[j]);
        const Sl2Generator b = Sl2Generator::from_strain(k2[j]);
        theta[j] = (0.5 * dt) * b - (dt * dt / 8.0) * commutator(a, b);
    }
    const std::vector<TraceFreeMatrix> k3 =
        rhs_generators(stage_state(state, theta, state.t + 0.5 * dt), bands, quads);

    for (size_t j = 0; j < J; ++j) {
        theta[j] = dt * Sl2Generator::from_strain(k3[j]);
    }
    const std::vector<TraceFreeMatrix> k4 =
        rhs_generators(stage_state(state, theta, state.t + dt), bands, quads);

    CascadeState next;
    next.t = state.t + dt;
    next.h.resize(J);
    for (size_t j = 0; j < J; ++j) {
        const Sl2Generator sum = Sl2Generator::from_strain(k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        const Sl2Generator omega =
            (dt / 6.0) * sum -
            (dt * dt / 12.0) *
                commutator(Sl2Generator::from_strain(k1[j]), Sl2Generator::from_strain(k4[j]));
        if (!omega.finite()) throw NumericalOverflow("non-finite step generator");
        next.h[j] = sl2_compose(sl2_exp(omega, 1.0), state.h[j]);
    }
    return next;
}

Trajectory run(const ModelParams& params, const std::vector<BandVorticity>& bands,
               const std::vector<AnnulusQuadrature>& quads, int sample_interval) {
    if (!(params.N > 1.0)) throw std::invalid_argument("N must exceed 1");
    if (params.J < 1) throw std::invalid_argument("J must be at least 1");
    if (sample_interval < 1) throw std::invalid_argument("sample interval must be at least 1");
    if (bands.size() != static_cast<size_t>(params.J) ||
        quads.size() != static_cast<size_t>(params.J)) {
        throw std::invalid_argument("bands/quadratures must match J");
    }

    const double T = params.horizon();
    const double dt = params.step_size();
    if (!(T > 0.0) || !(dt > 0.0)) throw std::invalid_argument("horizon and step must be positive");

    Trajectory traj;
    CascadeState state = CascadeState::initial(params.J);

    const auto record = [&](const CascadeState& s) {
        TrajectorySample sample;
        sample.t = s.t;
        sample.h = s.h;
        sample.contribs = strain_contributions(s, bands, quads);
        traj.samples.push_back(std::move(sample));
    };

    record(state);
    long step_index = 0;
    while (state.t < T - 1e-15 * T) {
        const double step = std::min(dt, T - state.t);
        try {
            state = step_rkmk4(state, bands, quads, step);
        } catch (const NumericalOverflow&) {
            traj.steps = step_index;
            char msg[64];
            std::snprintf(msg, sizeof(msg), "blow-up detected at t=%.12g", state.t);
            throw BlowupError(msg, traj);
        }
        ++step_index;

        for (size_t j = 0; j < state.h.size(); ++j) {
            Sl2Matrix& h = state.h[j];
            if (!h.finite()) {
                traj.steps = step_index;
                char msg[64];
                std::snprintf(msg, sizeof(msg), "blow-up detected at t=%.12g", state.t);
                throw BlowupError(msg, traj);
            }
            const double det = h.det();
            if (std::abs(det - 1.0) > 1e-10) {
                const double s = 1.0 / std::sqrt(det);
                h.a *= s;
                h.b *= s;
                h.c *= s;
                h.d *= s;
                ++traj.renormalizations;
            }
        }

        const bool last = !(state.t < T - 1e-15 * T);
        if (step_index % sample_interval == 0 || last) record(state);
    }
    traj.steps = step_index;
    return traj;
}

} // namespace cascade
