#pragma once

#include <utility>
#include <vector>

#include "gsqg/config.hpp"
#include "gsqg/diagnostics.hpp"
#include "gsqg/model.hpp"

namespace gsqg {

struct SimulationState {
    double t = 0.0;
    SpectralField theta;
    long step_count = 0;
};

/// -dealias(F[u . grad theta]), mean mode zeroed (its advection contribution
/// vanishes identically), Hermitian by construction.
SpectralField advection_rhs(const SpectralField& theta, const ModelSpec& model);

/// Full semi-discrete tendency including the -kappa psi theta term.
/// step_rk4 does not call this; it treats dissipation by integrating factor.
SpectralField rhs(const SimulationState& state, const ModelSpec& model);

/// Classical RK4 on the advection part with the dissipative factor
/// e^{-kappa psi dt} split Strang-centered around it.
void step_rk4(SimulationState& state, const ModelSpec& model, double dt);

/// min(dt_max, cfl * dx / max(1e-14, ||u||_inf)).
double cfl_dt(const SimulationState& state, const ModelSpec& model, double cfl, double dt_max);

struct BlowupInfo {
    bool blew_up = false;
    double t = 0.0;
    long step = 0;
    std::string reason;
};

struct RunResult {
    std::vector<DiagnosticsRecord> series;
    std::vector<std::pair<double, SpectralField>> checkpoints;  // (requested time, state)
    SimulationState final_state;  // last valid state (pre-blow-up on abort)
    BlowupInfo blowup;
};

/// Integrates the configured model from the configured IC to t_end, emitting
/// records at the configured cadence and checkpoints at the configured times.
/// Deterministic for a fixed config, seed, and thread configuration.
RunResult run(const SimulationConfig& cfg);

}  // namespace gsqg
