#include "gsqg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsqg/multiplier.hpp"

namespace gsqg {

namespace {

SpectralField zero_like(const SpectralField& f) { return SpectralField(f.grid()); }

void apply_dissipation_factor(SpectralField& theta, const ModelSpec& model, double tau) {
    if (!model.dissipation || tau == 0.0) return;
    auto psi = symbol_table(theta.grid(), model.dissipation->symbol);
    const double kappa = model.dissipation->kappa;
    auto c = theta.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-kappa * (*psi)[i] * tau);
}

}  // namespace

SpectralField advection_rhs(const SpectralField& theta, const ModelSpec& model) {
    if (!model.advection) return zero_like(theta);
    SpectralField th = dealias(theta, model.dealias_rule);
    VelocityField v = velocity_from_scalar(th, model.biot_savart);
    auto [d1, d2] = gradient(th);
    RealField u1 = inverse_transform(v.u1);
    RealField u2 = inverse_transform(v.u2);
    RealField g1 = inverse_transform(d1);
    RealField g2 = inverse_transform(d2);
    RealField w(theta.grid());
    auto wv = w.values();
    auto a1 = u1.values(), a2 = u2.values(), b1 = g1.values(), b2 = g2.values();
    for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = a1[i] * b1[i] + a2[i] * b2[i];
    SpectralField out = forward_transform(w);
    dealias_in_place(out, model.dealias_rule);
    out(0, 0) = Complex{};  // advection does not move the mean
    out *= -1.0;
    return out;
}

SpectralField rhs(const SimulationState& state, const ModelSpec& model) {
    SpectralField out = advection_rhs(state.theta, model);
    if (model.dissipation) {
        auto psi = symbol_table(state.theta.grid(), model.dissipation->symbol);
        const double kappa = model.dissipation->kappa;
        auto c = out.coeffs();
        auto t = state.theta.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= kappa * (*psi)[i] * t[i];
    }
    return out;
}

void step_rk4(SimulationState& state, const ModelSpec& model, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    apply_dissipation_factor(state.theta, model, 0.5 * dt);

    const SpectralField& y = state.theta;
    SpectralField k1 = advection_rhs(y, model);
    SpectralField y2 = y;
    {
        auto a = y2.coeffs();
        auto b = k1.coeffs();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += 0.5 * dt * b[i];
    }
    SpectralField k2 = advection_rhs(y2, model);
    SpectralField y3 = y;
    {
        auto a = y3.coeffs();
        auto b = k2.coeffs();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += 0.5 * dt * b[i];
    }
    SpectralField k3 = advection_rhs(y3, model);
    SpectralField y4 = y;
    {
        auto a = y4.coeffs();
        auto b = k3.coeffs();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += dt * b[i];
    }
    SpectralField k4 = advection_rhs(y4, model);
    {
        auto a = state.theta.coeffs();
        auto c1 = k1.coeffs(), c2 = k2.coeffs(), c3 = k3.coeffs(), c4 = k4.coeffs();
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += w * (c1[i] + 2.0 * c2[i] + 2.0 * c3[i] + c4[i]);
    }
    enforce_hermitian(state.theta);

    apply_dissipation_factor(state.theta, model, 0.5 * dt);
    state.t += dt;
    state.step_count += 1;
}

double cfl_dt(const SimulationState& state, const ModelSpec& model, double cfl, double dt_max) {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0,1]");
    const Grid& g = state.theta.grid();
    const double dx = g.length() / g.n();
    const double umax = max_speed(state.theta, model);
    return std::min(dt_max, cfl * dx / std::max(1.0e-14, umax));
}

namespace {

DiagnosticsRecord make_record(const SimulationState& state, const ModelSpec& model, const NormSpec& ns,
                              double dt_used) {
    DiagnosticsRecord r;
    r.t = state.t;
    r.s_t = exponent_schedule(ns, state.t);
    ConservedQuantities q = conserved_quantities(state.theta, model);
    r.l2 = q.l2;
    r.gamma_energy = q.gamma_energy;
    r.u_max = q.u_max;
    r.hs = hs_norm(state.theta, r.s_t, ns.shift);
    r.hs_log = ns.log_weight ? log_weighted_hs_norm(state.theta, r.s_t, ns.shift) : 0.0;
    r.dt = dt_used;
    return r;
}

}  // namespace

RunResult run(const SimulationConfig& cfg) {
    cfg.validate();
    const Grid grid = make_grid(cfg.grid.n, cfg.grid.length, cfg.grid.shift);
    const ModelSpec& model = cfg.model;
    NormSpec ns{cfg.norms.s0, cfg.norms.auto_rate ? 0.0 : cfg.norms.rate, cfg.grid.shift,
                cfg.norms.log_weight};

    RunResult result;
    SimulationState state{0.0, build_initial_condition(grid, cfg.ic, cfg.norms, model.dealias_rule), 0};

    std::vector<double> cps = cfg.output.checkpoint_times;
    std::sort(cps.begin(), cps.end());
    std::size_t next_cp = 0;
    auto take_due_checkpoints = [&]() {
        while (next_cp < cps.size() && state.t >= cps[next_cp] - 1.0e-12) {
            result.checkpoints.emplace_back(cps[next_cp], state.theta);
            ++next_cp;
        }
    };

    result.series.push_back(make_record(state, model, ns, 0.0));
    take_due_checkpoints();

    const double t_end = cfg.time.t_end;
    SimulationState last_valid = state;
    while (state.t < t_end - 1.0e-12) {
        double dt = (cfg.time.mode == TimeConfig::Mode::fixed)
                        ? cfg.time.dt
                        : cfl_dt(state, model, cfg.time.cfl, cfg.time.dt_max);
        double horizon = t_end;
        if (next_cp < cps.size()) horizon = std::min(horizon, cps[next_cp]);
        dt = std::min(dt, horizon - state.t);

        last_valid = state;
        bool failed = false;
        std::string reason;
        try {
            step_rk4(state, model, dt);
        } catch (const std::exception& e) {
            failed = true;
            reason = e.what();
        }
        if (!failed && !state.theta.finite()) {
            failed = true;
            reason = "non-finite coefficients";
        }

        // The velocity-ceiling check rides on the record cadence so it can
        // reuse the record's u_max; NaN/overflow is caught every step.
        if (!failed &&
            (state.step_count % cfg.output.record_every == 0 || state.t >= t_end - 1.0e-12)) {
            DiagnosticsRecord rec = make_record(state, model, ns, dt);
            if (cfg.blowup_ceiling > 0.0 && !(rec.u_max <= cfg.blowup_ceiling)) {
                failed = true;
                reason = "velocity amplitude exceeded ceiling";
            } else {
                result.series.push_back(rec);
            }
        }
        if (failed) {
            result.blowup.blew_up = true;
            result.blowup.t = last_valid.t;
            result.blowup.step = last_valid.step_count;
            result.blowup.reason = reason;
            result.final_state = last_valid;
            return result;
        }
        take_due_checkpoints();
    }

    result.final_state = state;
    return result;
}

}  // namespace gsqg
