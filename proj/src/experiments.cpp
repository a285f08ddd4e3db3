#include "gsqg/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "gsqg/multiplier.hpp"

namespace gsqg {

using nlohmann::json;

namespace {

struct SampledTrajectory {
    std::vector<long> sample_steps;
    std::vector<double> sample_times;
    std::vector<SpectralField> states;
    bool completed = true;
    std::string note;
};

// Fixed-step integration sampling the state at prescribed step counts.
// All convergence-study branches share one step grid, so errors never
// involve temporal interpolation.
SampledTrajectory integrate_sampled(const SpectralField& theta0, const ModelSpec& model, double dt,
                                    long total_steps, const std::vector<long>& sample_steps,
                                    double blowup_ceiling) {
    SampledTrajectory out;
    out.sample_steps = sample_steps;
    SimulationState state{0.0, theta0, 0};
    auto take = [&]() {
        out.states.push_back(state.theta);
        out.sample_times.push_back(state.step_count * dt);
    };
    std::size_t next = 0;
    if (next < sample_steps.size() && sample_steps[next] == 0) {
        take();
        ++next;
    }
    for (long s = 0; s < total_steps; ++s) {
        try {
            step_rk4(state, model, dt);
        } catch (const std::exception& e) {
            out.completed = false;
            out.note = e.what();
            return out;
        }
        if (!state.theta.finite()) {
            out.completed = false;
            out.note = "non-finite coefficients";
            return out;
        }
        if (blowup_ceiling > 0.0 && state.theta.max_abs() > blowup_ceiling) {
            out.completed = false;
            out.note = "amplitude exceeded ceiling";
            return out;
        }
        if (next < sample_steps.size() && sample_steps[next] == state.step_count) {
            take();
            ++next;
        }
    }
    return out;
}

std::vector<long> make_sample_steps(long total_steps, int samples) {
    std::vector<long> steps;
    const long stride = std::max<long>(1, total_steps / std::max(1, samples));
    for (long s = 0; s <= total_steps; s += stride) steps.push_back(s);
    if (steps.back() != total_steps) steps.push_back(total_steps);
    return steps;
}

}  // namespace

StudyReport run_convergence_study(const SimulationConfig& cfg) {
    cfg.validate();
    const StudyConfig study = cfg.study.value_or(StudyConfig{});
    const Grid grid = make_grid(cfg.grid.n, cfg.grid.length, cfg.grid.shift);
    const double shift = cfg.grid.shift;

    ModelSpec reference = ModelSpec::ohkitani(shift);
    reference.dealias_rule = cfg.model.dealias_rule;
    SpectralField theta0 = build_initial_condition(grid, cfg.ic, cfg.norms, reference.dealias_rule);

    const long total_steps = std::max<long>(1, std::lround(study.tau_end / study.dt_tau));
    const double dt = study.tau_end / static_cast<double>(total_steps);
    const std::vector<long> sample_steps = make_sample_steps(total_steps, study.samples);

    StudyReport rep;
    rep.order_threshold = study.order_threshold;

    SampledTrajectory ref =
        integrate_sampled(theta0, reference, dt, total_steps, sample_steps, cfg.blowup_ceiling);
    if (!ref.completed) {
        rep.completed = false;
        rep.note = "reference trajectory aborted: " + ref.note;
        return rep;
    }
    rep.sample_taus = ref.sample_times;

    auto branch_errors = [&](const SampledTrajectory& br, StudyBranch& b) {
        for (std::size_t m = 0; m < br.states.size(); ++m) {
            const double tau = br.sample_times[m];
            const double s_t = study.s_cmp - study.m_cmp * tau;
            const double e = compare_fields(br.states[m], ref.states[m], s_t, shift);
            b.errors.push_back(e);
            b.sup_error = std::max(b.sup_error, e);
        }
    };

    for (double delta : study.delta_ladder) {
        ModelSpec branch_model = ModelSpec::rescaled_delta_sqg(delta, shift);
        branch_model.dealias_rule = reference.dealias_rule;
        SampledTrajectory br =
            integrate_sampled(theta0, branch_model, dt, total_steps, sample_steps, cfg.blowup_ceiling);
        StudyBranch b;
        b.delta = delta;
        b.completed = br.completed;
        if (!br.completed) {
            rep.completed = false;
            rep.note += "branch delta=" + std::to_string(delta) + " aborted: " + br.note + "; ";
        }
        branch_errors(br, b);
        rep.branches.push_back(std::move(b));
    }

    rep.monotone = true;
    rep.orders_pass = true;
    for (std::size_t i = 0; i + 1 < rep.branches.size(); ++i) {
        const StudyBranch& hi = rep.branches[i];
        const StudyBranch& lo = rep.branches[i + 1];
        if (!hi.completed || !lo.completed) {
            rep.monotone = rep.orders_pass = false;
            break;
        }
        if (!(lo.sup_error < hi.sup_error)) rep.monotone = false;
        const double p = std::log(hi.sup_error / lo.sup_error) / std::log(hi.delta / lo.delta);
        rep.orders.push_back(p);
        if (!(p >= study.order_threshold)) rep.orders_pass = false;
    }

    if (study.refine_check && rep.completed && !rep.branches.empty()) {
        // Refine both the reference and the largest-delta branch at dt/2 on
        // the identical sample times.
        std::vector<long> fine_steps;
        for (long s : sample_steps) fine_steps.push_back(2 * s);
        SampledTrajectory ref_fine = integrate_sampled(theta0, reference, 0.5 * dt, 2 * total_steps,
                                                       fine_steps, cfg.blowup_ceiling);
        ModelSpec branch_model = ModelSpec::rescaled_delta_sqg(rep.branches.front().delta, shift);
        branch_model.dealias_rule = reference.dealias_rule;
        SampledTrajectory br_fine = integrate_sampled(theta0, branch_model, 0.5 * dt, 2 * total_steps,
                                                      fine_steps, cfg.blowup_ceiling);
        if (ref_fine.completed && br_fine.completed) {
            double sup = 0.0;
            for (std::size_t m = 0; m < br_fine.states.size(); ++m) {
                const double tau = br_fine.sample_times[m];
                const double s_t = study.s_cmp - study.m_cmp * tau;
                sup = std::max(sup, compare_fields(br_fine.states[m], ref_fine.states[m], s_t, shift));
            }
            rep.refined_sup = sup;
            const double floor = 1.0e-12 * std::max(1.0, rep.branches.front().sup_error);
            rep.refine_ok = sup <= rep.branches.front().sup_error * 1.05 + floor;
        }
    }
    return rep;
}

LosingProbeReport run_losing_exponent_probe(const SimulationConfig& cfg) {
    cfg.validate();
    const ProbeAConfig probe = cfg.probe_a.value_or(ProbeAConfig{});
    const Grid grid = make_grid(cfg.grid.n, cfg.grid.length, cfg.grid.shift);
    const double shift = cfg.grid.shift;
    const double s0 = cfg.norms.s0;
    const double t_end = cfg.time.t_end;

    SpectralField theta0 = build_initial_condition(grid, cfg.ic, cfg.norms, cfg.model.dealias_rule);

    LosingProbeReport rep;
    rep.bound_factor = probe.bound_factor;
    rep.initial_hs = hs_norm(theta0, s0, shift);

    // One integration; snapshots are re-measured for each candidate M.
    std::vector<std::pair<double, SpectralField>> snaps;
    {
        SimulationState state{0.0, theta0, 0};
        snaps.emplace_back(0.0, state.theta);
        while (state.t < t_end - 1.0e-12) {
            double dt = (cfg.time.mode == TimeConfig::Mode::fixed)
                            ? cfg.time.dt
                            : cfl_dt(state, cfg.model, cfg.time.cfl, cfg.time.dt_max);
            dt = std::min(dt, t_end - state.t);
            step_rk4(state, cfg.model, dt);
            if (!state.theta.finite()) {
                rep.note = "run aborted: non-finite state";
                return rep;
            }
            if (state.step_count % cfg.output.record_every == 0 || state.t >= t_end - 1.0e-12)
                snaps.emplace_back(state.t, state.theta);
        }
    }

    for (const auto& [t, th] : snaps) rep.trace_fixed.emplace_back(t, hs_norm(th, s0, shift));

    const double bound = probe.bound_factor * rep.initial_hs;
    for (double M = probe.m0; M <= probe.m_ceiling; M *= 2.0) {
        if (!(s0 - M * t_end > 4.0)) {
            rep.horizon_limited = true;
            break;
        }
        bool ok = true;
        std::vector<std::pair<double, double>> trace;
        for (const auto& [t, th] : snaps) {
            const double v = hs_norm(th, s0 - M * t, shift);
            trace.emplace_back(t, v);
            if (v > bound) ok = false;
        }
        if (ok) {
            rep.found = true;
            rep.m_found = M;
            rep.trace_found = std::move(trace);
            break;
        }
    }
    if (!rep.found && !rep.horizon_limited) rep.note = "M ceiling reached without a bounded trace";
    return rep;
}

namespace {

double sup_hs_ratio(const SimulationConfig& cfg, bool* blew_up = nullptr) {
    RunResult r = run(cfg);
    if (blew_up) *blew_up = r.blowup.blew_up;
    if (r.series.empty() || r.series.front().hs == 0.0) return 0.0;
    double sup = 0.0;
    for (const DiagnosticsRecord& rec : r.series) sup = std::max(sup, rec.hs);
    return sup / r.series.front().hs;
}

}  // namespace

DissipativeProbeReport run_dissipative_global_probe(const SimulationConfig& cfg) {
    cfg.validate();
    if (!cfg.model.dissipation)
        throw std::invalid_argument("dissipative probe requires a dissipative model");
    const ProbeCConfig probe = cfg.probe_c.value_or(ProbeCConfig{});

    DissipativeProbeReport rep;
    SimulationConfig base = cfg;
    base.norms.rate = 0.0;
    base.norms.auto_rate = false;

    bool blew = false;
    rep.headline_sup_ratio = sup_hs_ratio(base, &blew);
    rep.headline_pass = !blew && rep.headline_sup_ratio <= 2.0 + 1.0e-12;

    auto sweep = [&](double amplitude, std::vector<std::pair<double, bool>>& ladder) {
        double star = 0.0;
        for (double delta : probe.delta_ladder) {
            SimulationConfig c = base;
            c.ic.amplitude = amplitude;
            c.time.t_end = probe.sweep_t_end;
            c.model = ModelSpec::dissipative_delta_sqg(delta, probe.sweep_kappa,
                                                       cfg.model.dissipation->symbol, cfg.grid.shift);
            c.model.dealias_rule = cfg.model.dealias_rule;
            bool b = false;
            const double ratio = sup_hs_ratio(c, &b);
            const bool pass = !b && ratio <= 2.0 + 1.0e-12;
            ladder.emplace_back(delta, pass);
            if (pass) star = std::max(star, delta);
        }
        return star;
    };

    const double base_amp = probe.sweep_amplitude > 0.0 ? probe.sweep_amplitude : cfg.ic.amplitude;
    rep.delta_star_base = sweep(base_amp, rep.ladder_base);
    rep.delta_star_scaled = sweep(base_amp * probe.ic_scale, rep.ladder_scaled);
    rep.delta_star_decreased = rep.delta_star_scaled < rep.delta_star_base;
    rep.note = "dissipation lower bound treated as holding on the whole grid (Xi_0 = 0)";
    return rep;
}

LogdissProbeReport run_logdiss_wellposedness_probe(const SimulationConfig& cfg) {
    cfg.validate();
    if (!cfg.model.dissipation)
        throw std::invalid_argument("log-dissipative probe requires a dissipative model");
    const ProbeDConfig probe = cfg.probe_d.value_or(ProbeDConfig{});

    LogdissProbeReport rep;
    rep.beta = cfg.model.dissipation->symbol.family == SymbolFamily::LogPow
                   ? cfg.model.dissipation->symbol.beta
                   : 0.0;
    rep.outside_theorem = !(rep.beta > 1.0);
    if (rep.outside_theorem) rep.note = "outside Theorem hypothesis (beta <= 1)";

    SimulationConfig base = cfg;
    base.norms.rate = 0.0;
    base.norms.auto_rate = false;
    RunResult r = run(base);
    if (r.series.empty() || r.series.front().hs == 0.0) {
        rep.pass = !r.blowup.blew_up;
        rep.sup_ratio = 0.0;
        return rep;
    }
    double sup = 0.0;
    for (const DiagnosticsRecord& rec : r.series) {
        rep.trace.emplace_back(rec.t, rec.hs);
        sup = std::max(sup, rec.hs);
    }
    rep.sup_ratio = sup / r.series.front().hs;
    rep.pass = !r.blowup.blew_up && rep.sup_ratio <= probe.bound_factor + 1.0e-12;
    return rep;
}

json to_json(const StudyReport& r) {
    json j;
    j["sample_taus"] = r.sample_taus;
    json branches = json::array();
    for (const StudyBranch& b : r.branches) {
        branches.push_back({{"delta", b.delta},
                            {"errors", b.errors},
                            {"sup_error", b.sup_error},
                            {"completed", b.completed}});
    }
    j["branches"] = branches;
    j["orders"] = r.orders;
    j["monotone"] = r.monotone;
    j["orders_pass"] = r.orders_pass;
    j["order_threshold"] = r.order_threshold;
    j["refined_sup"] = r.refined_sup;
    j["refine_ok"] = r.refine_ok;
    j["completed"] = r.completed;
    j["note"] = r.note;
    return j;
}

json to_json(const LosingProbeReport& r) {
    json j;
    j["found"] = r.found;
    j["M"] = r.m_found;
    j["initial_hs"] = r.initial_hs;
    j["bound_factor"] = r.bound_factor;
    j["horizon_limited"] = r.horizon_limited;
    j["trace_found"] = r.trace_found;
    j["trace_fixed_exponent"] = r.trace_fixed;
    j["note"] = r.note;
    return j;
}

json to_json(const DissipativeProbeReport& r) {
    json j;
    j["headline_pass"] = r.headline_pass;
    j["headline_sup_ratio"] = r.headline_sup_ratio;
    j["ladder_base"] = r.ladder_base;
    j["ladder_scaled"] = r.ladder_scaled;
    j["delta_star_base"] = r.delta_star_base;
    j["delta_star_scaled"] = r.delta_star_scaled;
    j["delta_star_decreased"] = r.delta_star_decreased;
    j["dissipation_condition_assumed_global"] = r.dissipation_condition_assumed_global;
    j["note"] = r.note;
    return j;
}

json to_json(const LogdissProbeReport& r) {
    json j;
    j["pass"] = r.pass;
    j["sup_ratio"] = r.sup_ratio;
    j["beta"] = r.beta;
    j["outside_theorem"] = r.outside_theorem;
    j["trace"] = r.trace;
    j["note"] = r.note;
    return j;
}

}  // namespace gsqg
