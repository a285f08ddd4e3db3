#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsqg/config.hpp"
#include "gsqg/dynamics.hpp"

#include <nlohmann/json_fwd.hpp>

namespace gsqg {

/// Singular-limit convergence study: one Ohkitani reference trajectory in
/// tau, per-delta rescaled branches on the identical step grid, errors
/// E_delta(tau_j) = || theta^delta(tau_j) - theta_ref(tau_j) ||_{H^{s(tau_j)}}.
struct StudyBranch {
    double delta = 0.0;
    std::vector<double> errors;  // per sample time
    double sup_error = 0.0;
    bool completed = true;
};

struct StudyReport {
    std::vector<double> sample_taus;
    std::vector<StudyBranch> branches;      // ladder order (decreasing delta)
    std::vector<double> orders;             // p between adjacent rungs
    bool monotone = false;                  // sup errors decrease with delta
    bool orders_pass = false;               // all p >= threshold
    double order_threshold = 0.8;
    double refined_sup = -1.0;              // largest-delta branch at dt/2
    bool refine_ok = true;
    bool completed = true;
    std::string note;
};

StudyReport run_convergence_study(const SimulationConfig& cfg);

/// Theorem-A harness: doubles M from m0 until the H^{s(t)} trace along an
/// inviscid run stays within bound_factor * ||theta_0||_{H^{s0}}, or the
/// schedule would leave s(t) > 4, or M exceeds the ceiling.
struct LosingProbeReport {
    bool found = false;
    double m_found = 0.0;
    std::vector<std::pair<double, double>> trace_found;  // (t, hs at s(t))
    std::vector<std::pair<double, double>> trace_fixed;  // M = 0 contrast
    double initial_hs = 0.0;
    double bound_factor = 1.1;
    bool horizon_limited = false;  // search stopped by the s(t) > 4 constraint
    std::string note;
};

LosingProbeReport run_losing_exponent_probe(const SimulationConfig& cfg);

/// Theorem-C harness: dissipative delta-SQG to a long horizon; pass iff
/// sup_t ||theta|| <= 2 ||theta_0||. The ladder sweep reports the largest
/// passing delta as an empirical delta*, at two IC scales.
struct DissipativeProbeReport {
    bool headline_pass = false;
    double headline_sup_ratio = 0.0;  // sup_t ||theta|| / ||theta_0||
    std::vector<std::pair<double, bool>> ladder_base;    // (delta, pass)
    std::vector<std::pair<double, bool>> ladder_scaled;  // IC * ic_scale
    double delta_star_base = 0.0;    // 0 when no rung passes
    double delta_star_scaled = 0.0;
    bool delta_star_decreased = false;
    bool dissipation_condition_assumed_global = true;
    std::string note;
};

DissipativeProbeReport run_dissipative_global_probe(const SimulationConfig& cfg);

/// Theorem-D harness: log^beta-dissipative Ohkitani at fixed exponent s;
/// pass iff sup_t ||theta||_{H^s} <= bound_factor * ||theta_0||_{H^s}.
struct LogdissProbeReport {
    bool pass = false;
    double sup_ratio = 0.0;
    double beta = 0.0;
    bool outside_theorem = false;  // beta <= 1
    std::vector<std::pair<double, double>> trace;
    std::string note;
};

LogdissProbeReport run_logdiss_wellposedness_probe(const SimulationConfig& cfg);

nlohmann::json to_json(const StudyReport& r);
nlohmann::json to_json(const LosingProbeReport& r);
nlohmann::json to_json(const DissipativeProbeReport& r);
nlohmann::json to_json(const LogdissProbeReport& r);

}  // namespace gsqg
