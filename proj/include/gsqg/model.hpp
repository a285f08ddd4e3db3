#pragma once

#include <optional>

#include "gsqg/multiplier.hpp"

namespace gsqg {

struct Dissipation {
    double kappa = 0.0;
    MultiplierSpec symbol;  // psi(|k|) >= 0 on the grid
};

/// Selects which transport equation is integrated:
/// d_t theta + u . grad theta + kappa Psi theta = 0 with
/// u = sign * perp_grad( Gamma theta ).
struct ModelSpec {
    MultiplierSpec biot_savart;
    std::optional<Dissipation> dissipation;
    bool rescaled_time = false;  // the integration variable is tau = delta * t
    DealiasRule dealias_rule = DealiasRule::two_thirds;
    bool advection = true;

    void validate() const;

    /// u = -perp_grad( log(a+Lambda) theta ), inviscid.
    static ModelSpec ohkitani(double shift = 10.0);
    /// u = +perp_grad( (a+Lambda)^{-delta} theta ), inviscid.
    static ModelSpec delta_sqg(double delta, double shift = 10.0);
    /// delta-SQG plus kappa Psi dissipation.
    static ModelSpec dissipative_delta_sqg(double delta, double kappa, MultiplierSpec psi, double shift = 10.0);
    /// Ohkitani plus kappa log^beta(a+Lambda) dissipation.
    static ModelSpec logdiss_ohkitani(double kappa, double beta, double shift = 10.0);
    /// delta-SQG in rescaled time: u = +perp_grad( ((a+Lambda)^{-delta}-1)/delta theta ).
    static ModelSpec rescaled_delta_sqg(double delta, double shift = 10.0);
};

}  // namespace gsqg
