#pragma once

#include "gsqg/field.hpp"
#include "gsqg/model.hpp"

namespace gsqg {

/// Time-decreasing Sobolev exponent schedule s(t) = s0 - M t. The a priori
/// structure requires s(t) > 4 on the configured horizon.
struct NormSpec {
    double s0 = 5.0;
    double rate = 0.0;  // M, per unit time, >= 0
    double shift = 10.0;
    bool log_weight = true;
};

/// One time sample of the quantities the theorems bound.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2 = 0.0;            // hs_norm at s = 0
    double gamma_energy = 0.0;  // sqrt(sum |gamma(|k|)| |theta_hat|^2)
    double hs = 0.0;            // hs_norm at s(t)
    double hs_log = 0.0;        // log-weighted companion at s(t)
    double u_max = 0.0;
    double dt = 0.0;            // step used to arrive at this state (0 at t=0)
    double s_t = 0.0;
};

/// sqrt( sum_k (a+|k|)^{2s} |theta_hat(k)|^2 ). Any real s is accepted
/// (negative exponents serve the uniqueness metric).
double hs_norm(const SpectralField& f, double s, double shift);

/// As hs_norm with an extra log(a+|k|) factor inside the sum.
double log_weighted_hs_norm(const SpectralField& f, double s, double shift);

/// s0 - M t.
double exponent_schedule(const NormSpec& ns, double t);

/// The a priori structure breaks down once s(t) <= 4.
inline bool exponent_horizon_exceeded(double s_t) { return s_t <= 4.0; }

struct ConservedQuantities {
    double l2 = 0.0;
    double gamma_energy = 0.0;
    double u_max = 0.0;
};

ConservedQuantities conserved_quantities(const SpectralField& f, const ModelSpec& model);

/// ||u||_inf: max collocation-point speed of the model's velocity field.
double max_speed(const SpectralField& f, const ModelSpec& model);

/// hs_norm of the difference; grids must match.
double compare_fields(const SpectralField& a, const SpectralField& b, double s, double shift);

/// ||(a+Lambda)^{-M t}(a - b)||_{L^2}: the decaying-exponent distance the
/// uniqueness argument contracts in.
double uniqueness_metric(const SpectralField& a, const SpectralField& b, double rate, double t, double shift);

}  // namespace gsqg
