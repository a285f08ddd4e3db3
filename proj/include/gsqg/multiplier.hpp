#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/grid.hpp"

namespace gsqg {

/// Radial Fourier symbol families. All are functions of r = |k| with a
/// shift constant a >= 1:
///   Log:        log(a + r)
///   PowerShift: (a + r)^{-delta},          delta in (0,1)
///   Rescaled:   ((a + r)^{-delta} - 1)/delta
///   LogPow:     log^beta(a + r),           beta > 0
///   LogOfLog:   log^alpha(a + log(a + r)), alpha > 0
///   FracLap:    r^{2 alpha},               alpha > 0
///   Identity:   1
///   Tabulated:  monotone piecewise-linear in log(a + r) between nodes
enum class SymbolFamily { Log, PowerShift, Rescaled, LogPow, LogOfLog, FracLap, Identity, Tabulated };

const char* family_name(SymbolFamily f);
SymbolFamily family_from_name(const std::string& name);

struct MultiplierSpec {
    SymbolFamily family = SymbolFamily::Identity;
    double delta = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double shift = 10.0;
    double sign = 1.0;  // applied when used as a Biot-Savart law
    std::vector<std::pair<double, double>> nodes;  // Tabulated: (r, gamma), r increasing

    /// Throws std::invalid_argument when parameters leave the family's range.
    void validate() const;
    std::string cache_key() const;

    static MultiplierSpec log_law(double shift = 10.0);
    static MultiplierSpec power_shift(double delta, double shift = 10.0);
    static MultiplierSpec rescaled(double delta, double shift = 10.0);
    static MultiplierSpec log_pow(double beta, double shift = 10.0);
    static MultiplierSpec log_of_log(double alpha, double shift = 10.0);
    static MultiplierSpec frac_lap(double alpha);
    static MultiplierSpec identity();
    static MultiplierSpec tabulated(std::vector<std::pair<double, double>> nodes, double shift = 10.0);
};

/// gamma(r) for the family; validates parameters and requires r >= 0.
double eval_symbol(const MultiplierSpec& m, double r);

/// Symbol values on the grid's stored mode layout, cached per
/// (grid, multiplier). The cache fill is mutex-guarded.
std::shared_ptr<const std::vector<double>> symbol_table(const Grid& grid, const MultiplierSpec& m);

/// gamma(|k|) theta_hat(k) per mode.
SpectralField apply_symbol(const SpectralField& f, const MultiplierSpec& m);

/// u = sign * perp_grad(Gamma theta), computed spectrally.
VelocityField velocity_from_scalar(const SpectralField& theta, const MultiplierSpec& biot_savart);

struct RescaledGapReport {
    double sup_raw = 0.0;       // sup |gamma_rescaled(r) + log(a+r)|
    double sup_weighted = 0.0;  // same / (delta log^2(a+r)); contract <= 1
    double r_at_sup = 0.0;
};

/// Samples the gap between the rescaled difference-quotient symbol and its
/// logarithmic limit on [0, r_max] (r = 0 plus log-spaced points).
RescaledGapReport rescaled_limit_gap(double delta, double r_max, int samples, double shift = 10.0);

}  // namespace gsqg
