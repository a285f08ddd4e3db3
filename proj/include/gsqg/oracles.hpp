#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsqg/field.hpp"

namespace gsqg {

/// Result of one inequality-oracle run. worst_ratio is LHS/RHS with the
/// unspecified constant stripped from the RHS, so for the unconditional
/// bounds (Taylor, Riccati) pass means worst_ratio <= 1 and for the
/// constant-carrying estimates it is the empirical constant itself.
struct OracleReport {
    std::string lemma;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;  // degenerate denominators
    double worst_ratio = 0.0;
    double empirical_constant = 0.0;
    bool pass = false;
    bool build_breaking = false;  // a failed unconditional bound breaks the build
    std::uint64_t seed = 0;
    std::string detail;  // free-form, e.g. the ratio ladder
};

/// Inequality for s >= 3:
///   | |xi|^s - |eta|^s - |xi-eta|^s - s (xi-eta).eta |xi-eta|^{s-2} |
///     <= C_s ( |eta|^2 |xi-eta|^{s-2} + |xi-eta| |eta|^{s-1} ).
/// Random xi, eta with log-uniform magnitudes in [1e-3, 1e3] and uniform
/// angles; the supremum of LHS/RHS-core is the empirical C_s.
OracleReport check_elementary_inequality(double s, std::uint64_t samples, std::uint64_t seed);

/// Raw LHS/RHS-core pieces of the elementary inequality for one (xi, eta);
/// exposed for the hand cases.
double elementary_lhs(double s, double xi1, double xi2, double eta1, double eta2);
double elementary_rhs_core(double s, double xi1, double xi2, double eta1, double eta2);

/// Commutator norm ratio for [Lambda^s, f] g against
/// ||f||_{H^{2+eps}} ||Lambda^{s-1} g|| + ||Lambda^s f|| ||g||_{H^{1+eps}}.
/// Products are formed on a doubled (2n) grid so the oracle itself is
/// alias-free; inputs must be band-limited to the 2/3 cutoff of their grid.
OracleReport check_kato_ponce(const SpectralField& f, const SpectralField& g, double s, double eps);

/// Pointwise Taylor bounds for the shifted-power symbol on an r-grid:
///   |delta log(a+r) - 1 + (a+r)^{-delta}| <= delta^2 log^2(a+r)
///   |(a+r)^{-delta} - 1|                  <= delta  log(a+r)
/// Unconditional: any violation is build-breaking.
OracleReport check_taylor_symbol_bounds(double delta, const std::vector<double>& r_grid, double shift = 10.0);

/// Commutator norm ratio for [d_j (I - (a+Lambda)^{-delta})^{1/2}, f] Lambda^s g
/// (worst of j = 1,2) against delta^{1/2} ||f||_{H^{2+eps}} ||log^{1/2}(a+Lambda) g||_{H^s}.
OracleReport check_sqrt_commutator(const SpectralField& f, const SpectralField& g, double s, double delta,
                                   double eps);

/// Riccati comparison: integrates the equality case y' = nu F + G y^2,
/// y(0) = 0, with fine-step RK4 and asserts
///   y(t) <= min{ 3/(2 T G), 12 nu int_0^T F }  on [0, T].
/// Admissibility 8 nu T G int_0^T F <= 1 is checked first; inadmissible
/// tuples throw std::invalid_argument naming the violated condition.
struct RiccatiResult {
    double y_end = 0.0;
    double y_max = 0.0;
    double bound = 0.0;
    double admissibility = 0.0;  // 8 nu T G int F
    bool pass = false;
};
RiccatiResult check_riccati_bound(double nu, double T, double G, const std::function<double(double)>& F,
                                  int steps = 20000, double tol = 1.0e-8);

/// Randomized sweep over admissible (nu, T, G, F) tuples; build-breaking on
/// any bound violation beyond the integrator tolerance.
OracleReport check_riccati_random(int tuples, std::uint64_t seed, double tol = 1.0e-8);

}  // namespace gsqg
