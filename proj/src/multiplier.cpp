#include "gsqg/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "grid_state.hpp"

namespace gsqg {

const char* family_name(SymbolFamily f) {
    switch (f) {
        case SymbolFamily::Log: return "log";
        case SymbolFamily::PowerShift: return "power_shift";
        case SymbolFamily::Rescaled: return "rescaled";
        case SymbolFamily::LogPow: return "log_pow";
        case SymbolFamily::LogOfLog: return "log_of_log";
        case SymbolFamily::FracLap: return "frac_lap";
        case SymbolFamily::Identity: return "identity";
        case SymbolFamily::Tabulated: return "tabulated";
    }
    return "?";
}

SymbolFamily family_from_name(const std::string& name) {
    if (name == "log") return SymbolFamily::Log;
    if (name == "power_shift") return SymbolFamily::PowerShift;
    if (name == "rescaled") return SymbolFamily::Rescaled;
    if (name == "log_pow") return SymbolFamily::LogPow;
    if (name == "log_of_log") return SymbolFamily::LogOfLog;
    if (name == "frac_lap") return SymbolFamily::FracLap;
    if (name == "identity") return SymbolFamily::Identity;
    if (name == "tabulated") return SymbolFamily::Tabulated;
    throw std::invalid_argument("unknown symbol family: " + name);
}

void MultiplierSpec::validate() const {
    if (!(shift >= 1.0)) throw std::invalid_argument("multiplier shift must be >= 1");
    if (sign != 1.0 && sign != -1.0) throw std::invalid_argument("multiplier sign must be +1 or -1");
    switch (family) {
        case SymbolFamily::PowerShift:
        case SymbolFamily::Rescaled:
            if (!(delta > 0.0 && delta < 1.0))
                throw std::invalid_argument("delta must lie in (0,1)");
            break;
        case SymbolFamily::LogPow:
            if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
            break;
        case SymbolFamily::LogOfLog:
        case SymbolFamily::FracLap:
            if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
            break;
        case SymbolFamily::Tabulated: {
            if (nodes.size() < 2) throw std::invalid_argument("tabulated symbol needs >= 2 nodes");
            bool incr = nodes.back().second >= nodes.front().second;
            for (std::size_t i = 1; i < nodes.size(); ++i) {
                if (!(nodes[i].first > nodes[i - 1].first))
                    throw std::invalid_argument("tabulated symbol nodes must have increasing r");
                const bool up = nodes[i].second >= nodes[i - 1].second;
                if (up != incr) throw std::invalid_argument("tabulated symbol must be monotone");
            }
            if (!(nodes.front().first >= 0.0))
                throw std::invalid_argument("tabulated symbol nodes need r >= 0");
            break;
        }
        default: break;
    }
}

std::string MultiplierSpec::cache_key() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s:d=%.17g:b=%.17g:a=%.17g:s=%.17g", family_name(family), delta,
                  beta, alpha, shift);
    std::string key(buf);
    if (family == SymbolFamily::Tabulated) {
        for (const auto& [r, v] : nodes) {
            std::snprintf(buf, sizeof(buf), ";%.17g,%.17g", r, v);
            key += buf;
        }
    }
    return key;
}

MultiplierSpec MultiplierSpec::log_law(double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::Log;
    m.shift = shift;
    return m;
}
MultiplierSpec MultiplierSpec::power_shift(double delta, double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::PowerShift;
    m.delta = delta;
    m.shift = shift;
    return m;
}
MultiplierSpec MultiplierSpec::rescaled(double delta, double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::Rescaled;
    m.delta = delta;
    m.shift = shift;
    return m;
}
MultiplierSpec MultiplierSpec::log_pow(double beta, double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::LogPow;
    m.beta = beta;
    m.shift = shift;
    return m;
}
MultiplierSpec MultiplierSpec::log_of_log(double alpha, double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::LogOfLog;
    m.alpha = alpha;
    m.shift = shift;
    return m;
}
MultiplierSpec MultiplierSpec::frac_lap(double alpha) {
    MultiplierSpec m;
    m.family = SymbolFamily::FracLap;
    m.alpha = alpha;
    return m;
}
MultiplierSpec MultiplierSpec::identity() { return MultiplierSpec{}; }
MultiplierSpec MultiplierSpec::tabulated(std::vector<std::pair<double, double>> nodes, double shift) {
    MultiplierSpec m;
    m.family = SymbolFamily::Tabulated;
    m.nodes = std::move(nodes);
    m.shift = shift;
    return m;
}

namespace {

double eval_checked(const MultiplierSpec& m, double r) {
    const double a = m.shift;
    switch (m.family) {
        case SymbolFamily::Log: return std::log(a + r);
        case SymbolFamily::PowerShift: return std::pow(a + r, -m.delta);
        case SymbolFamily::Rescaled: return (std::pow(a + r, -m.delta) - 1.0) / m.delta;
        case SymbolFamily::LogPow: return std::pow(std::log(a + r), m.beta);
        case SymbolFamily::LogOfLog: return std::pow(std::log(a + std::log(a + r)), m.alpha);
        case SymbolFamily::FracLap: return std::pow(r, 2.0 * m.alpha);
        case SymbolFamily::Identity: return 1.0;
        case SymbolFamily::Tabulated: {
            // piecewise linear in u = log(a + r), clamped at the ends
            const double u = std::log(a + r);
            const auto& nd = m.nodes;
            if (u <= std::log(a + nd.front().first)) return nd.front().second;
            if (u >= std::log(a + nd.back().first)) return nd.back().second;
            for (std::size_t i = 1; i < nd.size(); ++i) {
                const double u1 = std::log(a + nd[i].first);
                if (u <= u1) {
                    const double u0 = std::log(a + nd[i - 1].first);
                    const double w = (u - u0) / (u1 - u0);
                    return (1.0 - w) * nd[i - 1].second + w * nd[i].second;
                }
            }
            return nd.back().second;
        }
    }
    return 0.0;
}

}  // namespace

double eval_symbol(const MultiplierSpec& m, double r) {
    m.validate();
    if (!(r >= 0.0)) throw std::invalid_argument("symbol argument r must be >= 0");
    const double v = eval_checked(m, r);
    if (!std::isfinite(v)) throw std::invalid_argument("symbol value is not finite");
    return v;
}

std::shared_ptr<const std::vector<double>> symbol_table(const Grid& grid, const MultiplierSpec& m) {
    m.validate();
    return grid.state().cached_table(m.cache_key(), [&grid, &m]() {
        std::vector<double> t(grid.spectral_size());
        for (int i = 0; i < grid.rows(); ++i)
            for (int j = 0; j < grid.cols(); ++j) {
                const double v = eval_checked(m, grid.kmag(i, j));
                if (!std::isfinite(v)) throw std::invalid_argument("symbol not finite on grid");
                t[static_cast<std::size_t>(i) * grid.cols() + j] = v;
            }
        return t;
    });
}

SpectralField apply_symbol(const SpectralField& f, const MultiplierSpec& m) {
    auto table = symbol_table(f.grid(), m);
    return apply_symbol_table(f, *table);
}

VelocityField velocity_from_scalar(const SpectralField& theta, const MultiplierSpec& biot_savart) {
    SpectralField gtheta = apply_symbol(theta, biot_savart);
    VelocityField v = perp_gradient(gtheta);
    if (biot_savart.sign != 1.0) {
        v.u1 *= biot_savart.sign;
        v.u2 *= biot_savart.sign;
    }
    return v;
}

RescaledGapReport rescaled_limit_gap(double delta, double r_max, int samples, double shift) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (samples < 2) throw std::invalid_argument("need >= 2 samples");
    const MultiplierSpec resc = MultiplierSpec::rescaled(delta, shift);
    RescaledGapReport rep;
    // r = 0 plus log-spaced points in (r_max*1e-6, r_max]
    const double lo = std::log(r_max * 1.0e-6), hi = std::log(r_max);
    for (int i = 0; i < samples; ++i) {
        const double r = (i == 0) ? 0.0 : std::exp(lo + (hi - lo) * (i - 1) / std::max(1, samples - 2));
        const double raw = std::abs(eval_checked(resc, r) + std::log(shift + r));
        const double logterm = std::log(shift + r);
        const double weighted = raw / (delta * logterm * logterm);
        if (raw > rep.sup_raw) {
            rep.sup_raw = raw;
            rep.r_at_sup = r;
        }
        rep.sup_weighted = std::max(rep.sup_weighted, weighted);
    }
    return rep;
}

}  // namespace gsqg
