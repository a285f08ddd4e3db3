#include "gsqg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "gsqg/multiplier.hpp"

namespace gsqg {

double hs_norm(const SpectralField& f, double s, double shift) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const double w = std::pow(shift + g.kmag(i, j), 2.0 * s);
            sum += g.mode_weight(j) * w * std::norm(f(i, j));
        }
    return std::sqrt(sum);
}

double log_weighted_hs_norm(const SpectralField& f, double s, double shift) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const double ak = shift + g.kmag(i, j);
            sum += g.mode_weight(j) * std::pow(ak, 2.0 * s) * std::log(ak) * std::norm(f(i, j));
        }
    return std::sqrt(sum);
}

double exponent_schedule(const NormSpec& ns, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("schedule time must be >= 0");
    return ns.s0 - ns.rate * t;
}

ConservedQuantities conserved_quantities(const SpectralField& f, const ModelSpec& model) {
    ConservedQuantities q;
    q.l2 = hs_norm(f, 0.0, f.grid().shift());
    auto table = symbol_table(f.grid(), model.biot_savart);
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const double gamma = (*table)[static_cast<std::size_t>(i) * g.cols() + j];
            sum += g.mode_weight(j) * std::abs(gamma) * std::norm(f(i, j));
        }
    q.gamma_energy = std::sqrt(sum);
    q.u_max = max_speed(f, model);
    return q;
}

double max_speed(const SpectralField& f, const ModelSpec& model) {
    VelocityField v = velocity_from_scalar(f, model.biot_savart);
    RealField u1 = inverse_transform(v.u1);
    RealField u2 = inverse_transform(v.u2);
    double m = 0.0;
    auto a = u1.values();
    auto b = u2.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::sqrt(a[i] * a[i] + b[i] * b[i]));
    return m;
}

double compare_fields(const SpectralField& a, const SpectralField& b, double s, double shift) {
    if (!a.grid().same_as(b.grid())) throw std::invalid_argument("grid mismatch");
    return hs_norm(a - b, s, shift);
}

double uniqueness_metric(const SpectralField& a, const SpectralField& b, double rate, double t,
                         double shift) {
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be >= 0");
    return compare_fields(a, b, -rate * t, shift);
}

}  // namespace gsqg
