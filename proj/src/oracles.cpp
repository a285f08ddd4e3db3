#include "gsqg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "gsqg/diagnostics.hpp"
#include "gsqg/multiplier.hpp"

namespace gsqg {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

}  // namespace

double elementary_lhs(double s, double xi1, double xi2, double eta1, double eta2) {
    const double nxi = std::hypot(xi1, xi2);
    const double neta = std::hypot(eta1, eta2);
    const double d1 = xi1 - eta1, d2 = xi2 - eta2;
    const double nd = std::hypot(d1, d2);
    const double dot = d1 * eta1 + d2 * eta2;
    const double cross = (nd > 0.0) ? s * dot * std::pow(nd, s - 2.0) : 0.0;
    return std::abs(std::pow(nxi, s) - std::pow(neta, s) - std::pow(nd, s) - cross);
}

double elementary_rhs_core(double s, double xi1, double xi2, double eta1, double eta2) {
    const double neta = std::hypot(eta1, eta2);
    const double nd = std::hypot(xi1 - eta1, xi2 - eta2);
    return neta * neta * std::pow(nd, s - 2.0) + nd * std::pow(neta, s - 1.0);
}

OracleReport check_elementary_inequality(double s, std::uint64_t samples, std::uint64_t seed) {
    if (!(s >= 3.0)) throw std::invalid_argument("elementary inequality requires s >= 3");
    std::mt19937_64 rng(seed);
    OracleReport rep;
    rep.lemma = "2.1";
    rep.samples = samples;
    rep.seed = seed;
    double sup = 0.0;
    std::uint64_t skipped = 0;
    const double two_pi = 2.0 * Grid::pi();
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double rx = std::pow(10.0, -3.0 + 6.0 * uniform01(rng));
        const double ax = two_pi * uniform01(rng);
        const double re = std::pow(10.0, -3.0 + 6.0 * uniform01(rng));
        const double ae = two_pi * uniform01(rng);
        const double xi1 = rx * std::cos(ax), xi2 = rx * std::sin(ax);
        const double eta1 = re * std::cos(ae), eta2 = re * std::sin(ae);
        const double den = elementary_rhs_core(s, xi1, xi2, eta1, eta2);
        if (den < 1.0e-12) {
            ++skipped;
            continue;
        }
        sup = std::max(sup, elementary_lhs(s, xi1, xi2, eta1, eta2) / den);
    }
    rep.skipped = skipped;
    rep.worst_ratio = sup;
    rep.empirical_constant = sup;
    rep.pass = std::isfinite(sup);
    rep.detail = fmt("s=%g, sup=%.6g, skipped=%g", s, sup, static_cast<double>(skipped));
    return rep;
}

namespace {

// Oracle fields live on a doubled grid so quadratic products are exact
// convolutions (max product mode 2n/3 < Nyquist n of the 2n grid).
SpectralField embed_double(const SpectralField& f) {
    const Grid& g = f.grid();
    Grid big = make_grid(2 * g.n(), g.length(), g.shift());
    SpectralField out(big);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const Complex v = f(i, j);
            if (v == Complex{}) continue;
            out(big.row_of_k1(g.k1(i)), j) = v;
        }
    return out;
}

void require_band_limited(const SpectralField& f, const char* name) {
    const Grid& g = f.grid();
    const double tol = 1.0e-13 * std::max(f.max_abs(), 1.0e-300);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (3 * std::max(std::abs(g.k1(i)), j) > g.n() && std::abs(f(i, j)) > tol)
                throw std::invalid_argument(std::string(name) +
                                            ": input not band-limited to the 2/3 cutoff");
}

// sqrt( sum |k|^{2s} |f_hat|^2 ); the k = 0 term enters only for s = 0.
double lambda_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const double r = g.kmag(i, j);
            double w;
            if (r == 0.0)
                w = (s == 0.0) ? 1.0 : 0.0;
            else
                w = std::pow(r, 2.0 * s);
            sum += g.mode_weight(j) * w * std::norm(f(i, j));
        }
    return std::sqrt(sum);
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
    RealField pa = inverse_transform(a);
    RealField pb = inverse_transform(b);
    RealField w(a.grid());
    auto wv = w.values();
    auto av = pa.values(), bv = pb.values();
    for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = av[i] * bv[i];
    return forward_transform(w);
}

SpectralField apply_power(const SpectralField& f, double s) {
    // |k|^s multiplier with the k=0 mode annihilated (s > 0 in all uses)
    const Grid& g = f.grid();
    SpectralField out = f;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            const double r = g.kmag(i, j);
            out(i, j) *= (r == 0.0) ? 0.0 : std::pow(r, s);
        }
    return out;
}

// i k_j m(|k|) multiplier (derivative composed with a radial factor);
// Nyquist zeroed along the differentiated axis.
SpectralField apply_deriv_radial(const SpectralField& f, int axis, const std::vector<double>& m) {
    const Grid& g = f.grid();
    const int half = g.n() / 2;
    const double kf = g.freq_scale();
    SpectralField out(g);
    for (int i = 0; i < g.rows(); ++i) {
        const int kk1 = g.k1(i);
        for (int j = 0; j < g.cols(); ++j) {
            const int ka = (axis == 0) ? kk1 : j;
            if (ka == half) continue;
            const double w = kf * ka * m[static_cast<std::size_t>(i) * g.cols() + j];
            const Complex v = f(i, j);
            out(i, j) = Complex(-w * v.imag(), w * v.real());
        }
    }
    return out;
}

}  // namespace

OracleReport check_kato_ponce(const SpectralField& f, const SpectralField& g, double s, double eps) {
    if (!(s > 0.0) || !(eps > 0.0)) throw std::invalid_argument("need s > 0 and eps > 0");
    if (!f.grid().same_as(g.grid())) throw std::invalid_argument("grid mismatch");
    require_band_limited(f, "f");
    require_band_limited(g, "g");

    SpectralField f2 = embed_double(f);
    SpectralField g2 = embed_double(g);
    const double a = f2.grid().shift();

    SpectralField lam_s_of_fg = apply_power(pointwise_product(f2, g2), s);
    SpectralField f_times_lam_s_g = pointwise_product(f2, apply_power(g2, s));
    const double num = std::sqrt(spectral_l2sq(lam_s_of_fg - f_times_lam_s_g));

    const double den = hs_norm(f2, 2.0 + eps, a) * lambda_norm(g2, s - 1.0) +
                       lambda_norm(f2, s) * hs_norm(g2, 1.0 + eps, a);

    OracleReport rep;
    rep.lemma = "2.2";
    rep.samples = 1;
    rep.worst_ratio = (den > 0.0) ? num / den : 0.0;
    rep.empirical_constant = rep.worst_ratio;
    rep.pass = std::isfinite(rep.worst_ratio);
    rep.detail = fmt("n=%g, s=%g, eps=%g, ratio=%.8g", static_cast<double>(f.grid().n()), s, eps,
                     rep.worst_ratio);
    return rep;
}

OracleReport check_taylor_symbol_bounds(double delta, const std::vector<double>& r_grid, double shift) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    OracleReport rep;
    rep.lemma = "2.3";
    rep.samples = r_grid.size();
    double worst = 0.0;
    std::uint64_t violations = 0;
    std::uint64_t degenerate = 0;
    for (double r : r_grid) {
        if (!(r >= 0.0)) throw std::invalid_argument("r must be >= 0");
        const double L = std::log(shift + r);
        const double p = std::pow(shift + r, -delta);
        const double lhs1 = std::abs(delta * L - 1.0 + p);
        const double rhs1 = delta * delta * L * L;
        const double lhs2 = std::abs(p - 1.0);
        const double rhs2 = delta * L;
        if (rhs1 == 0.0 || rhs2 == 0.0) {
            if (lhs1 > 0.0 || lhs2 > 0.0) ++violations;
            ++degenerate;
            continue;
        }
        const double q = std::max(lhs1 / rhs1, lhs2 / rhs2);
        worst = std::max(worst, q);
        if (q > 1.0) ++violations;
    }
    rep.skipped = degenerate;
    rep.worst_ratio = worst;
    rep.empirical_constant = worst;
    rep.pass = violations == 0;
    rep.build_breaking = !rep.pass;
    rep.detail = fmt("delta=%g, worst LHS/RHS=%.8g, violations=%g", delta, worst,
                     static_cast<double>(violations));
    return rep;
}

OracleReport check_sqrt_commutator(const SpectralField& f, const SpectralField& g, double s,
                                   double delta, double eps) {
    if (!(s > 0.0) || !(eps > 0.0)) throw std::invalid_argument("need s > 0 and eps > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (!f.grid().same_as(g.grid())) throw std::invalid_argument("grid mismatch");
    require_band_limited(f, "f");
    require_band_limited(g, "g");

    SpectralField f2 = embed_double(f);
    SpectralField g2 = embed_double(g);
    const Grid& big = f2.grid();
    const double a = big.shift();

    // m(|k|) = (1 - (a+|k|)^{-delta})^{1/2}
    std::vector<double> m(big.spectral_size());
    for (int i = 0; i < big.rows(); ++i)
        for (int j = 0; j < big.cols(); ++j) {
            const double r = big.kmag(i, j);
            m[static_cast<std::size_t>(i) * big.cols() + j] =
                std::sqrt(std::max(0.0, 1.0 - std::pow(a + r, -delta)));
        }

    SpectralField lam_s_g = apply_power(g2, s);
    SpectralField f_lam_s_g = pointwise_product(f2, lam_s_g);

    double num = 0.0;
    for (int axis : {0, 1}) {
        SpectralField t1 = apply_deriv_radial(f_lam_s_g, axis, m);
        SpectralField t2 = pointwise_product(f2, apply_deriv_radial(lam_s_g, axis, m));
        num = std::max(num, std::sqrt(spectral_l2sq(t1 - t2)));
    }

    const double den = std::sqrt(delta) * hs_norm(f2, 2.0 + eps, a) * log_weighted_hs_norm(g2, s, a);

    OracleReport rep;
    rep.lemma = "2.4";
    rep.samples = 1;
    rep.worst_ratio = (den > 0.0) ? num / den : 0.0;
    rep.empirical_constant = rep.worst_ratio;
    rep.pass = std::isfinite(rep.worst_ratio);
    rep.detail = fmt("n=%g, s=%g, delta=%g, ratio=%.8g", static_cast<double>(f.grid().n()), s, delta,
                     rep.worst_ratio);
    return rep;
}

RiccatiResult check_riccati_bound(double nu, double T, double G, const std::function<double(double)>& F,
                                  int steps, double tol) {
    if (!(T > 0.0)) throw std::invalid_argument("inadmissible: T must be positive");
    if (!(G > 0.0)) throw std::invalid_argument("inadmissible: G must be positive");
    if (!(nu >= 0.0)) throw std::invalid_argument("inadmissible: nu must be >= 0");
    if (steps < 2) throw std::invalid_argument("need >= 2 integration steps");
    if (steps % 2 != 0) ++steps;

    const double h = T / steps;
    double intF = F(0.0) + F(T);
    for (int i = 1; i < steps; ++i) {
        const double v = F(i * h);
        if (!(v >= 0.0)) throw std::invalid_argument("inadmissible: F must be nonnegative");
        intF += (i % 2 == 1 ? 4.0 : 2.0) * v;
    }
    intF *= h / 3.0;
    if (!(F(0.0) >= 0.0) || !(F(T) >= 0.0))
        throw std::invalid_argument("inadmissible: F must be nonnegative");

    RiccatiResult res;
    res.admissibility = 8.0 * nu * T * G * intF;
    if (res.admissibility > 1.0 + 1.0e-12)
        throw std::invalid_argument(fmt("inadmissible: 8 nu T G int F = %.6g > 1", res.admissibility));

    res.bound = std::min(3.0 / (2.0 * T * G), 12.0 * nu * intF);
    double y = 0.0;
    double ymax = 0.0;
    auto rhs = [&](double t, double yv) { return nu * F(t) + G * yv * yv; };
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const double k1 = rhs(t, y);
        const double k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = rhs(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ymax = std::max(ymax, y);
    }
    res.y_end = y;
    res.y_max = ymax;
    res.pass = ymax <= res.bound + tol;
    return res;
}

OracleReport check_riccati_random(int tuples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    OracleReport rep;
    rep.lemma = "2.5";
    rep.samples = static_cast<std::uint64_t>(tuples);
    rep.seed = seed;
    double worst = 0.0;
    int violations = 0;
    const double two_pi = 2.0 * Grid::pi();
    for (int i = 0; i < tuples; ++i) {
        const double T = 0.5 + 1.5 * uniform01(rng);
        const double G = 0.1 + 4.9 * uniform01(rng);
        const double c0 = 0.1 + 1.9 * uniform01(rng);
        const double c1 = 2.0 * uniform01(rng);
        const double omega = 0.5 + 5.5 * uniform01(rng);
        const double phase = two_pi * uniform01(rng);
        const double frac = 0.05 + 0.95 * uniform01(rng);
        auto F = [=](double t) { return c0 + c1 * (1.0 + std::sin(omega * t + phase)); };
        // F > 0, so int F > 0 and nu below is finite and admissible by construction.
        const int steps = 20000;
        const double h = T / steps;
        double intF = F(0.0) + F(T);
        for (int k = 1; k < steps; ++k) intF += (k % 2 == 1 ? 4.0 : 2.0) * F(k * h);
        intF *= h / 3.0;
        const double nu = frac / (8.0 * T * G * intF);
        RiccatiResult r = check_riccati_bound(nu, T, G, F, steps, tol);
        if (r.bound > 0.0) worst = std::max(worst, r.y_max / r.bound);
        if (!r.pass) ++violations;
    }
    rep.worst_ratio = worst;
    rep.empirical_constant = worst;
    rep.pass = violations == 0;
    rep.build_breaking = !rep.pass;
    rep.detail = fmt("tuples=%g, worst y_max/bound=%.6g, violations=%g", static_cast<double>(tuples),
                     worst, static_cast<double>(violations));
    return rep;
}

}  // namespace gsqg
