#include <cmath>

#include "doctest.h"
#include "gsqg/dynamics.hpp"
#include "gsqg/multiplier.hpp"

using namespace gsqg;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpectralField band_ic(const Grid& g, std::uint64_t seed, double s0 = 5.0, double amplitude = 1.0,
                      int lo = 1, int hi = 6) {
    IcConfig ic;
    ic.kind = IcConfig::Kind::random_band;
    ic.band_lo = lo;
    ic.band_hi = hi;
    ic.amplitude = amplitude;
    ic.seed = seed;
    NormConfig norms;
    norms.s0 = s0;
    return build_initial_condition(g, ic, norms, DealiasRule::two_thirds);
}

SpectralField shear(const Grid& g, double amp = 1.0) {
    SpectralField f(g);
    f.set_pair(1, 0, Complex(0.5 * amp, 0.0));
    return f;
}

}  // namespace

TEST_CASE("advection tendency vanishes on a shear and on zero") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    for (const ModelSpec& model :
         {ModelSpec::ohkitani(10.0), ModelSpec::delta_sqg(0.3, 10.0), ModelSpec::rescaled_delta_sqg(0.2, 10.0)}) {
        SpectralField r = advection_rhs(shear(g), model);
        CHECK(r.max_abs() < 1e-15);
        SpectralField rz = advection_rhs(SpectralField(g), model);
        CHECK(rz.max_abs() == 0.0);
    }
}

TEST_CASE("advection is skew-symmetric against theta and Gamma theta") {
    Grid g = make_grid(64, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::ohkitani(10.0);
    SpectralField theta = band_ic(g, 321, 5.0, 50.0, 1, 12);
    SpectralField adv = advection_rhs(theta, model);

    const double scale = std::sqrt(spectral_l2sq(theta)) * std::sqrt(spectral_l2sq(adv));
    CHECK(std::abs(l2_inner(theta, adv)) / (g.length() * g.length()) <= 1e-10 * scale);

    // d/dt ||Gamma^(1/2) theta||^2 pairing vanishes as well
    SpectralField gtheta = apply_symbol(theta, model.biot_savart);
    CHECK(std::abs(l2_inner(gtheta, adv)) / (g.length() * g.length()) <=
          1e-10 * std::sqrt(spectral_l2sq(gtheta)) * std::sqrt(spectral_l2sq(adv)));
}

TEST_CASE("rhs includes the dissipative term") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::dissipative_delta_sqg(0.1, 2.0, MultiplierSpec::log_law(10.0), 10.0);
    SimulationState st{0.0, shear(g), 0};
    SpectralField r = rhs(st, model);
    // advection part vanishes on the shear; left with -kappa log(11) theta_hat
    CHECK(r.at(1, 0).real() == doctest::Approx(-2.0 * std::log(11.0) * 0.5).epsilon(1e-12));
}

TEST_CASE("steady shear is a fixed point over 1000 steps") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::ohkitani(10.0);
    SimulationState st{0.0, shear(g), 0};
    for (int i = 0; i < 1000; ++i) step_rk4(st, model, 1e-3);
    RealField drift = inverse_transform(st.theta - shear(g));
    CHECK(drift.max_abs() <= 1e-10);
}

TEST_CASE("pure dissipation applies the exact integrating factor") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::ohkitani(10.0);
    model.advection = false;
    model.dissipation = Dissipation{1.0, MultiplierSpec::log_law(10.0)};
    SimulationState st{0.0, shear(g), 0};
    const double dt = 0.7371;
    step_rk4(st, model, dt);
    const double expected = 0.5 * std::exp(-std::log(11.0) * dt);
    CHECK(st.theta.at(1, 0).real() == doctest::Approx(expected).epsilon(1e-15));
    step_rk4(st, model, dt);
    CHECK(st.theta.at(1, 0).real() ==
          doctest::Approx(0.5 * std::exp(-std::log(11.0) * 2 * dt)).epsilon(1e-15));
}

TEST_CASE("temporal self-convergence order is close to four") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::ohkitani(10.0);
    SpectralField theta0 = band_ic(g, 99, 5.0, 2.0e5, 1, 6);

    auto advance = [&](double dt, int steps) {
        SimulationState st{0.0, theta0, 0};
        for (int i = 0; i < steps; ++i) step_rk4(st, model, dt);
        return st.theta;
    };
    const double T = 0.1;
    SpectralField c = advance(T / 8, 8);
    SpectralField m = advance(T / 16, 16);
    SpectralField f = advance(T / 32, 32);
    const double e1 = std::sqrt(spectral_l2sq(c - m));
    const double e2 = std::sqrt(spectral_l2sq(m - f));
    const double p = std::log2(e1 / e2);
    CHECK(p >= 3.5);
    CHECK(p <= 4.6);
}

TEST_CASE("cfl_dt formula") {
    Grid g = make_grid(128, 2 * kPi, 10.0);
    ModelSpec model = ModelSpec::ohkitani(10.0);
    SimulationState zero{0.0, SpectralField(g), 0};
    CHECK(cfl_dt(zero, model, 0.5, 0.25) == 0.25);

    // ||u||_inf = log(11) for cos(x1); scale theta so ||u||_inf = 1
    SpectralField theta = shear(g, 1.0 / std::log(11.0));
    SimulationState st{0.0, theta, 0};
    CHECK(cfl_dt(st, model, 0.5, 1e9) == doctest::Approx(0.024543692606170260).epsilon(1e-10));

    Grid g2 = make_grid(256, 2 * kPi, 10.0);
    SimulationState st2{0.0, shear(g2, 1.0 / std::log(11.0)), 0};
    CHECK(cfl_dt(st2, model, 0.5, 1e9) ==
          doctest::Approx(0.5 * cfl_dt(st, model, 0.5, 1e9)).epsilon(1e-10));

    CHECK_THROWS_AS(cfl_dt(st, model, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("run: t_end = 0 yields a single record of the IC") {
    SimulationConfig cfg;
    cfg.grid.n = 16;
    cfg.model = ModelSpec::ohkitani(10.0);
    cfg.time.t_end = 0.0;
    cfg.ic.kind = IcConfig::Kind::shear;
    cfg.ic.amplitude = 1.0;
    RunResult r = run(cfg);
    CHECK(r.series.size() == 1);
    CHECK(r.series[0].t == 0.0);
    CHECK(r.final_state.theta.at(1, 0).real() == doctest::Approx(0.5));
    CHECK_FALSE(r.blowup.blew_up);
}

TEST_CASE("run: shear stays put to t_end = 1") {
    SimulationConfig cfg;
    cfg.grid.n = 32;
    cfg.model = ModelSpec::delta_sqg(0.2, 10.0);
    cfg.time.mode = TimeConfig::Mode::fixed;
    cfg.time.dt = 0.01;
    cfg.time.t_end = 1.0;
    cfg.ic.kind = IcConfig::Kind::shear;
    RunResult r = run(cfg);
    Grid g = r.final_state.theta.grid();
    RealField drift = inverse_transform(r.final_state.theta - shear(g));
    CHECK(drift.max_abs() <= 1e-10);
}

TEST_CASE("run: inviscid flow conserves the mean exactly, dissipative decays it exactly") {
    SimulationConfig cfg;
    cfg.grid.n = 32;
    cfg.model = ModelSpec::ohkitani(10.0);
    cfg.time.mode = TimeConfig::Mode::fixed;
    cfg.time.dt = 0.02;
    cfg.time.t_end = 0.3;
    cfg.ic.kind = IcConfig::Kind::modes;
    cfg.ic.modes = {{0, 0, Complex(0.75, 0.0)}, {1, 2, Complex(0.2, 0.1)}, {3, 1, Complex(-0.1, 0.05)}};
    RunResult r = run(cfg);
    CHECK(r.final_state.theta.at(0, 0).real() == 0.75);
    CHECK(r.final_state.theta.at(0, 0).imag() == 0.0);

    cfg.model.dissipation = Dissipation{1.5, MultiplierSpec::log_law(10.0)};
    RunResult rd = run(cfg);
    const double factor = std::exp(-1.5 * std::log(10.0) * 0.3);
    CHECK(rd.final_state.theta.at(0, 0).real() == doctest::Approx(0.75 * factor).epsilon(1e-12));
}

TEST_CASE("run: dissipative runs are L2-nonincreasing") {
    SimulationConfig cfg;
    cfg.grid.n = 32;
    cfg.model = ModelSpec::dissipative_delta_sqg(0.2, 0.5, MultiplierSpec::log_law(10.0), 10.0);
    cfg.time.mode = TimeConfig::Mode::fixed;
    cfg.time.dt = 0.01;
    cfg.time.t_end = 0.5;
    cfg.ic.seed = 5;
    cfg.ic.band_lo = 1;
    cfg.ic.band_hi = 8;
    cfg.ic.amplitude = 10.0;
    RunResult r = run(cfg);
    double prev = 1e300;
    for (const DiagnosticsRecord& rec : r.series) {
        CHECK(rec.l2 <= prev * (1 + 1e-12));
        prev = rec.l2;
    }
}

TEST_CASE("rescaled-time integration matches plain time under t = tau/delta") {
    Grid g = make_grid(32, 2 * kPi, 10.0);
    const double delta = 0.25;
    SpectralField theta0 = band_ic(g, 17, 5.0, 1.0e5, 1, 6);

    ModelSpec plain = ModelSpec::delta_sqg(delta, 10.0);
    ModelSpec rescaled = ModelSpec::rescaled_delta_sqg(delta, 10.0);

    const double tau_end = 0.2;
    const int steps = 40;
    SimulationState a{0.0, theta0, 0};
    SimulationState b{0.0, theta0, 0};
    const double dtau = tau_end / steps;
    for (int i = 0; i < steps; ++i) {
        step_rk4(a, rescaled, dtau);
        step_rk4(b, plain, dtau / delta);
    }
    const double diff = std::sqrt(spectral_l2sq(a.theta - b.theta));
    const double size = std::sqrt(spectral_l2sq(a.theta));
    CHECK(diff <= 1e-8 * size);
}

TEST_CASE("blow-up is reported with the last valid state") {
    SimulationConfig cfg;
    cfg.grid.n = 32;
    cfg.model = ModelSpec::ohkitani(10.0);
    cfg.time.mode = TimeConfig::Mode::fixed;
    cfg.time.dt = 0.05;
    cfg.time.t_end = 2.0;
    cfg.ic.seed = 9;
    cfg.ic.band_hi = 8;
    cfg.ic.amplitude = 1.0e4;
    cfg.blowup_ceiling = 1.0e-6;  // artificially low ceiling trips immediately
    RunResult r = run(cfg);
    CHECK(r.blowup.blew_up);
    CHECK(r.blowup.reason == "velocity amplitude exceeded ceiling");
    CHECK(r.final_state.theta.finite());
    CHECK(r.final_state.t < 2.0);
}
