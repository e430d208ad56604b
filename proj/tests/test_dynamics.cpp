#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "fmq/dynamics.hpp"
#include "fmq/presets.hpp"
#include "fmq/simulate.hpp"

using namespace fmq;

namespace {
const Modulation kOptimal{kOptimalDeltaOverOmega, kOmegaModOverGamma};
}

TEST_CASE("alpha = 0 reduces to the dissipative observables") {
    SimulationConfig cfg = preset("fig4").config;
    cfg.t_max = 20.0;
    cfg.n_samples = 641;
    const auto v = validate_or_throw(cfg);
    const auto res = run_simulation(v);

    std::vector<double> zeta, pg;
    dissipative_observables(res.amplitude, v.n_bar1, cfg.initial, zeta, pg);
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        CHECK(res.qubit.coherence_abs[i] == zeta[i]);
        CHECK(res.qubit.pg[i] == pg[i]);
    }
}

TEST_CASE("pure dephasing leaves populations untouched") {
    SimulationConfig cfg;
    cfg.modulation = {};
    cfg.dissipative.R = 1e9;  // dissipative channel effectively off
    cfg.dephasing.alpha = 0.3;
    cfg.t_max = 20.0;
    cfg.n_samples = 201;
    const auto v = validate_or_throw(cfg);
    const auto res = run_simulation(v);
    const double z0 = std::abs(cfg.initial.zeta0);
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        CHECK(res.qubit.pg[i] == Catch::Approx(cfg.initial.pg0).margin(1e-8));
        const double t = res.grid[i];
        CHECK(res.qubit.coherence_abs[i] ==
              Catch::Approx(z0 * std::pow(1.0 + t * t, -cfg.dephasing.alpha))
                  .margin(1e-6));
    }
}

TEST_CASE("combined coherence factorizes into channel products") {
    SimulationConfig cfg = preset("fig6b").config;
    cfg.t_max = 30.0;
    cfg.n_samples = 961;
    const auto v = validate_or_throw(cfg);
    const auto res = run_simulation(v);

    // Dissipative-only and dephasing-only factors recomputed independently.
    std::vector<double> zeta_dis, pg;
    dissipative_observables(res.amplitude, v.n_bar1, cfg.initial, zeta_dis, pg);
    const double z0 = std::abs(cfg.initial.zeta0);
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        const double zeta_deph = z0 * std::exp(-res.dephasing.gamma_tilde[i]);
        CHECK(res.qubit.coherence_abs[i] ==
              Catch::Approx(zeta_dis[i] * zeta_deph / z0).epsilon(1e-12));
    }
}

TEST_CASE("coherence magnitude ignores the phase of zeta(0)") {
    SimulationConfig cfg = preset("fig6a").config;
    cfg.t_max = 10.0;
    cfg.n_samples = 321;
    SimulationConfig rotated = cfg;
    rotated.initial.zeta0 = std::polar(std::abs(cfg.initial.zeta0), 1.234);
    const auto a = run_simulation(validate_or_throw(cfg));
    const auto b = run_simulation(validate_or_throw(rotated));
    for (std::size_t i = 0; i < a.grid.size(); ++i)
        CHECK(a.qubit.coherence_abs[i] == b.qubit.coherence_abs[i]);
}

TEST_CASE("coherence never exceeds its initial value") {
    for (const char* name : {"fig2", "fig5", "fig6c"}) {
        SimulationConfig cfg = preset(name).config;
        cfg.t_max = 20.0;
        cfg.n_samples = 641;
        const auto res = run_simulation(validate_or_throw(cfg));
        const double z0 = std::abs(cfg.initial.zeta0);
        for (double z : res.qubit.coherence_abs) CHECK(z <= z0 + 1e-12);
    }
}

TEST_CASE("reported phase follows the modulated frequency integral") {
    SimulationConfig cfg = preset("fig2").config;
    cfg.t_max = 10.0;
    cfg.n_samples = 321;
    cfg.omega0_over_gamma = 1e3;
    const auto res = run_simulation(validate_or_throw(cfg), /*with_phase=*/true);
    REQUIRE(res.qubit.has_phase);
    for (std::size_t i = 0; i < res.grid.size(); i += 29) {
        const double t = res.grid[i];
        const double expected =
            0.5 * (cfg.omega0_over_gamma * t +
                   cfg.modulation.delta_over_omega_mod *
                       std::sin(cfg.modulation.omega_mod_over_gamma * t));
        CHECK(res.qubit.coherence_phase[i] == Catch::Approx(expected).margin(1e-9));
    }
}

TEST_CASE("positivity audit passes the |+> state across presets") {
    for (const char* name : {"fig2", "fig3", "fig4", "fig6a", "fig6b", "fig6c"}) {
        SimulationConfig cfg = preset(name).config;
        cfg.t_max = std::min(cfg.t_max, 40.0);
        cfg.n_samples = 1281;
        const auto res = run_simulation(validate_or_throw(cfg));
        const auto rep = positivity_audit(res.qubit);
        INFO(name << " worst margin " << rep.worst_margin << " at sample "
                  << rep.worst_index);
        CHECK(rep.all_ok);
        CHECK(rep.worst_margin >= -1e-10);
    }
}

TEST_CASE("positivity audit of degenerate initial states") {
    SimulationConfig cfg = preset("fig3").config;
    cfg.t_max = 40.0;
    cfg.n_samples = 1281;

    SECTION("zeta(0) = 0 is trivially positive") {
        cfg.initial.zeta0 = 0.0;
        const auto res = run_simulation(validate_or_throw(cfg));
        CHECK(positivity_audit(res.qubit).all_ok);
        for (double z : res.qubit.coherence_abs) CHECK(z == 0.0);
    }
    SECTION("maximally mixed state relaxes monotonically when Markovian") {
        cfg.modulation = {};
        cfg.dissipative.R = 0.1;  // weak coupling
        cfg.initial.zeta0 = 0.0;
        const auto v = validate_or_throw(cfg);
        const auto res = run_simulation(v);
        const double pg_inf = (v.n_bar1 + 1.0) / (2.0 * v.n_bar1 + 1.0);
        double prev = res.qubit.pg[0];
        for (std::size_t i = 1; i < res.grid.size(); ++i) {
            CHECK(res.qubit.pg[i] >= prev - 1e-10);
            prev = res.qubit.pg[i];
        }
        CHECK(res.qubit.pg.back() == Catch::Approx(pg_inf).margin(1e-4));
    }
}

TEST_CASE("combine rejects mismatched grids") {
    SimulationConfig cfg = preset("fig4").config;
    cfg.t_max = 10.0;
    cfg.n_samples = 321;
    const auto v = validate_or_throw(cfg);
    TimeGrid grid(cfg.t_max, cfg.n_samples);
    TimeGrid other(cfg.t_max, 161);
    const auto amp = solve_amplitude(cfg.modulation, cfg.dissipative.R, grid);
    const auto rates = thermal_decay(amp, v.n_bar1);
    const auto deph = dephasing_exponent(cfg.dephasing, other);
    CHECK_THROWS_AS(
        combine(amp, rates, deph, cfg.initial, v.n_bar1, cfg.modulation),
        std::invalid_argument);
}
