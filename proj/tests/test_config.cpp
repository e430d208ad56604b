#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fmq/config.hpp"
#include "fmq/presets.hpp"

using namespace fmq;

TEST_CASE("mean_occupation limits and direct values") {
    CHECK(mean_occupation(0.0) == 0.0);
    // Direct evaluation of 1/(e^{1/tau} - 1).
    CHECK(mean_occupation(2.6) == Catch::Approx(1.0 / std::expm1(1.0 / 2.6)).epsilon(1e-14));
    CHECK(mean_occupation(2.6) == Catch::Approx(2.1319).epsilon(1e-4));
    CHECK(mean_occupation(260.0) == Catch::Approx(259.5003205127415).epsilon(1e-12));
    // Deep quantum regime underflows to numerically zero.
    CHECK(mean_occupation(2.6e-3) < 1e-100);
    CHECK_THROWS_AS(mean_occupation(-0.1), std::domain_error);
}

TEST_CASE("mean_occupation is monotone and classical for large tau") {
    double prev = -1.0;
    for (double tau = 0.0; tau <= 20.0; tau += 0.37) {
        const double n = mean_occupation(tau);
        CHECK(n > prev);
        prev = n;
    }
    for (double tau : {100.0, 500.0, 5000.0})
        CHECK(mean_occupation(tau) / tau == Catch::Approx(1.0).epsilon(0.01));
    // Leading classical correction n ~ tau - 1/2.
    CHECK(mean_occupation(1000.0) == Catch::Approx(999.5).margin(1e-3));
}

TEST_CASE("validate accepts the fig2 preset") {
    const SimulationConfig cfg = preset("fig2").config;
    CHECK(cfg.dissipative.R == 100.0);
    CHECK(cfg.modulation.delta_over_omega_mod == Catch::Approx(2.40483));
    CHECK(cfg.modulation.omega_mod_over_gamma == 5.0);
    CHECK(cfg.dissipative.tau1 == Catch::Approx(2.6e-3));
    CHECK(cfg.dephasing.alpha == 0.0);
    const ValidationReport rep = validate(cfg);
    REQUIRE(rep.ok());
    CHECK(rep.validated->lambda == Catch::Approx(0.01));
}

TEST_CASE("validate rejects invalid states with field paths") {
    SimulationConfig cfg;

    SECTION("non-positive R") {
        cfg.dissipative.R = 0.0;
        const auto rep = validate(cfg);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].field == "dissipative.R");
    }
    SECTION("coherence exceeds the positivity bound") {
        cfg.initial.pg0 = 0.5;
        cfg.initial.zeta0 = {0.6, 0.0};
        const auto rep = validate(cfg);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].field == "initial.zeta0");
    }
    SECTION("grid too coarse for the modulation") {
        cfg.modulation = {2.40483, 5.0};
        cfg.t_max = 50.0;
        cfg.n_samples = 100;
        const auto rep = validate(cfg);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].field == "n_samples");
    }
    SECTION("negative temperature") {
        cfg.dissipative.tau1 = -1.0;
        CHECK_FALSE(validate(cfg).ok());
    }
}

TEST_CASE("validate is idempotent") {
    const SimulationConfig cfg = preset("fig6b").config;
    const auto once = validate(cfg);
    REQUIRE(once.ok());
    const auto twice = validate(once.validated->config);
    REQUIRE(twice.ok());
    CHECK(twice.validated->lambda == once.validated->lambda);
    CHECK(twice.validated->n_bar1 == once.validated->n_bar1);
}

TEST_CASE("all presets validate") {
    for (const auto& p : presets()) {
        INFO(p.name);
        CHECK(validate(p.config).ok());
    }
}
