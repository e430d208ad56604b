#pragma once

#include "fmq/config.hpp"
#include "fmq/dephasing.hpp"
#include "fmq/dissipative.hpp"
#include "fmq/dynamics.hpp"
#include "fmq/grid.hpp"

namespace fmq {

// Everything one run produces, on a single shared grid.
struct SimulationResult {
    TimeGrid grid;
    AmplitudeTrajectory amplitude;
    DissipativeRates rates;
    DephasingTrajectory dephasing;
    QubitTrajectory qubit;
    double n_bar1 = 0.0;
};

inline SimulationResult run_simulation(const ValidatedConfig& v,
                                       bool with_phase = false) {
    const SimulationConfig& c = v.config;
    TimeGrid grid(c.t_max, c.n_samples);
    AmplitudeTrajectory amp =
        solve_amplitude(c.modulation, c.dissipative.R, grid, c.numeric);
    DissipativeRates rates = thermal_decay(amp, v.n_bar1);
    DephasingTrajectory deph =
        dephasing_exponent(c.dephasing, grid, c.numeric.quad_tol);
    QubitTrajectory qubit =
        combine(amp, rates, deph, c.initial, v.n_bar1, c.modulation,
                c.omega0_over_gamma, with_phase);
    return SimulationResult{std::move(grid), std::move(amp), std::move(rates),
                            std::move(deph), std::move(qubit), v.n_bar1};
}

}  // namespace fmq
