#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmq/config.hpp"

// Desk-scale scenario presets. Temperatures follow the named figure scenarios
// (tau1 = K_B T1 / hbar omega0, theta2 = K_B T2 / hbar omega_c); the driven
// branch always uses the optimal modulation delta = 2.40483 Omega, Omega = 5.
// omega_c/gamma is not fixed by the scenarios; the figure presets keep the
// default of 1 and the threshold presets pin 2 (see below).
namespace fmq {

inline constexpr double kOptimalDeltaOverOmega = 2.40483;
inline constexpr double kOmegaModOverGamma = 5.0;

struct Preset {
    std::string name;
    std::string description;
    SimulationConfig config;      // driven variant where applicable
    bool paired = false;          // emit driven + undriven trajectory pair
    std::vector<double> alpha_family;  // fig5-style alpha sweep, undriven
};

namespace detail {

inline SimulationConfig scenario(double tau1, double alpha, double theta2,
                                 double t_max, int n_samples, bool driven,
                                 double omega_c = 1.0) {
    SimulationConfig c;
    if (driven)
        c.modulation = {kOptimalDeltaOverOmega, kOmegaModOverGamma};
    c.dissipative.R = 100.0;
    c.dissipative.tau1 = tau1;
    c.dephasing.alpha = alpha;
    c.dephasing.theta2 = theta2;
    c.dephasing.omega_c_over_gamma = omega_c;
    c.t_max = t_max;
    c.n_samples = n_samples;
    return c;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = [] {
        std::vector<Preset> p;
        // Dissipative-only temperature scan.
        Preset fig2{"fig2", "low-temperature dissipative reservoir, tau1 = 2.6e-3",
                    detail::scenario(2.6e-3, 0.0, 0.0, 1200.0, 38400 + 1, true),
                    true, {}};
        Preset fig3{"fig3",
                    "intermediate-temperature dissipative reservoir, tau1 = 2.6",
                    detail::scenario(2.6, 0.0, 0.0, 400.0, 12800 + 1, true),
                    true, {}};
        Preset fig4{"fig4", "high-temperature dissipative reservoir, tau1 = 260",
                    detail::scenario(260.0, 0.0, 0.0, 100.0, 3200 + 1, true),
                    true, {}};
        // Zero-temperature alpha family, undriven.
        Preset fig5{"fig5",
                    "zero-temperature alpha sweep, undriven, R = 100",
                    detail::scenario(0.0, 0.01, 0.0, 50.0, 2001, false),
                    false,
                    {0.01, 0.1, 0.5, 1.0}};
        // Combined dissipative + dephasing scenarios, alpha = 0.01.
        Preset fig6a{"fig6a",
                     "combined noises, tau1 = 2.6e-3, theta2 = 1e-5, alpha = 0.01",
                     detail::scenario(2.6e-3, 0.01, 1e-5, 200.0, 6400 + 1, true),
                     true, {}};
        Preset fig6b{"fig6b",
                     "combined noises, tau1 = 2.6, theta2 = 1e-2, alpha = 0.01",
                     detail::scenario(2.6, 0.01, 1e-2, 200.0, 6400 + 1, true),
                     true, {}};
        Preset fig6c{"fig6c",
                     "combined noises, tau1 = 260, theta2 = 1, alpha = 0.01",
                     detail::scenario(260.0, 0.01, 1.0, 100.0, 3200 + 1, true),
                     true, {}};
        // Threshold-search scenarios (same temperature pairs as fig6).
        // These fix omega_c/gamma = 2: at the default cutoff the
        // theta2 = 1e-2 bath never reaches its thermal regime within the
        // relevant window, which degenerates the low/mid temperature
        // thresholds; at cutoffs >= 3 the hottest bath collapses the
        // coherence below one modulation period and the threshold turns
        // around. omega_c/gamma = 2 keeps all three scenarios in the regime
        // where the threshold decreases with temperature.
        // At tau1 = 2.6e-3 the undriven coherence time is near 2R, so that
        // scenario carries a longer horizon than its warmer partners.
        Preset lowT{"lowT",
                    "threshold search at tau1 = 2.6e-3, theta2 = 1e-5",
                    detail::scenario(2.6e-3, 0.01, 1e-5, 260.0, 8320 + 1, true,
                                     2.0),
                    false, {}};
        Preset midT{"midT", "threshold search at tau1 = 2.6, theta2 = 1e-2",
                    detail::scenario(2.6, 0.01, 1e-2, 60.0, 1920 + 1, true,
                                     2.0),
                    false, {}};
        Preset highT{"highT", "threshold search at tau1 = 260, theta2 = 1",
                     detail::scenario(260.0, 0.01, 1.0, 60.0, 1920 + 1, true,
                                      2.0),
                     false, {}};
        p.insert(p.end(), {fig2, fig3, fig4, fig5, fig6a, fig6b, fig6c, lowT,
                           midT, highT});
        return p;
    }();
    return table;
}

inline const Preset& preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace fmq
