#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Dimensionless model parameters. All dynamics runs in units gamma = 1, so
// times are gamma*t, rates are in units of gamma, and the Lorentzian width is
// lambda = 1/R.
namespace fmq {

struct Modulation {
    double delta_over_omega_mod = 0.0;  // delta / Omega
    double omega_mod_over_gamma = 0.0;  // Omega / gamma

    // (0, 0) encodes the undriven qubit.
    bool driven() const { return omega_mod_over_gamma > 0.0; }

    // Accumulated modulation phase (delta/Omega) * sin(Omega t).
    double phase(double t) const {
        if (!driven()) return 0.0;
        return delta_over_omega_mod * std::sin(omega_mod_over_gamma * t);
    }

    double period() const {
        return driven() ? 2.0 * M_PI / omega_mod_over_gamma
                        : std::numeric_limits<double>::infinity();
    }
};

struct DissipativeReservoir {
    double R = 100.0;   // gamma / lambda
    double tau1 = 0.0;  // K_B T1 / (hbar omega0)

    double lambda() const { return 1.0 / R; }
};

struct DephasingReservoir {
    double alpha = 0.0;            // coupling strength
    double s = 1.0;                // Ohmicity exponent
    double theta2 = 0.0;           // K_B T2 / (hbar omega_c)
    double omega_c_over_gamma = 1.0;
};

struct InitialState {
    std::complex<double> zeta0{0.5, 0.0};
    double pg0 = 0.5;
};

struct NumericParams {
    double rel_tol = 1e-9;    // ODE relative tolerance
    double abs_tol = 1e-12;   // ODE absolute tolerance
    double quad_tol = 1e-9;   // dephasing quadrature tolerance
};

struct SimulationConfig {
    Modulation modulation;
    DissipativeReservoir dissipative;
    DephasingReservoir dephasing;
    InitialState initial;
    double t_max = 50.0;
    int n_samples = 2001;
    double omega0_over_gamma = 1e5;
    NumericParams numeric;
};

// Bose-Einstein mean occupation at the qubit frequency, tau = K_B T/(hbar w).
inline double mean_occupation(double tau) {
    if (tau < 0.0) throw std::domain_error("mean_occupation: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    const double x = 1.0 / tau;
    if (x > 700.0) return std::exp(-x);  // e^{1/tau} - 1 ~ e^{1/tau}
    return 1.0 / std::expm1(x);
}

struct ValidationIssue {
    std::string field;
    std::string message;
};

// Config with derived quantities cached after validation.
struct ValidatedConfig {
    SimulationConfig config;
    double lambda = 0.0;  // 1/R in gamma = 1 units
    double n_bar1 = 0.0;  // dissipative-bath occupation at omega0
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::optional<ValidatedConfig> validated;

    bool ok() const { return issues.empty(); }

    std::string summary() const {
        std::string out;
        for (const auto& i : issues) {
            if (!out.empty()) out += "; ";
            out += i.field + ": " + i.message;
        }
        return out;
    }
};

inline ValidationReport validate(const SimulationConfig& c) {
    ValidationReport rep;
    auto fail = [&](const std::string& field, const std::string& msg) {
        rep.issues.push_back({field, msg});
    };

    if (c.modulation.delta_over_omega_mod < 0.0)
        fail("modulation.delta_over_omega_mod", "must be >= 0");
    if (c.modulation.omega_mod_over_gamma < 0.0)
        fail("modulation.omega_mod_over_gamma", "must be >= 0");
    if (!(c.dissipative.R > 0.0)) fail("dissipative.R", "must be > 0");
    if (c.dissipative.tau1 < 0.0) fail("dissipative.tau1", "must be >= 0");
    if (c.dephasing.alpha < 0.0) fail("dephasing.alpha", "must be >= 0");
    if (!(c.dephasing.s > 0.0)) fail("dephasing.s", "must be > 0");
    if (c.dephasing.theta2 < 0.0) fail("dephasing.theta2", "must be >= 0");
    if (!(c.dephasing.omega_c_over_gamma > 0.0))
        fail("dephasing.omega_c_over_gamma", "must be > 0");
    if (c.initial.pg0 < 0.0 || c.initial.pg0 > 1.0)
        fail("initial.pg0", "must lie in [0, 1]");
    else if (std::norm(c.initial.zeta0) >
             c.initial.pg0 * (1.0 - c.initial.pg0) + 1e-15)
        fail("initial.zeta0", "|zeta0|^2 > pg0*(1-pg0): not a density matrix");
    if (!(c.t_max > 0.0)) fail("t_max", "must be > 0");
    if (c.n_samples < 2) fail("n_samples", "must be >= 2");
    if (!(c.numeric.rel_tol > 0.0)) fail("numeric.rel_tol", "must be > 0");
    if (!(c.numeric.abs_tol > 0.0)) fail("numeric.abs_tol", "must be > 0");
    if (!(c.numeric.quad_tol > 0.0)) fail("numeric.quad_tol", "must be > 0");

    // Modulated runs must resolve the drive: >= 40 samples per period.
    if (c.modulation.omega_mod_over_gamma > 0.0 && c.n_samples >= 2 &&
        c.t_max > 0.0) {
        const double dt = c.t_max / (c.n_samples - 1);
        if (c.modulation.period() / dt < 40.0 * (1.0 - 1e-12))
            fail("n_samples", "grid must have >= 40 samples per modulation period");
    }

    if (rep.ok()) {
        ValidatedConfig v;
        v.config = c;
        v.lambda = c.dissipative.lambda();
        v.n_bar1 = mean_occupation(c.dissipative.tau1);
        rep.validated = v;
    }
    return rep;
}

// Throwing convenience wrapper.
inline ValidatedConfig validate_or_throw(const SimulationConfig& c) {
    ValidationReport rep = validate(c);
    if (!rep.ok()) throw std::invalid_argument("invalid config: " + rep.summary());
    return *rep.validated;
}

}  // namespace fmq
