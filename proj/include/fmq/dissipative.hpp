#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fmq/config.hpp"
#include "fmq/grid.hpp"
#include "fmq/ode.hpp"

// Dissipative channel: probability amplitude C(t) of the excited state for a
// Lorentzian bath, and the thermal decay functionals built from it.
//
// The Volterra equation
//   dC/dt = -(lambda/2) e^{i phi(t)} Int_0^t e^{-i phi(t')} e^{-lambda(t-t')} C(t') dt'
// (gamma = 1 units, phi(t) = (delta/Omega) sin(Omega t)) is reduced exactly to
// the ODE pair
//   dC/dt = -(lambda/2) e^{i phi(t)} y,   dy/dt = -lambda y + e^{-i phi(t)} C
// via the memory variable y(t) = Int_0^t e^{-lambda(t-t')} e^{-i phi(t')} C(t') dt'.
namespace fmq {

struct AmplitudeTrajectory {
    std::vector<double> times;
    std::vector<std::complex<double>> c;      // C(t), C(0) = 1
    std::vector<std::complex<double>> c_dot;  // dC/dt
};

struct DissipativeRates {
    std::vector<double> times;
    std::vector<double> f;           // f(t) = -2 Re(Cdot/C)
    std::vector<double> gamma1;      // (n_bar + 1) f
    std::vector<double> gamma2;      // n_bar f
    std::vector<double> big_gamma;   // Gamma(t) = -(2 n_bar + 1) ln|C(t)/C(0)|
    std::vector<double> g_integral;  // G(t), population feed term
    std::vector<bool> singular_mask; // |C| below guard: f-type rates masked
};

// |C| guard below which the rate f diverges and is masked rather than clamped.
inline constexpr double kSingularGuard = 1e-12;

inline AmplitudeTrajectory solve_amplitude(const Modulation& mod, double R,
                                           const TimeGrid& grid,
                                           const NumericParams& numeric = {}) {
    if (!(R > 0.0)) throw std::domain_error("solve_amplitude: R must be > 0");
    const double lambda = 1.0 / R;

    using State = ode::State<2>;  // (C, y)
    const auto rhs = [&mod, lambda](double t, const State& s) {
        const double phi = mod.phase(t);
        const std::complex<double> eip = std::polar(1.0, phi);
        State d;
        d[0] = -0.5 * lambda * eip * s[1];
        d[1] = -lambda * s[1] + std::conj(eip) * s[0];
        return d;
    };

    const State y0{std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)};
    const auto states = ode::integrate_dense<2>(rhs, 0.0, y0, grid.times(),
                                                numeric.rel_tol, numeric.abs_tol);

    AmplitudeTrajectory out;
    out.times = grid.times();
    out.c.resize(grid.size());
    out.c_dot.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.c[i] = states[i][0];
        out.c_dot[i] = rhs(grid[i], states[i])[0];
    }
    return out;
}

// Direct history-quadrature integration of the Volterra equation on a uniform
// grid: trapezoidal memory sum plus a trapezoidal (implicit in the newest
// point) time step. O(n^2) cost; used only as a cross-check of the O(n)
// exponential-kernel reduction above, so it deliberately shares no code with
// it.
inline AmplitudeTrajectory volterra_oracle(const Modulation& mod, double R,
                                           const TimeGrid& grid) {
    if (!(R > 0.0)) throw std::domain_error("volterra_oracle: R must be > 0");
    if (grid.size() > 20000)
        throw std::invalid_argument(
            "volterra_oracle: grid too fine (> 2e4 points, quadratic cost)");
    const double lambda = 1.0 / R;
    const double h = grid.dt();
    const std::size_t n = grid.size();

    const auto kernel = [&](double t, double tp) {
        return 0.5 * lambda * std::exp(-lambda * (t - tp)) *
               std::polar(1.0, mod.phase(t) - mod.phase(tp));
    };

    AmplitudeTrajectory out;
    out.times = grid.times();
    out.c.assign(n, {0.0, 0.0});
    out.c_dot.assign(n, {0.0, 0.0});
    out.c[0] = 1.0;
    out.c_dot[0] = 0.0;  // empty history integral

    // Trapezoidal history sum for Cdot(t_m) over the known samples j <= m_known.
    const auto history = [&](std::size_t m, std::size_t j_max) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j <= j_max; ++j) {
            const double w = (j == 0 || j == m) ? 0.5 * h : h;
            acc += w * kernel(grid[m], grid[j]) * out.c[j];
        }
        return -acc;
    };

    for (std::size_t m = 1; m < n; ++m) {
        // Partial derivative at t_m excluding the unknown endpoint sample.
        const std::complex<double> d_partial = history(m, m - 1);
        // Endpoint contribution is -(h/2) K(t_m, t_m) C_m with K(t,t) = lambda/2.
        const std::complex<double> endpoint_coeff = 0.25 * h * lambda;
        // Trapezoidal step: C_m = C_{m-1} + (h/2)(Cdot_{m-1} + Cdot_m).
        const std::complex<double> rhs =
            out.c[m - 1] + 0.5 * h * (out.c_dot[m - 1] + d_partial);
        out.c[m] = rhs / (1.0 + 0.5 * h * endpoint_coeff);
        out.c_dot[m] = d_partial - endpoint_coeff * out.c[m];
    }
    return out;
}

// Thermal rates and decay functionals from the amplitude. Gamma comes from
// ln|C| directly, never from integrating f, so isolated zeros of C only mask
// the f-type rates.
inline DissipativeRates thermal_decay(const AmplitudeTrajectory& traj,
                                      double n_bar) {
    if (n_bar < 0.0) throw std::domain_error("thermal_decay: n_bar must be >= 0");
    const std::size_t n = traj.c.size();
    DissipativeRates r;
    r.times = traj.times;
    r.f.assign(n, 0.0);
    r.gamma1.assign(n, 0.0);
    r.gamma2.assign(n, 0.0);
    r.big_gamma.assign(n, 0.0);
    r.g_integral.assign(n, 0.0);
    r.singular_mask.assign(n, false);

    const double c0 = std::abs(traj.c[0]);
    const double thermal = 2.0 * n_bar + 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ac = std::abs(traj.c[i]);
        r.big_gamma[i] = -thermal * std::log(ac / c0);
        if (ac < kSingularGuard) {
            r.singular_mask[i] = true;
            r.f[i] = r.gamma1[i] = r.gamma2[i] =
                std::numeric_limits<double>::quiet_NaN();
        } else {
            r.f[i] = -2.0 * std::real(traj.c_dot[i] / traj.c[i]);
            r.gamma1[i] = (n_bar + 1.0) * r.f[i];
            r.gamma2[i] = n_bar * r.f[i];
        }
    }
    r.big_gamma[0] = 0.0;

    // G(t) such that P_g(t) = e^{-2 Gamma(t)} (P_g(0) + G(t)); cumulative
    // trapezoid of e^{2 Gamma} gamma1. NaN/inf spreads past masked samples,
    // which is honest: G is unrecoverable beyond a true zero of C.
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = r.times[i] - r.times[i - 1];
        const double a = std::exp(2.0 * r.big_gamma[i - 1]) * r.gamma1[i - 1];
        const double b = std::exp(2.0 * r.big_gamma[i]) * r.gamma1[i];
        r.g_integral[i] = r.g_integral[i - 1] + 0.5 * dt * (a + b);
    }
    return r;
}

// Coherence magnitude and ground population under the dissipative channel
// alone.
inline void dissipative_observables(const AmplitudeTrajectory& traj,
                                    double n_bar, const InitialState& initial,
                                    std::vector<double>& coherence_abs,
                                    std::vector<double>& pg) {
    const std::size_t n = traj.c.size();
    coherence_abs.resize(n);
    pg.resize(n);
    const double c0 = std::abs(traj.c[0]);
    const double thermal = 2.0 * n_bar + 1.0;
    const double pg_inf = (n_bar + 1.0) / thermal;
    const double z0 = std::abs(initial.zeta0);
    for (std::size_t i = 0; i < n; ++i) {
        const double q = std::pow(std::abs(traj.c[i]) / c0, thermal);
        coherence_abs[i] = z0 * q;
        pg[i] = initial.pg0 * q * q + pg_inf * (1.0 - q * q);
    }
}

// Closed-form amplitude for the undriven (delta = 0) Lorentzian bath in
// gamma = 1 units: C(t) = e^{-lambda t/2} [cosh(d t/2) + (lambda/d) sinh(d t/2)],
// d = sqrt(lambda^2 - 2 lambda).
inline std::complex<double> undriven_amplitude_closed_form(double lambda,
                                                           double t) {
    const std::complex<double> d =
        std::sqrt(std::complex<double>(lambda * lambda - 2.0 * lambda, 0.0));
    const std::complex<double> x = 0.5 * d * t;
    std::complex<double> body;
    if (std::abs(x) < 1e-6) {
        // cosh(x) + (lambda t/2) sinh(x)/x, series-safe at d -> 0
        const std::complex<double> x2 = x * x;
        body = (1.0 + x2 / 2.0) + 0.5 * lambda * t * (1.0 + x2 / 6.0);
    } else {
        body = std::cosh(x) + (lambda / d) * std::sinh(x);
    }
    return std::exp(-0.5 * lambda * t) * body;
}

}  // namespace fmq
