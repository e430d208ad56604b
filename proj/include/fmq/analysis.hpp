#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmq/config.hpp"
#include "fmq/simulate.hpp"

// Envelope extraction, coherence time, and the dephasing-coupling threshold
// beyond which frequency modulation stops extending the coherence time.
namespace fmq {

struct Envelope {
    std::vector<double> peak_times;
    std::vector<double> peak_values;
    std::vector<double> sampled;  // envelope on the input grid
    std::string interpolant = "linear";
};

// Piecewise-linear envelope through the strict local maxima of the series,
// with t = 0 always counted as a peak. Past the last interior peak the
// envelope follows the series itself, so a monotone decay has envelope equal
// to the series.
inline Envelope envelope(const std::vector<double>& times,
                         const std::vector<double>& series) {
    if (times.size() != series.size() || times.size() < 3)
        throw std::invalid_argument("envelope: need >= 3 samples");
    Envelope env;
    env.peak_times.push_back(times[0]);
    env.peak_values.push_back(series[0]);
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (series[i] > series[i - 1] && series[i] > series[i + 1]) {
            env.peak_times.push_back(times[i]);
            env.peak_values.push_back(series[i]);
        }
    }

    env.sampled.resize(series.size());
    std::size_t seg = 0;  // current peak segment
    for (std::size_t i = 0; i < series.size(); ++i) {
        while (seg + 1 < env.peak_times.size() && times[i] > env.peak_times[seg + 1])
            ++seg;
        if (seg + 1 < env.peak_times.size()) {
            const double t0 = env.peak_times[seg], t1 = env.peak_times[seg + 1];
            const double w = (times[i] - t0) / (t1 - t0);
            env.sampled[i] =
                (1.0 - w) * env.peak_values[seg] + w * env.peak_values[seg + 1];
        } else {
            env.sampled[i] = series[i];  // tail beyond the last peak
        }
    }
    return env;
}

// First downward crossing of the envelope through |zeta(0)|/e, by linear
// inverse interpolation. Absent (nullopt) if the envelope never crosses
// within the grid.
inline std::optional<double> coherence_time(const std::vector<double>& times,
                                            const std::vector<double>& series,
                                            double zeta0_abs) {
    if (!(zeta0_abs > 0.0))
        throw std::invalid_argument("coherence_time: need |zeta(0)| > 0");
    const Envelope env = envelope(times, series);
    const double threshold = zeta0_abs / M_E;
    for (std::size_t i = 1; i < env.sampled.size(); ++i) {
        if (env.sampled[i - 1] >= threshold && env.sampled[i] < threshold) {
            const double a = env.sampled[i - 1], b = env.sampled[i];
            const double w = (a - threshold) / (a - b);
            return times[i - 1] + w * (times[i] - times[i - 1]);
        }
    }
    return std::nullopt;
}

struct ThresholdIterate {
    double alpha;
    double t_c_driven;    // +inf when the driven envelope never crosses
    double t_c_undriven;
    double h;             // t_c_driven - t_c_undriven
};

struct ThresholdResult {
    double alpha_th = 0.0;
    double t_c_driven = 0.0;
    double t_c_undriven = 0.0;
    std::vector<ThresholdIterate> trace;
    int iterations = 0;
};

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridExtensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThresholdOptions {
    double alpha_tol = 1e-3;      // bisection width target
    double match_tol_rel = 0.01;  // |t_c gap| below this fraction of the
                                  // undriven t_c counts as "equal"
};

namespace detail {

// Coherence times of the driven and undriven branches at one alpha. The
// amplitude trajectories are alpha-independent, so callers precompute them;
// the exponent is linear in alpha, so a unit-coupling trajectory suffices.
struct BranchEval {
    double t_c_driven;
    double t_c_undriven;
};

inline BranchEval eval_branches(const ValidatedConfig& v,
                                const AmplitudeTrajectory& amp_driven,
                                const AmplitudeTrajectory& amp_undriven,
                                const std::vector<double>& gamma_tilde_unit,
                                const TimeGrid& grid, double alpha) {
    const double z0 = std::abs(v.config.initial.zeta0);
    const double thermal = 2.0 * v.n_bar1 + 1.0;

    const auto branch_tc = [&](const AmplitudeTrajectory& amp) {
        std::vector<double> zeta(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            zeta[i] = z0 * std::pow(std::abs(amp.c[i]), thermal) *
                      std::exp(-alpha * gamma_tilde_unit[i]);
        return coherence_time(amp.times, zeta, z0);
    };

    const auto tc_d = branch_tc(amp_driven);
    const auto tc_u = branch_tc(amp_undriven);
    if (!tc_u)
        throw GridExtensionError(
            "alpha_threshold: undriven coherence time not reached at alpha = " +
            std::to_string(alpha) + "; increase t_max");
    // A driven envelope that never decays to 1/e within the grid means the
    // modulated qubit is protected beyond the horizon: the gap is effectively
    // infinite, which is all bisection needs.
    return BranchEval{
        tc_d ? *tc_d : std::numeric_limits<double>::infinity(), *tc_u};
}

}  // namespace detail

// Bisection for the dephasing coupling at which driven and undriven coherence
// times become equal (to within the matching tolerance). The driven branch
// uses the base config's modulation; the undriven branch sets it to (0, 0).
inline ThresholdResult alpha_threshold(const SimulationConfig& base_config,
                                       double alpha_lo, double alpha_hi,
                                       const ThresholdOptions& opt = {}) {
    if (!(alpha_hi > alpha_lo))
        throw BracketError("alpha_threshold: degenerate bracket [" +
                           std::to_string(alpha_lo) + ", " +
                           std::to_string(alpha_hi) + "]");
    if (!base_config.modulation.driven())
        throw BracketError(
            "alpha_threshold: base config is undriven; both branches would be "
            "identical (h == 0)");

    const ValidatedConfig v = validate_or_throw(base_config);
    const TimeGrid grid(base_config.t_max, base_config.n_samples);
    const AmplitudeTrajectory amp_driven = solve_amplitude(
        base_config.modulation, base_config.dissipative.R, grid,
        base_config.numeric);
    const AmplitudeTrajectory amp_undriven = solve_amplitude(
        Modulation{}, base_config.dissipative.R, grid, base_config.numeric);
    DephasingReservoir unit = base_config.dephasing;
    unit.alpha = 1.0;
    const std::vector<double> gamma_tilde_unit =
        dephasing_exponent(unit, grid, base_config.numeric.quad_tol)
            .gamma_tilde;

    ThresholdResult res;
    // Excess gap beyond the matching tolerance; the threshold is its root.
    const auto eval = [&](double alpha) {
        const auto b = detail::eval_branches(v, amp_driven, amp_undriven,
                                             gamma_tilde_unit, grid, alpha);
        const double h = b.t_c_driven - b.t_c_undriven;
        res.trace.push_back({alpha, b.t_c_driven, b.t_c_undriven, h});
        return std::make_pair(h - opt.match_tol_rel * b.t_c_undriven, b);
    };

    auto [excess_lo, b_lo] = eval(alpha_lo);
    auto [excess_hi, b_hi] = eval(alpha_hi);
    if ((excess_lo > 0.0) == (excess_hi > 0.0))
        throw BracketError(
            "alpha_threshold: no sign change in bracket; h(alpha_lo) = " +
            std::to_string(b_lo.t_c_driven - b_lo.t_c_undriven) +
            ", h(alpha_hi) = " +
            std::to_string(b_hi.t_c_driven - b_hi.t_c_undriven));

    double lo = alpha_lo, hi = alpha_hi;
    detail::BranchEval b_mid = b_hi;
    for (int it = 0; it < 60 && hi - lo > opt.alpha_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto [excess_mid, b] = eval(mid);
        b_mid = b;
        ++res.iterations;
        const double gap = b.t_c_driven - b.t_c_undriven;
        if (std::abs(gap) <= opt.match_tol_rel * b.t_c_undriven) {
            lo = hi = mid;  // matched within tolerance
            break;
        }
        if ((excess_mid > 0.0) == (excess_lo > 0.0)) {
            lo = mid;
            excess_lo = excess_mid;
        } else {
            hi = mid;
        }
    }
    res.alpha_th = 0.5 * (lo + hi);
    res.t_c_driven = b_mid.t_c_driven;
    res.t_c_undriven = b_mid.t_c_undriven;
    return res;
}

}  // namespace fmq
