#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fmq/config.hpp"
#include "fmq/dephasing.hpp"
#include "fmq/dissipative.hpp"

// Assembly of the full phase-covariant qubit trajectory: dissipative and
// dephasing decay factors multiply (rate additivity), populations see only
// the dissipative channel.
namespace fmq {

struct QubitTrajectory {
    std::vector<double> times;
    std::vector<double> coherence_abs;    // |zeta(t)|
    std::vector<double> coherence_phase;  // arg zeta(t), if requested
    std::vector<double> pg;               // ground population
    std::vector<bool> positivity_ok;
    bool has_phase = false;
};

inline constexpr double kPositivityMargin = -1e-10;

inline QubitTrajectory combine(const AmplitudeTrajectory& c_traj,
                               const DissipativeRates& rates,
                               const DephasingTrajectory& deph,
                               const InitialState& initial, double n_bar,
                               const Modulation& mod,
                               double omega0_over_gamma = 0.0,
                               bool with_phase = false) {
    const std::size_t n = c_traj.times.size();
    if (rates.times.size() != n || deph.times.size() != n ||
        c_traj.times != deph.times || c_traj.times != rates.times)
        throw std::invalid_argument("combine: trajectories must share one grid");

    QubitTrajectory out;
    out.times = c_traj.times;
    out.has_phase = with_phase;

    std::vector<double> zeta_dis;
    dissipative_observables(c_traj, n_bar, initial, zeta_dis, out.pg);

    out.coherence_abs.resize(n);
    out.positivity_ok.resize(n);
    if (with_phase) out.coherence_phase.resize(n);
    const double phase0 = std::arg(initial.zeta0);
    for (std::size_t i = 0; i < n; ++i) {
        out.coherence_abs[i] = zeta_dis[i] * std::exp(-deph.gamma_tilde[i]);
        const double margin = out.pg[i] * (1.0 - out.pg[i]) -
                              out.coherence_abs[i] * out.coherence_abs[i];
        out.positivity_ok[i] = margin >= kPositivityMargin &&
                               out.pg[i] >= kPositivityMargin &&
                               out.pg[i] <= 1.0 - kPositivityMargin;
        if (with_phase) {
            // omega_tilde(t) = (omega0 t + (delta/Omega) sin(Omega t)) / 2
            const double wt =
                0.5 * (omega0_over_gamma * out.times[i] + mod.phase(out.times[i]));
            out.coherence_phase[i] = phase0 + wt;
        }
    }
    return out;
}

struct PositivityReport {
    bool all_ok = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::size_t worst_index = 0;
    std::size_t violations = 0;
};

// Per-sample physicality audit: 0 <= P_g <= 1 and |zeta|^2 <= P_g (1 - P_g).
// Reports the worst margin; never throws.
inline PositivityReport positivity_audit(const QubitTrajectory& traj) {
    PositivityReport rep;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double pg = traj.pg[i];
        const double z2 = traj.coherence_abs[i] * traj.coherence_abs[i];
        const double margin =
            std::min({pg * (1.0 - pg) - z2, pg, 1.0 - pg});
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_index = i;
        }
        if (margin < kPositivityMargin) {
            rep.all_ok = false;
            ++rep.violations;
        }
    }
    return rep;
}

}  // namespace fmq
