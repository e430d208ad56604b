#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmq::quad {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
struct GK15 {
    static constexpr double xk[8] = {
        0.000000000000000, 0.207784955007898, 0.405845151377397,
        0.586087235467691, 0.741531185599394, 0.864864423359769,
        0.949107912342759, 0.991455371120813};
    static constexpr double wk[8] = {
        0.209482141084728, 0.204432940075298, 0.190350578064785,
        0.169004726639267, 0.140653259715525, 0.104790010322250,
        0.063092092629979, 0.022935322010529};
    static constexpr double wg[4] = {
        0.417959183673469, 0.381830050505119, 0.279705391489277,
        0.129484966168870};
};

template <class F>
inline double gk15(const F& f, double a, double b, double& err_est) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const double f0 = f(c);
    double k = GK15::wk[0] * f0;
    double g = GK15::wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double fi = f(c + hw * GK15::xk[i]) + f(c - hw * GK15::xk[i]);
        k += GK15::wk[i] * fi;
        if (i % 2 == 0) g += GK15::wg[i / 2] * fi;
    }
    k *= hw;
    g *= hw;
    const double d = std::abs(k - g);
    err_est = std::min(d, 200.0 * d * std::sqrt(200.0 * d));
    return k;
}

// Adaptive bisection on [a, b] with an initial uniform split into panels no
// wider than `max_panel`. Each panel is refined until its error estimate fits
// its width-proportional share of `tol` (absolute).
template <class F>
inline double adaptive(const F& f, double a, double b, double tol,
                       double max_panel, int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double span = b - a;
    const int n0 = std::max(1, static_cast<int>(std::ceil(span / max_panel)));

    struct Worst {
        double a = 0, b = 0, err = 0;
    } worst;

    // Recursive panel refinement; returns the panel integral.
    auto panel = [&](auto&& self, double pa, double pb, double ptol,
                     int depth) -> double {
        double err = 0.0;
        const double val = gk15(f, pa, pb, err);
        if (err <= ptol || pb - pa < 1e-300) return val;
        if (depth >= max_depth) {
            if (err > worst.err) worst = {pa, pb, err};
            return val;
        }
        const double mid = 0.5 * (pa + pb);
        return self(self, pa, mid, 0.5 * ptol, depth + 1) +
               self(self, mid, pb, 0.5 * ptol, depth + 1);
    };

    double total = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double pa = a + span * i / n0;
        const double pb = (i + 1 == n0) ? b : a + span * (i + 1) / n0;
        total += panel(panel, pa, pb, tol * (pb - pa) / span, 0);
    }
    if (worst.err > 0.0)
        throw QuadratureError(
            "adaptive quadrature: tolerance " + std::to_string(tol) +
            " not achieved; worst panel [" + std::to_string(worst.a) + ", " +
            std::to_string(worst.b) + "] err " + std::to_string(worst.err));
    return total;
}

}  // namespace fmq::quad
