#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fmq::ode {

// Dormand-Prince 5(4) embedded pair with the standard quartic dense-output
// interpolant. State is a fixed-size array of complex components.
template <std::size_t N>
using State = std::array<std::complex<double>, N>;

template <std::size_t N>
inline State<N> axpy(State<N> y, double a, const State<N>& x) {
    for (std::size_t i = 0; i < N; ++i) y[i] += a * x[i];
    return y;
}

struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <std::size_t N, class RHS>
class DormandPrince54 {
  public:
    DormandPrince54(RHS rhs, double rel_tol, double abs_tol)
        : rhs_(std::move(rhs)), rtol_(rel_tol), atol_(abs_tol) {}

    // Integrates from t = t0 over [t0, t_end], sampling the dense-output
    // interpolant at every requested time. `out_times` must be nondecreasing
    // and start at or after t0. Returns states at the requested times.
    std::vector<State<N>> integrate(double t0, const State<N>& y0,
                                    const std::vector<double>& out_times) {
        std::vector<State<N>> out;
        out.reserve(out_times.size());
        if (out_times.empty()) return out;
        const double t_end = out_times.back();

        double t = t0;
        State<N> y = y0;
        State<N> k1 = rhs_(t, y);
        double h = initial_step(t, y, k1, t_end - t0);
        std::size_t next_out = 0;
        while (next_out < out_times.size() && out_times[next_out] <= t) {
            out.push_back(y);
            ++next_out;
        }

        int rejected_in_a_row = 0;
        while (t < t_end) {
            h = std::min(h, t_end - t);
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw StepError("DormandPrince54: step size underflow");

            State<N> k2, k3, k4, k5, k6, k7, y_new;
            const double err = step(t, y, k1, h, y_new, k2, k3, k4, k5, k6, k7);

            if (err <= 1.0) {
                // Dense output over [t, t+h].
                prepare_dense(y, y_new, k1, k3, k4, k5, k6, k7, h);
                const double t_new = t + h;
                while (next_out < out_times.size() &&
                       out_times[next_out] <= t_new + 1e-14 * std::max(1.0, t_new)) {
                    const double theta =
                        std::clamp((out_times[next_out] - t) / h, 0.0, 1.0);
                    out.push_back(dense_eval(theta));
                    ++next_out;
                }
                t = t_new;
                y = y_new;
                k1 = k7;  // FSAL
                rejected_in_a_row = 0;
                h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (++rejected_in_a_row > 200)
                    throw StepError("DormandPrince54: tolerance not achieved");
            }
        }
        while (next_out < out_times.size()) {  // trailing duplicates of t_end
            out.push_back(y);
            ++next_out;
        }
        return out;
    }

  private:
    RHS rhs_;
    double rtol_, atol_;
    State<N> rcont1_, rcont2_, rcont3_, rcont4_, rcont5_;

    double initial_step(double t, const State<N>& y, const State<N>& k1,
                        double span) const {
        double dy = 0.0, df = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            dy = std::max(dy, std::abs(y[i]));
            df = std::max(df, std::abs(k1[i]));
        }
        double h = (df > 1e-12) ? 0.01 * std::max(dy, 1.0) / df : 1e-4 * span;
        return std::min(h, 0.1 * span);
    }

    // One trial step; returns the scaled error norm (accept if <= 1).
    double step(double t, const State<N>& y, const State<N>& k1, double h,
                State<N>& y_new, State<N>& k2, State<N>& k3, State<N>& k4,
                State<N>& k5, State<N>& k6, State<N>& k7) {
        State<N> tmp = axpy(y, h * (1.0 / 5.0), k1);
        k2 = rhs_(t + h / 5.0, tmp);

        tmp = axpy(axpy(y, h * (3.0 / 40.0), k1), h * (9.0 / 40.0), k2);
        k3 = rhs_(t + 3.0 * h / 10.0, tmp);

        tmp = axpy(axpy(axpy(y, h * (44.0 / 45.0), k1), h * (-56.0 / 15.0), k2),
                   h * (32.0 / 9.0), k3);
        k4 = rhs_(t + 4.0 * h / 5.0, tmp);

        tmp = axpy(axpy(axpy(axpy(y, h * (19372.0 / 6561.0), k1),
                             h * (-25360.0 / 2187.0), k2),
                        h * (64448.0 / 6561.0), k3),
                   h * (-212.0 / 729.0), k4);
        k5 = rhs_(t + 8.0 * h / 9.0, tmp);

        tmp = axpy(axpy(axpy(axpy(axpy(y, h * (9017.0 / 3168.0), k1),
                                  h * (-355.0 / 33.0), k2),
                             h * (46732.0 / 5247.0), k3),
                        h * (49.0 / 176.0), k4),
                   h * (-5103.0 / 18656.0), k5);
        k6 = rhs_(t + h, tmp);

        y_new = axpy(axpy(axpy(axpy(axpy(y, h * (35.0 / 384.0), k1),
                                    h * (500.0 / 1113.0), k3),
                               h * (125.0 / 192.0), k4),
                          h * (-2187.0 / 6784.0), k5),
                     h * (11.0 / 84.0), k6);
        k7 = rhs_(t + h, y_new);

        // Embedded 4th-order error estimate.
        double err2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> e =
                h * ((71.0 / 57600.0) * k1[i] + (-71.0 / 16695.0) * k3[i] +
                     (71.0 / 1920.0) * k4[i] + (-17253.0 / 339200.0) * k5[i] +
                     (22.0 / 525.0) * k6[i] + (-1.0 / 40.0) * k7[i]);
            const double scale =
                atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double r = std::abs(e) / scale;
            err2 += r * r;
        }
        return std::sqrt(err2 / N);
    }

    void prepare_dense(const State<N>& y, const State<N>& y_new,
                       const State<N>& k1, const State<N>& k3,
                       const State<N>& k4, const State<N>& k5,
                       const State<N>& k6, const State<N>& k7, double h) {
        static constexpr double d1 = -12715105075.0 / 11282082432.0;
        static constexpr double d3 = 87487479700.0 / 32700410799.0;
        static constexpr double d4 = -10690763975.0 / 1880347072.0;
        static constexpr double d5 = 701980252875.0 / 199316789632.0;
        static constexpr double d6 = -1453857185.0 / 822651844.0;
        static constexpr double d7 = 69997945.0 / 29380423.0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> ydiff = y_new[i] - y[i];
            const std::complex<double> bspl = h * k1[i] - ydiff;
            rcont1_[i] = y[i];
            rcont2_[i] = ydiff;
            rcont3_[i] = bspl;
            rcont4_[i] = ydiff - h * k7[i] - bspl;
            rcont5_[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                              d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
    }

    State<N> dense_eval(double theta) const {
        const double th1 = 1.0 - theta;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = rcont1_[i] +
                   theta * (rcont2_[i] +
                            th1 * (rcont3_[i] +
                                   theta * (rcont4_[i] + th1 * rcont5_[i])));
        }
        return y;
    }
};

template <std::size_t N, class RHS>
std::vector<State<N>> integrate_dense(RHS rhs, double t0, const State<N>& y0,
                                      const std::vector<double>& out_times,
                                      double rel_tol, double abs_tol) {
    DormandPrince54<N, RHS> solver(std::move(rhs), rel_tol, abs_tol);
    return solver.integrate(t0, y0, out_times);
}

}  // namespace fmq::ode
