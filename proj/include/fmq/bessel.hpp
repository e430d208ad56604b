#pragma once

#include <cmath>
#include <cstdlib>

namespace fmq {

// J0 by power series for |x| <= 12 and the Hankel asymptotic expansion beyond.
// Absolute error below 1e-10 everywhere on the real line.
inline double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 12.0) {
        const double q = -0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
        }
        return sum;
    }
    // J0(x) ~ sqrt(2/(pi x)) [P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)]
    // with P, Q the usual asymptotic series in 1/(8x), truncated at the
    // smallest term.
    const double z = 1.0 / (8.0 * x);
    double p = 0.0, q = 0.0;
    double num = 1.0;   // running product of odd squares
    double pw = 1.0;    // z^k
    double fact = 1.0;  // k!
    double prev = 1e300;
    for (int k = 0; k < 20; ++k) {
        const double term = num / fact * pw;
        if (std::abs(term) > prev) break;  // series started diverging
        prev = std::abs(term);
        const int r = k % 4;
        const double sgn = (r == 0 || r == 3) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sgn * term;
        else
            q += sgn * term;
        const double odd = 2.0 * k + 1.0;
        num *= odd * odd;
        pw *= z;
        fact *= k + 1.0;
    }
    const double chi = x - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// First positive zero of J0, located by bisection on the power series.
inline double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fmq
