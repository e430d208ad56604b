#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fmq/analysis.hpp"
#include "fmq/presets.hpp"

using namespace fmq;

namespace {

std::vector<double> linspace(double t_max, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
    return t;
}

std::vector<double> sample(const std::vector<double>& t,
                           double (*f)(double)) {
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = f(t[i]);
    return v;
}

}  // namespace

TEST_CASE("envelope of a monotone decay is the series itself") {
    const auto t = linspace(5.0, 201);
    const auto s = sample(t, +[](double x) { return std::exp(-x); });
    const auto env = envelope(t, s);
    REQUIRE(env.peak_times.size() == 1);  // only the t = 0 anchor
    CHECK(env.peak_times[0] == 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(env.sampled[i] == s[i]);
}

TEST_CASE("envelope of a damped oscillation tracks the decay") {
    const auto t = linspace(3.0, 3001);
    const auto s =
        sample(t, +[](double x) { return std::exp(-x) * std::abs(std::cos(10.0 * x)); });
    const auto env = envelope(t, s);
    // Peaks of e^{-t}|cos(10t)| sit at (k pi - atan(1/10)) / 10: the decay
    // pulls each maximum slightly ahead of the cosine peak.
    REQUIRE(env.peak_times.size() >= 9);
    for (std::size_t k = 1; k < std::min<std::size_t>(env.peak_times.size(), 9); ++k)
        CHECK(env.peak_times[k] ==
              Catch::Approx((k * M_PI - std::atan(0.1)) / 10.0)
                  .margin(2.0 * (t[1] - t[0])));
    // Between peaks the envelope stays close to e^{-t}.
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > env.peak_times.back()) break;
        CHECK(env.sampled[i] == Catch::Approx(std::exp(-t[i])).margin(0.06));
        CHECK(env.sampled[i] <= 1.0);
    }
}

TEST_CASE("envelope dominates the series at peaks and needs >= 3 samples") {
    const auto t = linspace(3.0, 1501);
    const auto s =
        sample(t, +[](double x) { return std::exp(-x) * std::abs(std::cos(7.0 * x)); });
    const auto env = envelope(t, s);
    for (std::size_t k = 0; k < env.peak_times.size(); ++k) {
        const std::size_t i = static_cast<std::size_t>(
            std::round(env.peak_times[k] / (t[1] - t[0])));
        CHECK(env.sampled[i] >= s[i] - 1e-14);
    }
    CHECK_THROWS_AS(envelope({0.0, 1.0}, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("flat series yields a flat envelope and no coherence time") {
    const auto t = linspace(5.0, 101);
    const std::vector<double> s(t.size(), 0.5);
    const auto env = envelope(t, s);
    for (double v : env.sampled) CHECK(v == 0.5);
    CHECK_FALSE(coherence_time(t, s, 0.5).has_value());
}

TEST_CASE("coherence time of a pure exponential is 1/gamma") {
    const auto t = linspace(5.0, 5001);
    const auto s = sample(t, +[](double x) { return 0.5 * std::exp(-x); });
    const auto tc = coherence_time(t, s, 0.5);
    REQUIRE(tc.has_value());
    CHECK(*tc == Catch::Approx(1.0).margin(t[1] - t[0]));
}

TEST_CASE("coherence time survives zeros of the raw series") {
    const auto t = linspace(3.0, 6001);
    const auto s =
        sample(t, +[](double x) { return std::exp(-x) * std::abs(std::cos(10.0 * x)); });
    const auto tc = coherence_time(t, s, 1.0);
    REQUIRE(tc.has_value());
    // The envelope restores the ~e^{-t} decay, so t_c stays near 1 even
    // though the raw series crosses zero much earlier.
    CHECK(*tc == Catch::Approx(1.0).margin(0.17));
}

TEST_CASE("alpha_threshold finds a threshold on the lowT preset") {
    const SimulationConfig cfg = preset("lowT").config;
    const ThresholdResult res = alpha_threshold(cfg, 1e-3, 2.0);
    CHECK(res.alpha_th > 1e-3);
    CHECK(res.alpha_th < 2.0);
    CHECK(res.trace.size() >= 3);
    // At convergence the two coherence times match within the tolerance.
    CHECK(std::abs(res.t_c_driven - res.t_c_undriven) <=
          0.01 * res.t_c_undriven + 1e-12);
    // Grid-convergence: halving the spacing moves alpha_th by < 2x the
    // alpha tolerance.
    SimulationConfig fine = cfg;
    fine.n_samples = 2 * (cfg.n_samples - 1) + 1;
    const ThresholdResult res2 = alpha_threshold(fine, 1e-3, 2.0);
    CHECK(std::abs(res2.alpha_th - res.alpha_th) < 2e-3);
}

TEST_CASE("alpha_threshold rejects degenerate input") {
    const SimulationConfig cfg = preset("lowT").config;
    CHECK_THROWS_AS(alpha_threshold(cfg, 0.5, 0.5), BracketError);
    SimulationConfig undriven = cfg;
    undriven.modulation = {};
    CHECK_THROWS_AS(alpha_threshold(undriven, 1e-3, 2.0), BracketError);
}

TEST_CASE("alpha_threshold reports an unusable grid") {
    SimulationConfig cfg = preset("lowT").config;
    cfg.t_max = 0.5;  // far too short for the undriven t_c at tiny alpha
    cfg.n_samples = 161;
    CHECK_THROWS_AS(alpha_threshold(cfg, 1e-3, 2.0), GridExtensionError);
}
