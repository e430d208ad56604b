#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmq/config.hpp"
#include "fmq/simulate.hpp"

namespace fmq::io {

using nlohmann::json;

// 17 significant digits: enough to round-trip any double exactly, so two runs
// of the same config are byte-identical.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline json to_json(const SimulationConfig& c) {
    return json{
        {"modulation",
         {{"delta_over_omega_mod", c.modulation.delta_over_omega_mod},
          {"omega_mod_over_gamma", c.modulation.omega_mod_over_gamma}}},
        {"dissipative", {{"R", c.dissipative.R}, {"tau1", c.dissipative.tau1}}},
        {"dephasing",
         {{"alpha", c.dephasing.alpha},
          {"s", c.dephasing.s},
          {"theta2", c.dephasing.theta2},
          {"omega_c_over_gamma", c.dephasing.omega_c_over_gamma}}},
        {"initial",
         {{"zeta0", {{"re", c.initial.zeta0.real()}, {"im", c.initial.zeta0.imag()}}},
          {"pg0", c.initial.pg0}}},
        {"t_max", c.t_max},
        {"n_samples", c.n_samples},
        {"omega0_over_gamma", c.omega0_over_gamma},
        {"numeric",
         {{"rel_tol", c.numeric.rel_tol},
          {"abs_tol", c.numeric.abs_tol},
          {"quad_tol", c.numeric.quad_tol}}}};
}

struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
void read_field(const json& j, const std::string& path, const std::string& key,
                T& out) {
    if (!j.contains(key)) return;  // absent fields keep their defaults
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigParseError("config field " + path + key +
                               ": wrong type or malformed value");
    }
}

}  // namespace detail

// Parses a config document; absent fields keep their defaults, malformed
// fields are reported by path.
inline SimulationConfig config_from_json(const json& j) {
    SimulationConfig c;
    if (!j.is_object()) throw ConfigParseError("config root must be an object");
    if (j.contains("modulation")) {
        const auto& m = j.at("modulation");
        detail::read_field(m, "modulation.", "delta_over_omega_mod",
                           c.modulation.delta_over_omega_mod);
        detail::read_field(m, "modulation.", "omega_mod_over_gamma",
                           c.modulation.omega_mod_over_gamma);
    }
    if (j.contains("dissipative")) {
        const auto& d = j.at("dissipative");
        detail::read_field(d, "dissipative.", "R", c.dissipative.R);
        detail::read_field(d, "dissipative.", "tau1", c.dissipative.tau1);
    }
    if (j.contains("dephasing")) {
        const auto& d = j.at("dephasing");
        detail::read_field(d, "dephasing.", "alpha", c.dephasing.alpha);
        detail::read_field(d, "dephasing.", "s", c.dephasing.s);
        detail::read_field(d, "dephasing.", "theta2", c.dephasing.theta2);
        detail::read_field(d, "dephasing.", "omega_c_over_gamma",
                           c.dephasing.omega_c_over_gamma);
    }
    if (j.contains("initial")) {
        const auto& i = j.at("initial");
        if (i.contains("zeta0")) {
            double re = c.initial.zeta0.real(), im = c.initial.zeta0.imag();
            detail::read_field(i.at("zeta0"), "initial.zeta0.", "re", re);
            detail::read_field(i.at("zeta0"), "initial.zeta0.", "im", im);
            c.initial.zeta0 = {re, im};
        }
        detail::read_field(i, "initial.", "pg0", c.initial.pg0);
    }
    detail::read_field(j, "", "t_max", c.t_max);
    detail::read_field(j, "", "n_samples", c.n_samples);
    detail::read_field(j, "", "omega0_over_gamma", c.omega0_over_gamma);
    if (j.contains("numeric")) {
        const auto& n = j.at("numeric");
        detail::read_field(n, "numeric.", "rel_tol", c.numeric.rel_tol);
        detail::read_field(n, "numeric.", "abs_tol", c.numeric.abs_tol);
        detail::read_field(n, "numeric.", "quad_tol", c.numeric.quad_tol);
    }
    return c;
}

inline SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigParseError("config file " + path + ": " + e.what());
    }
    return config_from_json(j);
}

// FNV-1a 64-bit content digest for the run manifest.
inline std::string fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : data) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

inline constexpr const char* kCsvHeader =
    "t,coherence_abs,pg,pe,gamma1,gamma2,gamma3,Gamma,Gamma_tilde,singular";

// Renders one trajectory as CSV (header above, dimensionless gamma*t units).
inline std::string trajectory_csv(const SimulationResult& r) {
    std::string out(kCsvHeader);
    out += '\n';
    const std::size_t n = r.grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        out += fmt_double(r.grid[i]);
        out += ',';
        out += fmt_double(r.qubit.coherence_abs[i]);
        out += ',';
        out += fmt_double(r.qubit.pg[i]);
        out += ',';
        out += fmt_double(1.0 - r.qubit.pg[i]);
        out += ',';
        out += fmt_double(r.rates.gamma1[i]);
        out += ',';
        out += fmt_double(r.rates.gamma2[i]);
        out += ',';
        out += fmt_double(r.dephasing.gamma3[i]);
        out += ',';
        out += fmt_double(r.rates.big_gamma[i]);
        out += ',';
        out += fmt_double(r.dephasing.gamma_tilde[i]);
        out += ',';
        out += r.rates.singular_mask[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace fmq::io
