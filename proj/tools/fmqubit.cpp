// fmqubit: frequency-modulated qubit decoherence simulator CLI.
//
// Subcommands:
//   simulate   trajectory CSV(s) + JSON manifest for a config or preset
//   threshold  bisection for the dephasing-coupling threshold alpha_th
//   sweep      long-format CSV over one or two swept parameters
//   preset     preset utilities (preset list)
//
// Exit codes: 0 ok, 2 config/usage error, 3 solver failure, 4 bracket failure.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fmq/analysis.hpp"
#include "fmq/io.hpp"
#include "fmq/presets.hpp"
#include "fmq/simulate.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBracket = 4;

namespace fs = std::filesystem;
using fmq::io::json;

int worker_count() {
    if (const char* env = std::getenv("FMQUBIT_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

struct ManifestBuilder {
    json files = json::object();

    void add(const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        out << content;
        files[path.filename().string()] = {
            {"bytes", content.size()}, {"fnv1a64", fmq::io::fnv1a64(content)}};
    }

    void write(const fs::path& dir, const fmq::SimulationConfig& cfg,
               double wall_seconds) {
        json m{{"tool", "fmqubit"},
               {"version", kVersion},
               {"config", fmq::io::to_json(cfg)},
               {"grid",
                {{"t_max", cfg.t_max},
                 {"n_samples", cfg.n_samples},
                 {"spacing", cfg.t_max / (cfg.n_samples - 1)}}},
               {"wall_clock_seconds", wall_seconds},
               {"outputs", files}};
        std::ofstream out(dir / "manifest.json");
        out << m.dump(2) << "\n";
    }
};

fmq::SimulationConfig resolve_config(const std::string& config_path,
                                     const std::string& preset_name) {
    fmq::SimulationConfig cfg;
    if (!preset_name.empty()) cfg = fmq::preset(preset_name).config;
    if (!config_path.empty()) cfg = fmq::io::load_config(config_path);
    return cfg;
}

fmq::ValidatedConfig validate_or_exit(const fmq::SimulationConfig& cfg) {
    const fmq::ValidationReport rep = fmq::validate(cfg);
    if (!rep.ok()) {
        std::cerr << "config validation failed:\n";
        for (const auto& issue : rep.issues)
            std::cerr << "  " << issue.field << ": " << issue.message << "\n";
        std::exit(kExitConfig);
    }
    return *rep.validated;
}

fmq::SimulationConfig undriven_variant(fmq::SimulationConfig cfg) {
    cfg.modulation = {};
    return cfg;
}

int cmd_simulate(const std::string& config_path, const std::string& preset_name,
                 const std::string& output_dir, bool print_config) {
    fmq::SimulationConfig cfg;
    try {
        cfg = resolve_config(config_path, preset_name);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
    if (print_config) {
        std::cout << fmq::io::to_json(cfg).dump(2) << "\n";
        return 0;
    }
    validate_or_exit(cfg);

    fs::create_directories(output_dir);
    const auto t0 = std::chrono::steady_clock::now();
    ManifestBuilder manifest;

    // (name, config) pairs to run: a paired preset yields driven + undriven,
    // a fig5-style preset yields its alpha family, anything else one run.
    std::vector<std::pair<std::string, fmq::SimulationConfig>> runs;
    if (!preset_name.empty()) {
        const fmq::Preset& p = fmq::preset(preset_name);
        if (p.paired) {
            runs.emplace_back(p.name + "_driven", cfg);
            runs.emplace_back(p.name + "_undriven", undriven_variant(cfg));
        } else if (!p.alpha_family.empty()) {
            for (double a : p.alpha_family) {
                fmq::SimulationConfig c = cfg;
                c.dephasing.alpha = a;
                runs.emplace_back(p.name + "_alpha" + fmq::io::fmt_double(a), c);
            }
        } else {
            runs.emplace_back(p.name, cfg);
        }
    } else {
        runs.emplace_back("trajectory", cfg);
    }

    try {
        for (const auto& [name, run_cfg] : runs) {
            const fmq::ValidatedConfig v = validate_or_exit(run_cfg);
            const fmq::SimulationResult res = fmq::run_simulation(v);
            manifest.add(fs::path(output_dir) / (name + ".csv"),
                         fmq::io::trajectory_csv(res));
        }
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    manifest.write(output_dir, cfg, wall);
    return 0;
}

int cmd_threshold(const std::string& config_path, const std::string& preset_name,
                  double alpha_lo, double alpha_hi,
                  const std::string& output_path, bool print_config) {
    fmq::SimulationConfig cfg;
    try {
        cfg = resolve_config(config_path, preset_name);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
    if (print_config) {
        std::cout << fmq::io::to_json(cfg).dump(2) << "\n";
        return 0;
    }
    validate_or_exit(cfg);

    fmq::ThresholdResult res;
    try {
        res = fmq::alpha_threshold(cfg, alpha_lo, alpha_hi);
    } catch (const fmq::BracketError& e) {
        std::cerr << "bracket failure: " << e.what() << "\n";
        return kExitBracket;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }

    json trace = json::array();
    for (const auto& it : res.trace)
        trace.push_back({{"alpha", it.alpha},
                         {"t_c_driven", it.t_c_driven},
                         {"t_c_undriven", it.t_c_undriven},
                         {"h", it.h}});
    const json out{{"alpha_th", res.alpha_th},
                   {"t_c_driven", res.t_c_driven},
                   {"t_c_undriven", res.t_c_undriven},
                   {"iterations", res.iterations},
                   {"omega_c_over_gamma", cfg.dephasing.omega_c_over_gamma},
                   {"note",
                    "alpha_th depends on the omega_c/gamma calibration above"},
                   {"trace", trace}};
    if (output_path.empty() || output_path == "-") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(output_path);
        f << out.dump(2) << "\n";
    }
    return 0;
}

// Known sweepable parameter paths.
bool set_param(fmq::SimulationConfig& cfg, const std::string& path, double v) {
    static const std::map<std::string,
                          std::function<void(fmq::SimulationConfig&, double)>>
        setters = {
            {"modulation.delta_over_omega_mod",
             [](auto& c, double x) { c.modulation.delta_over_omega_mod = x; }},
            {"modulation.omega_mod_over_gamma",
             [](auto& c, double x) { c.modulation.omega_mod_over_gamma = x; }},
            {"dissipative.R", [](auto& c, double x) { c.dissipative.R = x; }},
            {"dissipative.tau1",
             [](auto& c, double x) { c.dissipative.tau1 = x; }},
            {"dephasing.alpha",
             [](auto& c, double x) { c.dephasing.alpha = x; }},
            {"dephasing.s", [](auto& c, double x) { c.dephasing.s = x; }},
            {"dephasing.theta2",
             [](auto& c, double x) { c.dephasing.theta2 = x; }},
            {"dephasing.omega_c_over_gamma",
             [](auto& c, double x) { c.dephasing.omega_c_over_gamma = x; }},
            {"t_max", [](auto& c, double x) { c.t_max = x; }},
        };
    auto it = setters.find(path);
    if (it == setters.end()) return false;
    it->second(cfg, v);
    return true;
}

int cmd_sweep(const std::string& config_path, const std::string& preset_name,
              const std::vector<std::string>& params,
              const std::vector<std::vector<double>>& value_lists,
              const std::string& output_path, bool print_config) {
    fmq::SimulationConfig base;
    try {
        base = resolve_config(config_path, preset_name);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
    if (print_config) {
        std::cout << fmq::io::to_json(base).dump(2) << "\n";
        return 0;
    }
    if (params.empty() || params.size() > 2 ||
        params.size() != value_lists.size()) {
        std::cerr << "sweep: need one or two --param, each with --values\n";
        return kExitConfig;
    }
    for (const auto& p : params) {
        fmq::SimulationConfig probe = base;
        if (!set_param(probe, p, 0.5)) {
            std::cerr << "sweep: unknown parameter path: " << p << "\n";
            return kExitConfig;
        }
    }
    for (const auto& vals : value_lists)
        if (vals.empty()) {
            std::cerr << "sweep: empty value list\n";
            return kExitConfig;
        }

    // Cartesian sweep points in deterministic order.
    struct Point {
        std::vector<double> values;
        fmq::SimulationConfig cfg;
    };
    std::vector<Point> points;
    if (params.size() == 1) {
        for (double a : value_lists[0]) {
            Point pt{{a}, base};
            set_param(pt.cfg, params[0], a);
            points.push_back(std::move(pt));
        }
    } else {
        for (double a : value_lists[0])
            for (double b : value_lists[1]) {
                Point pt{{a, b}, base};
                set_param(pt.cfg, params[0], a);
                set_param(pt.cfg, params[1], b);
                points.push_back(std::move(pt));
            }
    }
    for (const auto& pt : points) validate_or_exit(pt.cfg);

    // Points run in parallel; rows are assembled in point order regardless of
    // completion order.
    std::vector<std::string> blocks(points.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    const auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < points.size();
             i = next.fetch_add(1)) {
            if (failed.load()) return;
            try {
                const fmq::ValidatedConfig v = fmq::validate_or_throw(points[i].cfg);
                const fmq::SimulationResult res = fmq::run_simulation(v);
                std::string prefix;
                for (double pv : points[i].values) {
                    prefix += fmq::io::fmt_double(pv);
                    prefix += ',';
                }
                std::string block;
                const std::string csv = fmq::io::trajectory_csv(res);
                std::size_t pos = csv.find('\n') + 1;  // drop header
                while (pos < csv.size()) {
                    const std::size_t eol = csv.find('\n', pos);
                    block += prefix;
                    block.append(csv, pos, eol - pos + 1);
                    pos = eol + 1;
                }
                blocks[i] = std::move(block);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed = true;
                error_message = e.what();
            }
        }
    };
    const int workers =
        std::min<int>(worker_count(), static_cast<int>(points.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed) {
        std::cerr << "solver failure: " << error_message << "\n";
        return kExitSolver;
    }

    std::string header;
    for (const auto& p : params) {
        header += p;
        header += ',';
    }
    header += fmq::io::kCsvHeader;
    header += '\n';

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!output_path.empty() && output_path != "-") {
        file.open(output_path, std::ios::binary);
        out = &file;
    }
    *out << header;
    for (const auto& b : blocks) *out << b;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reduced dynamics of a frequency-modulated qubit under "
                 "thermal dissipative and pure-dephasing reservoirs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, preset_name, output_dir = ".", output_path;
    bool print_config = false;

    auto* sim = app.add_subcommand("simulate", "run one scenario, write CSV + manifest");
    sim->add_option("--config", config_path, "JSON config file");
    sim->add_option("--preset", preset_name, "preset name (see `preset list`)");
    sim->add_option("--output", output_dir, "output directory");
    sim->add_flag("--print-config", print_config,
                  "print the resolved config JSON and exit");

    double alpha_lo = 1e-3, alpha_hi = 2.0;
    auto* thr = app.add_subcommand("threshold",
                                   "bisect for the dephasing threshold alpha_th");
    thr->add_option("--config", config_path, "JSON config file");
    thr->add_option("--preset", preset_name, "preset name");
    thr->add_option("--alpha-lo", alpha_lo, "bracket lower edge");
    thr->add_option("--alpha-hi", alpha_hi, "bracket upper edge");
    thr->add_option("--output", output_path, "JSON output file (default stdout)");
    thr->add_flag("--print-config", print_config,
                  "print the resolved config JSON and exit");

    std::vector<std::string> sweep_params;
    std::vector<std::string> sweep_values;
    auto* swp = app.add_subcommand("sweep", "long-format CSV over swept parameters");
    swp->add_option("--config", config_path, "JSON config file");
    swp->add_option("--preset", preset_name, "preset name");
    swp->add_option("--param", sweep_params,
                    "parameter path (repeat for a second axis)");
    swp->add_option("--values", sweep_values,
                    "comma-separated values, one option per --param");
    swp->add_option("--output", output_path, "CSV output file (default stdout)");
    swp->add_flag("--print-config", print_config,
                  "print the resolved config JSON and exit");

    auto* pre = app.add_subcommand("preset", "preset utilities");
    std::string preset_action = "list";
    pre->add_option("action", preset_action, "list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(config_path, preset_name, output_dir,
                                print_config);
        if (thr->parsed())
            return cmd_threshold(config_path, preset_name, alpha_lo, alpha_hi,
                                 output_path, print_config);
        if (swp->parsed()) {
            std::vector<std::vector<double>> value_lists;
            for (const auto& s : sweep_values) {
                std::vector<double> vals;
                std::stringstream ss(s);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    try {
                        vals.push_back(std::stod(tok));
                    } catch (const std::exception&) {
                        std::cerr << "sweep: malformed value: " << tok << "\n";
                        return kExitConfig;
                    }
                }
                value_lists.push_back(std::move(vals));
            }
            return cmd_sweep(config_path, preset_name, sweep_params,
                             value_lists, output_path, print_config);
        }
        if (pre->parsed()) {
            if (preset_action != "list") {
                std::cerr << "preset: unknown action: " << preset_action << "\n";
                return kExitConfig;
            }
            for (const auto& p : fmq::presets())
                std::cout << p.name << "  " << p.description << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
