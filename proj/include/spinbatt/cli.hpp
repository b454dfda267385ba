// cli.hpp — Command-line entry point: configuration parsing, run
// orchestration, and tabular/serialized output.

#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spinbatt/analytic.hpp"
#include "spinbatt/dynamics.hpp"
#include "spinbatt/io.hpp"
#include "spinbatt/model.hpp"
#include "spinbatt/scaling.hpp"

namespace spinbatt::cli {

using io::json;

// Full run configuration; every run is deterministic (no RNG anywhere).
struct RunConfig {
    ModelParams params;
    int m0 = 0;
    std::optional<int> n0;
    std::string rule = "n=N";
    std::optional<double> horizon;
    int samples = kDefaultSamples;
    std::optional<double> refine;
    std::string format = "csv";
    std::string out = "-";
    int jobs = 0;  // 0 = available parallelism
};

namespace detail {

inline int resolved_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

inline InitialState resolve_initial(const RunConfig& cfg) {
    InitialState s0;
    s0.m = cfg.m0;
    if (cfg.rule == "explicit") {
        if (!cfg.n0) throw std::domain_error("n0 is required with --rule explicit");
        s0.n = *cfg.n0;
    } else if (cfg.rule == "n=N") {
        s0.n = cfg.n0.value_or(cfg.params.N);
    } else if (cfg.rule == "n=NB") {
        s0.n = cfg.n0.value_or(cfg.params.N_B);
    } else {
        throw std::domain_error("rule must be one of n=N, n=NB, explicit");
    }
    return s0;
}

// "5", "5,10,15", "1:80" and "1:80:5" size lists.
inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const std::size_t c1 = item.find(':');
        if (c1 == std::string::npos) {
            values.push_back(std::stoi(item));
            continue;
        }
        const std::size_t c2 = item.find(':', c1 + 1);
        const int lo = std::stoi(item.substr(0, c1));
        const int hi = std::stoi(item.substr(c1 + 1, c2 == std::string::npos
                                                        ? std::string::npos
                                                        : c2 - c1 - 1));
        const int step = c2 == std::string::npos ? 1 : std::stoi(item.substr(c2 + 1));
        if (step <= 0) throw std::domain_error("list step must be positive: " + item);
        if (hi < lo) throw std::domain_error("empty list range: " + item);
        for (int v = lo; v <= hi; v += step) values.push_back(v);
    }
    if (values.empty()) throw std::domain_error("empty size list: " + text);
    return values;
}

inline std::pair<int, int> parse_range(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("range must be LO:HI, got " + text);
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (hi < lo) throw std::domain_error("range must satisfy LO <= HI, got " + text);
    return {lo, hi};
}

inline void write_to(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        if (!std::cout) throw io::IoError("failed writing to stdout");
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io::IoError("cannot open output file: " + path);
    fn(os);
    os.flush();
    if (!os) throw io::IoError("failed writing output file: " + path);
}

inline json params_json(const ModelParams& p) {
    return json{{"A", p.A},         {"B", p.B}, {"h", p.h},
                {"delta", p.delta}, {"NB", p.N_B}, {"N", p.N}};
}

// Expand "--config FILE" into the flags it stands for. The file holds flat
// key=value lines ('#' comments allowed); expansion happens in place of the
// --config token, so flags given later on the command line win.
inline std::vector<std::string> expand_config_args(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::vector<std::string> out;
    out.reserve(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::domain_error("--config requires a file path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
            continue;
        }
        std::ifstream is(path);
        if (!is) throw io::IoError("cannot open config file: " + path);
        std::string line;
        while (std::getline(is, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::domain_error("config file: expected key=value, got: " + line);
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw std::domain_error("config file: empty key in line: " + line);
            out.push_back("--" + key);
            out.push_back(value);
        }
    }
    return out;
}

}  // namespace detail

// ------------------------------- subcommands --------------------------------

// One charging run, written as plot-ready columns. When N_B = 1 an extra
// omega_half_t column gives the dimensionless axis Ω_n t / 2.
inline int cmd_evolve(const RunConfig& cfg) {
    validate(cfg.params);
    const InitialState s0 = detail::resolve_initial(cfg);
    validate(s0, cfg.params);

    const double horizon = cfg.horizon.value_or(default_horizon(cfg.params));
    const double refine = cfg.refine.value_or(default_refine(cfg.params));
    SpectralPropagator prop(cfg.params, s0);
    const TimeSeries series = run(prop, horizon, cfg.samples);
    const ChargingSummary summary = summarize(series, prop, refine);

    double omega_n = 0.0;
    if (cfg.params.N_B == 1 && s0.n >= 1)
        omega_n = analytic::SingleSpinRabi::from(cfg.params, s0.n).omega_n;

    json config = detail::params_json(cfg.params);
    config["command"] = "evolve";
    config["m0"] = s0.m;
    config["n0"] = s0.n;
    config["rule"] = cfg.rule;
    config["horizon"] = horizon;
    config["samples"] = cfg.samples;
    config["refine"] = refine;
    config["format"] = cfg.format;
    config["E_max"] = summary.E_max;
    config["t_at_Emax"] = summary.t_at_Emax;
    config["P_max"] = summary.P_max;
    config["t_at_Pmax"] = summary.t_at_Pmax;
    if (omega_n > 0.0) config["omega_n"] = omega_n;

    detail::write_to(cfg.out, [&](std::ostream& os) {
        if (cfg.format == "json")
            io::write_series_json(os, config, series, omega_n);
        else
            io::write_series_csv(os, config, series, omega_n);
    });
    return 0;
}

// Sweep over N_B and N lists; one summary row per cell.
inline int cmd_sweep(const RunConfig& cfg, const std::string& nb_list,
                     const std::string& n_list) {
    scaling::SweepSpec spec;
    spec.N_B_values = detail::parse_int_list(nb_list);
    spec.N_values = detail::parse_int_list(n_list);
    spec.rule = scaling::rule_from_name(cfg.rule);
    spec.m0 = cfg.m0;
    if (spec.rule == scaling::InitialRule::Explicit) {
        if (!cfg.n0) throw std::domain_error("n0 is required with --rule explicit");
        spec.n0 = *cfg.n0;
    }
    spec.options.horizon = cfg.horizon;
    spec.options.samples = cfg.samples;
    spec.options.refine = cfg.refine;
    spec.jobs = detail::resolved_jobs(cfg.jobs);

    const scaling::SweepResult result = sweep(cfg.params, spec);

    json config = detail::params_json(cfg.params);
    config.erase("NB");
    config.erase("N");
    config["command"] = "sweep";
    config["NB_list"] = spec.N_B_values;
    config["N_list"] = spec.N_values;
    config["rule"] = scaling::rule_name(spec.rule);
    config["m0"] = spec.m0;
    if (spec.rule == scaling::InitialRule::Explicit) config["n0"] = spec.n0;
    if (cfg.horizon) config["horizon"] = *cfg.horizon;
    config["samples"] = cfg.samples;
    if (cfg.refine) config["refine"] = *cfg.refine;
    config["format"] = cfg.format;

    detail::write_to(cfg.out, [&](std::ostream& os) {
        if (cfg.format == "json")
            io::write_sweep_json(os, config, result);
        else
            io::write_sweep_csv(os, config, result);
    });
    return 0;
}

// Power-law fit of a sweep table over an N_B window.
inline int cmd_fit(const std::string& table_path, const std::string& range,
                   std::optional<int> n_filter, const std::string& out) {
    std::ifstream is(table_path, std::ios::binary);
    if (!is) throw io::IoError("cannot open table file: " + table_path);
    const io::SweepTable table = io::read_sweep(is);
    if (table.rows.empty()) throw std::domain_error("table has no rows");

    std::set<int> n_values;
    for (const auto& row : table.rows) n_values.insert(row.N);
    int N = 0;
    if (n_filter) {
        N = *n_filter;
        if (!n_values.count(N))
            throw std::domain_error("table has no rows with N=" + std::to_string(N));
    } else if (n_values.size() == 1) {
        N = *n_values.begin();
    } else {
        throw std::domain_error("table spans several N values; pass --N to choose one");
    }

    const auto [lo, hi] = detail::parse_range(range);
    const scaling::ScalingFit fit =
        scaling::fit_power_law(scaling::rows_with_N(table.rows, N), lo, hi);

    std::cout << "power-law fit  P_max = beta * N_B^alpha\n"
              << "  N          " << fit.N << "\n"
              << "  N_B range  [" << lo << ", " << hi << "]\n"
              << "  rows used  " << fit.rows_used << "\n"
              << "  alpha      " << io::fmt17(fit.alpha) << "\n"
              << "  beta       " << io::fmt17(fit.beta) << "\n"
              << "  residual   " << io::fmt17(fit.residual) << "\n";

    json doc = io::fit_json(fit);
    doc["table"] = table_path;
    if (!out.empty() && out != "-") {
        detail::write_to(out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else {
        std::cout << doc.dump() << '\n';
    }
    return 0;
}

// Closed-form reports: charging constants and the three analytic regimes.
inline int cmd_analytic(const RunConfig& cfg, const std::string& oracle) {
    const auto [x_star, c_star] = analytic::sinc_sq_max();
    json doc;
    doc["command"] = "analytic";
    doc["oracle"] = oracle;
    std::ostringstream report;

    if (oracle == "constants") {
        report << "maximizer of sin^2(x)/x on (0, pi)\n"
               << "  x* = " << io::fmt17(x_star) << "\n"
               << "  c* = " << io::fmt17(c_star) << "\n";
        doc["x_star"] = x_star;
        doc["c_star"] = c_star;
    } else if (oracle == "single-spin") {
        validate(cfg.params);
        if (!cfg.n0) throw std::domain_error("n0 is required for the single-spin oracle");
        const int n = *cfg.n0;
        const auto rabi = analytic::SingleSpinRabi::from(cfg.params, n);
        const ChargingSummary s = analytic::single_spin_summary(cfg.params, n);
        report << "single central spin, n = " << n << "\n"
               << "  detuning   " << io::fmt17(rabi.delta_n) << "\n"
               << "  Omega_n    " << io::fmt17(rabi.omega_n) << "\n"
               << "  b_{N,n}    " << io::fmt17(rabi.b) << "\n"
               << "  E_max      " << io::fmt17(s.E_max) << " at t = "
               << io::fmt17(s.t_at_Emax) << "\n"
               << "  P_max      " << io::fmt17(s.P_max) << " at t = "
               << io::fmt17(s.t_at_Pmax) << "\n";
        doc["config"] = detail::params_json(cfg.params);
        doc["n0"] = n;
        doc["delta_n"] = rabi.delta_n;
        doc["omega_n"] = rabi.omega_n;
        doc["E_max"] = s.E_max;
        doc["t_at_Emax"] = s.t_at_Emax;
        doc["P_max"] = s.P_max;
        doc["t_at_Pmax"] = s.t_at_Pmax;
    } else if (oracle == "tc") {
        validate(cfg.params);
        InitialState s0 = detail::resolve_initial(cfg);
        validate(s0, cfg.params);
        const auto peak = analytic::tc_pmax(cfg.params, s0);
        const double beta_full =
            c_star * cfg.params.B * std::abs(cfg.params.A) * std::sqrt(cfg.params.N);
        const double coeff2 = std::round(c_star * 100.0) / 100.0;
        const double beta_coeff2 =
            coeff2 * cfg.params.B * std::abs(cfg.params.A) * std::sqrt(cfg.params.N);
        report << "bosonized (Tavis-Cummings) limit, n - m = " << (s0.n - s0.m) << "\n"
               << "  P_max          " << io::fmt17(peak.P_max) << " at t = "
               << io::fmt17(peak.t_star) << "\n"
               << "  E peak         " << io::fmt17(cfg.params.B * (s0.n - s0.m))
               << " at t = "
               << io::fmt17(std::acos(-1.0) /
                            (2.0 * std::abs(cfg.params.A) *
                             std::sqrt(static_cast<double>(cfg.params.N_B) * cfg.params.N)))
               << "\n"
               << "  beta (exp 1.5) " << io::fmt17(beta_full)
               << "   [" << coeff2 << "-coefficient form: " << io::fmt17(beta_coeff2)
               << "]\n";
        doc["config"] = detail::params_json(cfg.params);
        doc["m0"] = s0.m;
        doc["n0"] = s0.n;
        doc["P_max"] = peak.P_max;
        doc["t_star"] = peak.t_star;
        doc["beta"] = beta_full;
        doc["beta_two_digit_coeff"] = beta_coeff2;
        doc["alpha"] = 1.5;
    } else if (oracle == "single-bath") {
        validate(cfg.params);
        const auto peak = analytic::single_bath_summary(cfg.params, cfg.m0);
        report << "single bath spin (N = 1), m = " << cfg.m0 << "\n"
               << "  P_max  " << io::fmt17(peak.P_max) << " at t = "
               << io::fmt17(peak.t_star) << "\n";
        doc["config"] = detail::params_json(cfg.params);
        doc["m0"] = cfg.m0;
        doc["P_max"] = peak.P_max;
        doc["t_star"] = peak.t_star;
    } else {
        throw std::domain_error(
            "oracle must be one of constants, single-spin, tc, single-bath");
    }

    std::cout << report.str();
    if (!cfg.out.empty() && cfg.out != "-")
        detail::write_to(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    return 0;
}

// Numeric-vs-analytic deviation report.
inline int cmd_compare(const RunConfig& cfg, std::string oracle) {
    validate(cfg.params);
    InitialState s0 = detail::resolve_initial(cfg);
    validate(s0, cfg.params);
    if (oracle == "auto")
        oracle = (cfg.params.N_B == 1 && s0.n >= 1 && s0.m == 0) ? "single-spin" : "tc";

    json doc;
    doc["command"] = "compare";
    doc["oracle"] = oracle;
    doc["config"] = detail::params_json(cfg.params);
    doc["m0"] = s0.m;
    doc["n0"] = s0.n;

    if (oracle == "single-spin") {
        if (cfg.params.N_B != 1 || s0.m != 0 || s0.n < 1)
            throw std::domain_error(
                "single-spin comparison requires N_B=1, m0=0 and n0 >= 1");
        const double horizon = cfg.horizon.value_or(default_horizon(cfg.params));
        const double refine = cfg.refine.value_or(default_refine(cfg.params));
        SpectralPropagator prop(cfg.params, s0);
        const TimeSeries series = run(prop, horizon, cfg.samples);
        const ChargingSummary numeric = summarize(series, prop, refine);
        const Energies base = analytic::single_spin_energies(cfg.params, s0.n, 0.0);

        double dev_e = 0.0, dev_c = 0.0, dev_i = 0.0;
        double scale_e = 0.0, scale_c = 0.0, scale_i = 0.0;
        for (std::size_t k = 0; k < series.times.size(); ++k) {
            const Energies ref =
                analytic::single_spin_energies(cfg.params, s0.n, series.times[k]);
            dev_e = std::max(dev_e, std::abs(series.dE_B[k] - (ref.E_B - base.E_B)));
            dev_c = std::max(dev_c, std::abs(series.E_C[k] - ref.E_C));
            dev_i = std::max(dev_i, std::abs(series.E_I[k] - ref.E_I));
            scale_e = std::max(scale_e, std::abs(ref.E_B - base.E_B));
            scale_c = std::max(scale_c, std::abs(ref.E_C));
            scale_i = std::max(scale_i, std::abs(ref.E_I));
        }
        const ChargingSummary ref = analytic::single_spin_summary(cfg.params, s0.n);
        const double dev_emax = std::abs(numeric.E_max - ref.E_max);
        const double dev_pmax = std::abs(numeric.P_max - ref.P_max);
        const double max_abs = std::max({dev_e, dev_c, dev_i});
        const double max_rel = std::max({dev_e / std::max(1.0, scale_e),
                                         dev_c / std::max(1.0, scale_c),
                                         dev_i / std::max(1.0, scale_i)});

        std::cout << "exact ED vs single-spin closed form (grid of " << cfg.samples
                  << " points over " << io::fmt17(horizon) << ")\n"
                  << "  max |dE_B - oracle|  " << io::fmt17(dev_e) << "\n"
                  << "  max |E_C  - oracle|  " << io::fmt17(dev_c) << "\n"
                  << "  max |E_I  - oracle|  " << io::fmt17(dev_i) << "\n"
                  << "  |E_max - oracle|     " << io::fmt17(dev_emax) << "\n"
                  << "  |P_max - oracle|     " << io::fmt17(dev_pmax) << "\n"
                  << "  max abs / max rel    " << io::fmt17(max_abs) << " / "
                  << io::fmt17(max_rel) << "\n";
        doc["max_abs"] = max_abs;
        doc["max_rel"] = max_rel;
        doc["dev_dE_B"] = dev_e;
        doc["dev_E_C"] = dev_c;
        doc["dev_E_I"] = dev_i;
        doc["dev_E_max"] = dev_emax;
        doc["dev_P_max"] = dev_pmax;
    } else if (oracle == "tc") {
        RunOptions options{cfg.horizon, cfg.samples, cfg.refine};
        const ChargingSummary numeric = charge_summary(cfg.params, s0, options);
        const auto peak = analytic::tc_pmax(cfg.params, s0);
        const double abs_dev = std::abs(numeric.P_max - peak.P_max);
        const double rel_dev = peak.P_max > 0.0 ? abs_dev / peak.P_max : abs_dev;
        std::cout << "exact ED vs bosonized (Tavis-Cummings) closed form\n"
                  << "  ED P_max      " << io::fmt17(numeric.P_max) << " at t = "
                  << io::fmt17(numeric.t_at_Pmax) << "\n"
                  << "  TC P_max      " << io::fmt17(peak.P_max) << " at t = "
                  << io::fmt17(peak.t_star) << "\n"
                  << "  abs deviation " << io::fmt17(abs_dev) << "\n"
                  << "  rel deviation " << io::fmt17(rel_dev) << "\n";
        doc["ED_P_max"] = numeric.P_max;
        doc["TC_P_max"] = peak.P_max;
        doc["max_abs"] = abs_dev;
        doc["max_rel"] = rel_dev;
    } else {
        throw std::domain_error("oracle must be one of auto, single-spin, tc");
    }

    if (!cfg.out.empty() && cfg.out != "-")
        detail::write_to(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    return 0;
}

// --------------------------------- dispatch ---------------------------------

namespace detail {

inline void add_param_options(CLI::App* sub, RunConfig& cfg, bool with_sizes = true) {
    sub->add_option("--A", cfg.params.A, "exchange coupling");
    sub->add_option("--B", cfg.params.B, "battery field");
    sub->add_option("--h", cfg.params.h, "charger field");
    sub->add_option("--delta", cfg.params.delta, "Ising anisotropy");
    if (with_sizes) {
        sub->add_option("--NB", cfg.params.N_B, "number of battery spins");
        sub->add_option("--N", cfg.params.N, "number of bath spins");
    }
}

inline void add_initial_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--m0", cfg.m0, "initial battery excitation");
    auto* n0 = sub->add_option("--n0", "initial charger excitation");
    n0->each([&cfg](const std::string& v) { cfg.n0 = std::stoi(v); });
    sub->add_option("--rule", cfg.rule, "initial rule: n=N, n=NB or explicit")
        ->check(CLI::IsMember({"n=N", "n=NB", "explicit"}));
}

inline void add_grid_options(CLI::App* sub, RunConfig& cfg) {
    auto* hor = sub->add_option("--horizon", "time horizon (default 10 peak times)");
    hor->each([&cfg](const std::string& v) { cfg.horizon = std::stod(v); });
    sub->add_option("--samples", cfg.samples, "grid samples")->check(CLI::Range(2, 100000000));
    auto* ref = sub->add_option("--refine", "refinement time bracket");
    ref->each([&cfg](const std::string& v) { cfg.refine = std::stod(v); });
}

inline void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path ('-' = stdout)");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"central-spin quantum battery simulator"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.footer("Every subcommand also accepts --config FILE with flat key=value\n"
               "lines; flags given on the command line override file values.");

    RunConfig cfg;
    std::string nb_list, n_list, range = "1:1000000", table_path, oracle = "auto";
    std::optional<int> n_filter;
    std::string fit_out = "-";

    auto* evolve = app.add_subcommand("evolve", "time evolution of one charging run");
    detail::add_param_options(evolve, cfg);
    detail::add_initial_options(evolve, cfg);
    detail::add_grid_options(evolve, cfg);
    detail::add_output_options(evolve, cfg);

    auto* sweep = app.add_subcommand("sweep", "charging maxima over (N_B, N) grids");
    detail::add_param_options(sweep, cfg, false);
    sweep->add_option("--NB", nb_list, "battery sizes: INT, A,B,C or LO:HI[:STEP]")
        ->required();
    sweep->add_option("--N", n_list, "bath sizes: INT, A,B,C or LO:HI[:STEP]")->required();
    detail::add_initial_options(sweep, cfg);
    detail::add_grid_options(sweep, cfg);
    detail::add_output_options(sweep, cfg);
    sweep->add_option("--jobs", cfg.jobs, "parallel rows (0 = all cores)");

    auto* fit = app.add_subcommand("fit", "log-log power-law fit of a sweep table");
    fit->add_option("table", table_path, "sweep table (csv or json)")->required();
    fit->add_option("--range", range, "N_B fit window LO:HI");
    auto* nf = fit->add_option("--N", "bath size to select from the table");
    nf->each([&n_filter](const std::string& v) { n_filter = std::stoi(v); });
    fit->add_option("--out", fit_out, "write the fit report JSON here");

    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form oracle reports");
    analytic_cmd
        ->add_option("--oracle", oracle, "constants, single-spin, tc or single-bath")
        ->required();
    detail::add_param_options(analytic_cmd, cfg);
    detail::add_initial_options(analytic_cmd, cfg);
    detail::add_output_options(analytic_cmd, cfg);

    auto* compare = app.add_subcommand("compare", "exact ED vs analytic deviations");
    compare->add_option("--oracle", oracle, "auto, single-spin or tc")
        ->check(CLI::IsMember({"auto", "single-spin", "tc"}));
    detail::add_param_options(compare, cfg);
    detail::add_initial_options(compare, cfg);
    detail::add_grid_options(compare, cfg);
    detail::add_output_options(compare, cfg);

    try {
        const std::vector<std::string> args = detail::expand_config_args(argc, argv);
        std::vector<const char*> raw;
        raw.reserve(args.size());
        for (const auto& a : args) raw.push_back(a.c_str());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const io::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (app.got_subcommand(evolve)) return cmd_evolve(cfg);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg, nb_list, n_list);
        if (app.got_subcommand(fit)) return cmd_fit(table_path, range, n_filter, fit_out);
        if (app.got_subcommand(analytic_cmd)) return cmd_analytic(cfg, oracle);
        if (app.got_subcommand(compare)) return cmd_compare(cfg, oracle);
    } catch (const io::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace spinbatt::cli
