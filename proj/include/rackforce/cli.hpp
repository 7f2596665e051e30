#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rackforce/config.hpp"
#include "rackforce/estimator.hpp"
#include "rackforce/metrics.hpp"
#include "rackforce/oracle.hpp"
#include "rackforce/scenario.hpp"

namespace rackforce::cli {

namespace fs = std::filesystem;

inline void diag(const std::string& stage, const std::string& msg) {
    std::cerr << "rackforce [" << stage << "] error: " << msg << "\n";
}

/// Config resolution order: --config flag, RACKFORCE_CONFIG, scenario dir.
inline Config resolve_config(const std::string& flag_path, const fs::path& scenario_dir) {
    if (!flag_path.empty())
        return load_config(flag_path);
    if (const char* env = std::getenv("RACKFORCE_CONFIG"); env && *env)
        return load_config(env);
    return load_config(scenario_dir / "config.json");
}

/// Like resolve_config but falls back to built-in defaults (no scenario around).
inline Config resolve_config_or_default(const std::string& flag_path) {
    if (!flag_path.empty())
        return load_config(flag_path);
    if (const char* env = std::getenv("RACKFORCE_CONFIG"); env && *env)
        return load_config(env);
    return default_config();
}

/// Bring scenario traces onto the configured rate and check they line up.
inline void prepare_scenario(Scenario& s, const Config& cfg) {
    for (SignalTrace* t : {&s.delta, &s.u, &s.road.slope})
        if (t->rate_hz != cfg.sim.rate_hz)
            *t = resample(*t, cfg.sim.rate_hz);
    require_aligned({&s.delta, &s.u, &s.road.slope});
}

inline ordered_json read_summary(const fs::path& path) {
    if (!fs::exists(path))
        return ordered_json::object();
    std::ifstream in(path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error&) {
        return ordered_json::object();
    }
}

inline void merge_summary(const fs::path& path, const std::string& key, ordered_json entry) {
    ordered_json j = read_summary(path);
    j[key] = std::move(entry);
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
}

inline ordered_json result_stats(const EstimationResult& r, double runtime_s) {
    const auto [lo, hi] = std::minmax_element(r.rf.samples.begin(), r.rf.samples.end());
    return {{"rf_min_n", *lo}, {"rf_max_n", *hi}, {"samples", r.rf.samples.size()},
            {"rate_hz", r.rf.rate_hz}, {"runtime_s", runtime_s}};
}

inline void write_result_csv(const fs::path& path, const EstimationResult& r) {
    write_table_csv(path, {&r.rf, &r.m_zf, &r.slip_f, &r.slip_r, &r.f_yf, &r.f_yr});
}

inline EstimatorKind parse_kind(const std::string& name) {
    if (name == "lt") return EstimatorKind::lt;
    if (name == "bt") return EstimatorKind::bt;
    if (name == "rr") return EstimatorKind::rr;
    throw InvalidInputError("unknown model '" + name + "' (expected lt, bt, or rr)");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---- gen ----

struct GenArgs {
    std::string experiment;
    std::string out;
    std::string config_path;
    double rate = NAN, duration = NAN, speed_kmh = NAN, lead_in = NAN;
    double steer_amp_deg = NAN, steer_period = NAN;
    double slope_deg = NAN, crossing_s = NAN;
    double cleat_start = NAN, cleat_spacing = NAN, cleat_length = NAN;
    bool steer_hold = false;
};

namespace detail {
inline void apply(double& dst, double v) {
    if (!std::isnan(v)) dst = v;
}
} // namespace detail

inline Scenario build_scenario(const GenArgs& a) {
    using detail::apply;
    if (a.experiment == "exp1") {
        Exp1Config c;
        apply(c.rate_hz, a.rate);
        apply(c.duration_s, a.duration);
        apply(c.speed_kmh, a.speed_kmh);
        apply(c.lead_in_s, a.lead_in);
        apply(c.steer_amp_deg, a.steer_amp_deg);
        apply(c.steer_period_s, a.steer_period);
        apply(c.crown_deg, a.slope_deg);
        apply(c.crossing_s, a.crossing_s);
        return gen_experiment1(c);
    }
    if (a.experiment == "exp2") {
        Exp2Config c;
        apply(c.rate_hz, a.rate);
        apply(c.duration_s, a.duration);
        apply(c.speed_kmh, a.speed_kmh);
        apply(c.lead_in_s, a.lead_in);
        apply(c.steer_amp_deg, a.steer_amp_deg);
        apply(c.steer_period_s, a.steer_period);
        apply(c.slope_deg, a.slope_deg);
        return gen_experiment2(c);
    }
    if (a.experiment == "exp3") {
        Exp3Config c;
        apply(c.rate_hz, a.rate);
        apply(c.duration_s, a.duration);
        apply(c.speed_kmh, a.speed_kmh);
        apply(c.lead_in_s, a.lead_in);
        apply(c.steer_amp_deg, a.steer_amp_deg);
        apply(c.steer_period_s, a.steer_period);
        apply(c.cleat_start_m, a.cleat_start);
        apply(c.cleat_spacing_m, a.cleat_spacing);
        apply(c.cleat_length_m, a.cleat_length);
        c.steer_hold = a.steer_hold;
        return gen_experiment3(c);
    }
    throw InvalidInputError("unknown experiment '" + a.experiment + "' (expected exp1, exp2, or exp3)");
}

inline int cmd_gen(const GenArgs& a, std::string& stage) {
    stage = "generate";
    const Scenario s = build_scenario(a);
    stage = "config";
    Config cfg = resolve_config_or_default(a.config_path);
    cfg.sim.rate_hz = s.delta.rate_hz;
    stage = "write-scenario";
    save_scenario(a.out, s, cfg);
    std::cout << "wrote " << s.name << " scenario to " << a.out << " (" << s.delta.size()
              << " samples at " << s.delta.rate_hz << " Hz, " << s.road.cleats.size()
              << " cleats)\n";
    return 0;
}

// ---- run / oracle / compare / decompose ----

struct RunArgs {
    std::string model;
    std::string scenario;
    std::string out;
    std::string config_path;
};

inline fs::path results_dir(const RunArgs& a) {
    const fs::path dir = a.out.empty() ? fs::path(a.scenario) / "results" : fs::path(a.out);
    fs::create_directories(dir);
    return dir;
}

inline Scenario load_prepared(const RunArgs& a, const Config& cfg, std::string& stage) {
    stage = "scenario";
    Scenario s = load_scenario(a.scenario);
    prepare_scenario(s, cfg);
    return s;
}

inline int cmd_run(const RunArgs& a, std::string& stage) {
    stage = "config";
    const Config cfg = resolve_config(a.config_path, a.scenario);
    const Scenario s = load_prepared(a, cfg, stage);
    stage = "estimate";
    const EstimatorKind kind = parse_kind(a.model);
    const Timer timer;
    const EstimationResult r = run_estimator(kind, s.delta, s.road, s.u, cfg.vehicle, cfg.tires);
    const double elapsed = timer.seconds();
    stage = "write-results";
    const fs::path dir = results_dir(a);
    const fs::path csv = dir / ("result_" + a.model + ".csv");
    write_result_csv(csv, r);
    merge_summary(dir / "summary.json", a.model, result_stats(r, elapsed));
    std::cout << "wrote " << csv.string() << " (" << r.rf.size() << " samples, "
              << elapsed << " s)\n";
    return 0;
}

inline int cmd_oracle(const RunArgs& a, std::string& stage) {
    stage = "config";
    const Config cfg = resolve_config(a.config_path, a.scenario);
    const Scenario s = load_prepared(a, cfg, stage);
    stage = "estimate";
    const OracleParams op{cfg.vehicle, cfg.tires.bt, cfg.sigma_relax};
    const Timer timer;
    const EstimationResult r = run_oracle(s.delta, s.road, s.u, op);
    const double elapsed = timer.seconds();
    stage = "write-results";
    const fs::path dir = results_dir(a);
    const fs::path csv = dir / "result_oracle.csv";
    write_result_csv(csv, r);
    merge_summary(dir / "summary.json", "oracle", result_stats(r, elapsed));
    std::cout << "wrote " << csv.string() << " (" << r.rf.size() << " samples, "
              << elapsed << " s)\n";
    return 0;
}

inline int cmd_compare(const RunArgs& a, std::string& stage) {
    stage = "config";
    const Config cfg = resolve_config(a.config_path, a.scenario);
    const Scenario s = load_prepared(a, cfg, stage);
    stage = "estimate";
    const fs::path dir = results_dir(a);

    const Timer oracle_timer;
    const OracleParams op{cfg.vehicle, cfg.tires.bt, cfg.sigma_relax};
    const EstimationResult ref = run_oracle(s.delta, s.road, s.u, op);
    const double oracle_s = oracle_timer.seconds();

    std::cout << "model  nmae_pct  runtime_s\n";
    for (const char* model : {"lt", "bt", "rr"}) {
        const Timer timer;
        const EstimationResult r =
            run_estimator(parse_kind(model), s.delta, s.road, s.u, cfg.vehicle, cfg.tires);
        const double elapsed = timer.seconds();
        stage = "write-results";
        write_result_csv(dir / ("result_" + std::string(model) + ".csv"), r);
        ordered_json entry = result_stats(r, elapsed);
        const double nmae = nmae_pct(ref.rf, r.rf);
        entry["nmae_pct"] = nmae;
        merge_summary(dir / "summary.json", model, std::move(entry));
        std::printf("%-5s  %8.3f  %9.4f\n", model, nmae, elapsed);
        stage = "estimate";
    }
    stage = "write-results";
    write_result_csv(dir / "result_oracle.csv", ref);
    merge_summary(dir / "summary.json", "oracle", result_stats(ref, oracle_s));
    std::printf("%-5s  %8s  %9.4f\n", "oracle", "-", oracle_s);
    return 0;
}

inline int cmd_decompose(const RunArgs& a, std::string& stage) {
    stage = "config";
    const Config cfg = resolve_config(a.config_path, a.scenario);
    const Scenario s = load_prepared(a, cfg, stage);
    stage = "estimate";
    const Timer timer;
    const Decomposition d =
        decompose(parse_kind(a.model), s.delta, s.road, s.u, cfg.vehicle, cfg.tires);
    const double elapsed = timer.seconds();
    stage = "write-results";
    const fs::path dir = results_dir(a);
    const fs::path csv = dir / ("decompose_" + a.model + ".csv");
    write_table_csv(csv, {&d.rf_total, &d.rf_steering, &d.rf_road, &d.residual});
    ordered_json entry{{"residual_max_abs_n", max_abs(d.residual.samples)},
                       {"runtime_s", elapsed}};
    try {
        std::vector<double> recomposed(d.rf_total.samples.size());
        for (std::size_t i = 0; i < recomposed.size(); ++i)
            recomposed[i] = d.rf_steering.samples[i] + d.rf_road.samples[i];
        entry["residual_nmae_pct"] = nmae_pct(d.rf_total.samples, recomposed);
    } catch (const DegenerateReferenceError&) {
        // A constant total (e.g. all-zero inputs) has no normalized residual.
    }
    merge_summary(dir / "summary.json", "decompose_" + a.model, std::move(entry));
    std::cout << "wrote " << csv.string() << " (" << d.rf_total.size() << " samples, "
              << elapsed << " s)\n";
    return 0;
}

// ---- tire-sweep ----

struct SweepArgs {
    std::string model;
    std::string out;
    std::string config_path;
    double alpha_max_deg = 25.0;
    int points = 201;
};

inline int cmd_tire_sweep(const SweepArgs& a, std::string& stage) {
    stage = "config";
    const Config cfg = resolve_config_or_default(a.config_path);
    if (a.points < 2)
        throw InvalidInputError("tire-sweep: need at least 2 points");
    if (!(a.alpha_max_deg > 0.0))
        throw InvalidInputError("tire-sweep: alpha range must be positive");

    stage = "sweep";
    const EstimatorKind kind = parse_kind(a.model);
    const NormalLoads loads = normal_forces(0.0, cfg.vehicle);
    const EffectiveRoadPoint eff{0.0, 0.0, loads.F_zf};
    const double amax = a.alpha_max_deg * rackforce::detail::k_deg;

    SignalTrace alpha{"alpha", "rad", 1.0, -amax, {}};
    SignalTrace f_y{"f_y", "N", 1.0, -amax, {}};
    SignalTrace t_p{"t_p", "m", 1.0, -amax, {}};
    SignalTrace m_zf{"m_zf", "N m", 1.0, -amax, {}};
    for (int i = 0; i < a.points; ++i) {
        const double al = -amax + 2.0 * amax * static_cast<double>(i) / (a.points - 1);
        TireOutputs o;
        switch (kind) {
            case EstimatorKind::lt: o = lt_tire(al, loads.F_zf, cfg.tires.lt, true, cfg.vehicle.t_m); break;
            case EstimatorKind::bt: o = bt_tire(al, loads.F_zf, cfg.tires.bt, true, cfg.vehicle.t_m); break;
            case EstimatorKind::rr: o = rr_tire(al, loads.F_zf, eff, cfg.tires.rr, true); break;
        }
        alpha.samples.push_back(al);
        f_y.samples.push_back(o.F_y);
        t_p.samples.push_back(o.t_p);
        m_zf.samples.push_back(o.M_zf);
    }

    stage = "write-results";
    const fs::path out = a.out.empty() ? fs::path("tire_sweep_" + a.model + ".csv") : fs::path(a.out);
    if (out.has_parent_path())
        fs::create_directories(out.parent_path());
    std::ofstream os(out);
    if (!os)
        throw InvalidInputError("cannot write '" + out.string() + "'");
    os << "alpha,f_y,t_p,m_zf\n";
    for (int i = 0; i < a.points; ++i)
        os << rackforce::detail::fmt_g9(alpha.samples[i]) << ',' << rackforce::detail::fmt_g9(f_y.samples[i])
           << ',' << rackforce::detail::fmt_g9(t_p.samples[i]) << ','
           << rackforce::detail::fmt_g9(m_zf.samples[i]) << "\n";
    std::cout << "wrote " << out.string() << " (" << a.points << " points, per-tire front outputs)\n";
    return 0;
}

// ---- entry point ----

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Rack-force estimation from steering, speed, and road inputs"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a scenario directory");
    gen_cmd->add_option("experiment", gen.experiment, "exp1 (crowned road), exp2 (slalom on slope), exp3 (cleat strip)")
        ->required();
    gen_cmd->add_option("--out", gen.out, "Scenario directory to create")->required();
    gen_cmd->add_option("--config", gen.config_path, "Base config to embed");
    gen_cmd->add_option("--rate", gen.rate, "Sample rate [Hz]");
    gen_cmd->add_option("--duration", gen.duration, "Duration [s]");
    gen_cmd->add_option("--speed-kmh", gen.speed_kmh, "Forward speed [km/h]");
    gen_cmd->add_option("--lead-in", gen.lead_in, "Quiet lead-in [s]");
    gen_cmd->add_option("--steer-amp-deg", gen.steer_amp_deg, "Steering amplitude [deg]");
    gen_cmd->add_option("--steer-period", gen.steer_period, "Steering period [s]");
    gen_cmd->add_flag("--steer-hold", gen.steer_hold, "exp3: ramp to a constant steering angle");
    gen_cmd->add_option("--slope-deg", gen.slope_deg, "Lateral slope / crown [deg]");
    gen_cmd->add_option("--crossing-s", gen.crossing_s, "exp1: crown crossing time [s]");
    gen_cmd->add_option("--cleat-start", gen.cleat_start, "exp3: first cleat position [m]");
    gen_cmd->add_option("--cleat-spacing", gen.cleat_spacing, "exp3: cleat spacing [m]");
    gen_cmd->add_option("--cleat-length", gen.cleat_length, "exp3: cleat length [m]");

    RunArgs run, oracle, compare, decomp;
    CLI::App* run_cmd = app.add_subcommand("run", "Run one estimator over a scenario");
    run_cmd->add_option("--model", run.model, "lt, bt, or rr")->required();
    run_cmd->add_option("--scenario", run.scenario, "Scenario directory")->required();
    run_cmd->add_option("--out", run.out, "Results directory (default: <scenario>/results)");
    run_cmd->add_option("--config", run.config_path, "Config file override");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Run the reference model over a scenario");
    oracle_cmd->add_option("--scenario", oracle.scenario, "Scenario directory")->required();
    oracle_cmd->add_option("--out", oracle.out, "Results directory (default: <scenario>/results)");
    oracle_cmd->add_option("--config", oracle.config_path, "Config file override");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run all estimators plus the reference and report NMAE");
    compare_cmd->add_option("--scenario", compare.scenario, "Scenario directory")->required();
    compare_cmd->add_option("--out", compare.out, "Results directory (default: <scenario>/results)");
    compare_cmd->add_option("--config", compare.config_path, "Config file override");

    CLI::App* decomp_cmd =
        app.add_subcommand("decompose", "Split the rack force into steering/road/residual parts");
    decomp_cmd->add_option("--model", decomp.model, "lt, bt, or rr")->required();
    decomp_cmd->add_option("--scenario", decomp.scenario, "Scenario directory")->required();
    decomp_cmd->add_option("--out", decomp.out, "Results directory (default: <scenario>/results)");
    decomp_cmd->add_option("--config", decomp.config_path, "Config file override");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("tire-sweep", "Tabulate one front tire over a slip range");
    sweep_cmd->add_option("--model", sweep.model, "lt, bt, or rr")->required();
    sweep_cmd->add_option("--out", sweep.out, "Output CSV (default: tire_sweep_<model>.csv)");
    sweep_cmd->add_option("--config", sweep.config_path, "Config file override");
    sweep_cmd->add_option("--alpha-max-deg", sweep.alpha_max_deg, "Half range of the sweep [deg]");
    sweep_cmd->add_option("--points", sweep.points, "Number of samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string stage = "startup";
    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, stage);
        if (run_cmd->parsed()) return cmd_run(run, stage);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle, stage);
        if (compare_cmd->parsed()) return cmd_compare(compare, stage);
        if (decomp_cmd->parsed()) return cmd_decompose(decomp, stage);
        if (sweep_cmd->parsed()) return cmd_tire_sweep(sweep, stage);
    } catch (const AlignmentError& e) {
        diag(stage, e.what());
        return 3;
    } catch (const SpeedTooLowError& e) {
        diag(stage, e.what());
        return 3;
    } catch (const InvalidInputError& e) {
        diag(stage, e.what());
        return 3;
    } catch (const InvalidSlipError& e) {
        diag(stage, e.what());
        return 4;
    } catch (const DegenerateReferenceError& e) {
        diag(stage, e.what());
        return 4;
    } catch (const NumericError& e) {
        diag(stage, e.what());
        return 4;
    } catch (const std::exception& e) {
        diag(stage, e.what());
        return 5;
    }
    return 0;
}

} // namespace rackforce::cli
