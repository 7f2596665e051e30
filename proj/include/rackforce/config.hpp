#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "rackforce/csv.hpp"
#include "rackforce/oracle.hpp"
#include "rackforce/params.hpp"
#include "rackforce/scenario.hpp"

namespace rackforce {

using ordered_json = nlohmann::ordered_json;

/// Simulation settings shared by every run of one scenario.
struct SimConfig {
    double rate_hz = 250.0;
};

/// Complete tool configuration: one vehicle, one parameter block per tire model.
struct Config {
    VehicleParams vehicle{};
    TireSet tires{};
    double sigma_relax = 0.3;    ///< oracle relaxation length [m]
    SimConfig sim{};
};

inline Config default_config() { return {}; }

namespace detail {

inline double get_num(const ordered_json& section, const std::string& section_name,
                      const char* key) {
    if (!section.contains(key))
        throw InvalidInputError("config: missing '" + section_name + "." + key + "'");
    const auto& v = section.at(key);
    if (!v.is_number())
        throw InvalidInputError("config: '" + section_name + "." + key + "' must be a number");
    return v.get<double>();
}

inline const ordered_json& get_section(const ordered_json& doc, const char* name) {
    if (!doc.contains(name) || !doc.at(name).is_object())
        throw InvalidInputError(std::string("config: missing section '") + name + "'");
    return doc.at(name);
}

} // namespace detail

inline ordered_json to_json(const Config& c) {
    ordered_json j;
    j["vehicle"] = {{"m", c.vehicle.m},     {"I", c.vehicle.I},   {"l_f", c.vehicle.l_f},
                    {"l_r", c.vehicle.l_r}, {"i_p", c.vehicle.i_p}, {"t_m", c.vehicle.t_m},
                    {"g", c.vehicle.g}};
    j["tire_lt"] = {{"C_af", c.tires.lt.C_af},
                    {"C_ar", c.tires.lt.C_ar},
                    {"t_p0", c.tires.lt.t_p0},
                    {"mu", c.tires.lt.mu}};
    j["tire_bt"] = {{"c_p", c.tires.bt.c_p}, {"a", c.tires.bt.a}, {"mu", c.tires.bt.mu}};
    const TireParamsRR& rr = c.tires.rr;
    j["tire_rr"] = {{"B_y", rr.mf_y.B_y}, {"C_y", rr.mf_y.C_y},   {"d_y", rr.mf_y.d_y},
                    {"E_y", rr.mf_y.E_y}, {"S_Hy", rr.mf_y.S_Hy}, {"S_Vy", rr.mf_y.S_Vy},
                    {"B_t", rr.mf_t.B_t}, {"C_t", rr.mf_t.C_t},   {"d_t", rr.mf_t.d_t},
                    {"E_t", rr.mf_t.E_t}, {"S_Ht", rr.mf_t.S_Ht}, {"B_r", rr.mf_r.B_r},
                    {"d_r", rr.mf_r.d_r}, {"a", rr.a},            {"k_z", rr.k_z},
                    {"c_z", rr.c_z},      {"r0", rr.r0},          {"ls", rr.ls}};
    j["oracle"] = {{"sigma_relax", c.sigma_relax}};
    j["sim"] = {{"rate_hz", c.sim.rate_hz}};
    return j;
}

inline Config config_from_json(const ordered_json& j) {
    using detail::get_num;
    using detail::get_section;
    Config c;

    const auto& v = get_section(j, "vehicle");
    c.vehicle.m = get_num(v, "vehicle", "m");
    c.vehicle.I = get_num(v, "vehicle", "I");
    c.vehicle.l_f = get_num(v, "vehicle", "l_f");
    c.vehicle.l_r = get_num(v, "vehicle", "l_r");
    c.vehicle.i_p = get_num(v, "vehicle", "i_p");
    c.vehicle.t_m = get_num(v, "vehicle", "t_m");
    c.vehicle.g = get_num(v, "vehicle", "g");

    const auto& lt = get_section(j, "tire_lt");
    c.tires.lt.C_af = get_num(lt, "tire_lt", "C_af");
    c.tires.lt.C_ar = get_num(lt, "tire_lt", "C_ar");
    c.tires.lt.t_p0 = get_num(lt, "tire_lt", "t_p0");
    c.tires.lt.mu = get_num(lt, "tire_lt", "mu");

    const auto& bt = get_section(j, "tire_bt");
    c.tires.bt.c_p = get_num(bt, "tire_bt", "c_p");
    c.tires.bt.a = get_num(bt, "tire_bt", "a");
    c.tires.bt.mu = get_num(bt, "tire_bt", "mu");

    const auto& rr = get_section(j, "tire_rr");
    c.tires.rr.mf_y = {get_num(rr, "tire_rr", "B_y"), get_num(rr, "tire_rr", "C_y"),
                       get_num(rr, "tire_rr", "d_y"), get_num(rr, "tire_rr", "E_y"),
                       get_num(rr, "tire_rr", "S_Hy"), get_num(rr, "tire_rr", "S_Vy")};
    c.tires.rr.mf_t = {get_num(rr, "tire_rr", "B_t"), get_num(rr, "tire_rr", "C_t"),
                       get_num(rr, "tire_rr", "d_t"), get_num(rr, "tire_rr", "E_t"),
                       get_num(rr, "tire_rr", "S_Ht")};
    c.tires.rr.mf_r = {get_num(rr, "tire_rr", "B_r"), get_num(rr, "tire_rr", "d_r")};
    c.tires.rr.a = get_num(rr, "tire_rr", "a");
    c.tires.rr.k_z = get_num(rr, "tire_rr", "k_z");
    c.tires.rr.c_z = get_num(rr, "tire_rr", "c_z");
    c.tires.rr.r0 = get_num(rr, "tire_rr", "r0");
    c.tires.rr.ls = get_num(rr, "tire_rr", "ls");

    if (j.contains("oracle"))
        c.sigma_relax = get_num(j.at("oracle"), "oracle", "sigma_relax");

    const auto& sim = get_section(j, "sim");
    c.sim.rate_hz = get_num(sim, "sim", "rate_hz");
    if (!(c.sim.rate_hz > 0.0))
        throw InvalidInputError("config: sim.rate_hz must be positive");
    return c;
}

inline Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("cannot open config '" + path.string() + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError("config '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

inline void write_config(const std::filesystem::path& path, const Config& c) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot write config '" + path.string() + "'");
    out << to_json(c).dump(2) << "\n";
}

/// Materialize a scenario directory: delta.csv, speed.csv, slope.csv, cleats.csv, config.json.
inline void save_scenario(const std::filesystem::path& dir, const Scenario& s, const Config& cfg) {
    std::filesystem::create_directories(dir);
    write_trace_csv(dir / "delta.csv", s.delta);
    write_trace_csv(dir / "speed.csv", s.u);
    write_trace_csv(dir / "slope.csv", s.road.slope);
    write_cleats_csv(dir / "cleats.csv", s.road.cleats);
    write_config(dir / "config.json", cfg);
}

/// Read a scenario directory back. Traces keep the rate stored in the files.
inline Scenario load_scenario(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw InvalidInputError("scenario directory '" + dir.string() + "' does not exist");
    Scenario s;
    s.name = dir.filename().string();
    s.delta = read_trace_csv(dir / "delta.csv");
    s.u = read_trace_csv(dir / "speed.csv");
    s.road.slope = read_trace_csv(dir / "slope.csv");
    s.road.cleats = read_cleats_csv(dir / "cleats.csv");
    return s;
}

} // namespace rackforce
