#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rackforce/params.hpp"
#include "rackforce/signal.hpp"

namespace rackforce {

namespace detail {

inline std::string fmt_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

inline double parse_double(const std::string& field, const std::string& where) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw InvalidInputError(where + ": cannot parse number '" + field + "'");
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("cannot open '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            lines.push_back(line);
    }
    return lines;
}

} // namespace detail

/**
 * @brief Write a trace as two-column CSV, header "t,<name>", %.9g values.
 *
 * The format is stable under one write/read/write cycle: re-serializing a
 * parsed file reproduces it byte for byte.
 */
inline void write_trace_csv(const std::filesystem::path& path, const SignalTrace& trace) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot write '" + path.string() + "'");
    out << "t," << (trace.name.empty() ? "value" : trace.name) << "\n";
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out << detail::fmt_g9(trace.time_at(i)) << ',' << detail::fmt_g9(trace.samples[i]) << "\n";
}

/// Read a two-column trace CSV and recover its uniform grid.
inline SignalTrace read_trace_csv(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string where = path.filename().string();
    if (lines.size() < 3)
        throw InvalidInputError(where + ": need a header and at least 2 samples");

    const auto header = detail::split_csv_line(lines[0]);
    if (header.size() != 2 || header[0] != "t")
        throw InvalidInputError(where + ": header must be 't,<name>', got '" + lines[0] + "'");

    std::vector<double> t, x;
    t.reserve(lines.size() - 1);
    x.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = detail::split_csv_line(lines[i]);
        const std::string row = where + " row " + std::to_string(i);
        if (fields.size() != 2)
            throw InvalidInputError(row + ": expected 2 columns, got " + std::to_string(fields.size()));
        t.push_back(detail::parse_double(fields[0], row));
        x.push_back(detail::parse_double(fields[1], row));
    }

    const std::size_t n = t.size();
    const double span = t.back() - t.front();
    if (!(span > 0.0))
        throw InvalidInputError(where + ": time must increase");
    const double dt = span / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const double step = t[i] - t[i - 1];
        if (!(step > 0.0) || std::abs(step - dt) > 1e-6 * dt)
            throw InvalidInputError(where + " row " + std::to_string(i + 1) +
                                    ": time grid is not uniform");
    }
    return {header[1], "", 1.0 / dt, t.front(), std::move(x)};
}

/// Write the cleat list; header "position,height,length", one row per cleat.
inline void write_cleats_csv(const std::filesystem::path& path, const std::vector<Cleat>& cleats) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot write '" + path.string() + "'");
    out << "position,height,length\n";
    for (const Cleat& c : cleats)
        out << detail::fmt_g9(c.position) << ',' << detail::fmt_g9(c.height) << ','
            << detail::fmt_g9(c.length) << "\n";
}

inline std::vector<Cleat> read_cleats_csv(const std::filesystem::path& path) {
    const auto lines = detail::read_lines(path);
    const std::string where = path.filename().string();
    if (lines.empty() || lines[0] != "position,height,length")
        throw InvalidInputError(where + ": header must be 'position,height,length'");
    std::vector<Cleat> cleats;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = detail::split_csv_line(lines[i]);
        const std::string row = where + " row " + std::to_string(i);
        if (fields.size() != 3)
            throw InvalidInputError(row + ": expected 3 columns");
        cleats.push_back({detail::parse_double(fields[0], row), detail::parse_double(fields[1], row),
                          detail::parse_double(fields[2], row)});
    }
    if (const auto r = validate_cleats(cleats); !r.ok())
        throw InvalidInputError(where + ": " + r.to_string());
    return cleats;
}

/// Write aligned traces as one multi-column CSV: t plus one column per trace.
inline void write_table_csv(const std::filesystem::path& path,
                            std::initializer_list<const SignalTrace*> traces) {
    const SignalTrace* first = *traces.begin();
    require_aligned(traces);
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot write '" + path.string() + "'");
    out << "t";
    for (const SignalTrace* tr : traces)
        out << ',' << tr->name;
    out << "\n";
    for (std::size_t i = 0; i < first->samples.size(); ++i) {
        out << detail::fmt_g9(first->time_at(i));
        for (const SignalTrace* tr : traces)
            out << ',' << detail::fmt_g9(tr->samples[i]);
        out << "\n";
    }
}

} // namespace rackforce
