// io.hpp — Tabular serialization: CSV with a '#'-prefixed JSON config
// header, a JSON object mode, and parsers for the sweep tables.

#pragma once

#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spinbatt/dynamics.hpp"
#include "spinbatt/scaling.hpp"

namespace spinbatt::io {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits: enough for bit-faithful double round-trips.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ------------------------------- time series --------------------------------

// Columns written for one charging run; omega_half holds Ω_n t / 2 when the
// caller supplies the single-spin Rabi frequency (N_B = 1 overlays).
struct SeriesColumns {
    static std::vector<std::string> names(bool with_omega) {
        std::vector<std::string> cols{"t", "dE_B", "E_C_minus_E_C0", "E_I", "P_B"};
        if (with_omega) cols.push_back("omega_half_t");
        return cols;
    }
};

inline void write_series_csv(std::ostream& os, const json& config, const TimeSeries& s,
                             double omega_n = 0.0) {
    const bool with_omega = omega_n > 0.0;
    os << "# " << config.dump() << "\n";
    const auto cols = SeriesColumns::names(with_omega);
    for (std::size_t c = 0; c < cols.size(); ++c)
        os << cols[c] << (c + 1 < cols.size() ? "," : "\n");
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        os << fmt17(s.times[k]) << ',' << fmt17(s.dE_B[k]) << ','
           << fmt17(s.E_C[k] - s.E_C.front()) << ',' << fmt17(s.E_I[k]) << ','
           << fmt17(s.power[k]);
        if (with_omega) os << ',' << fmt17(0.5 * omega_n * s.times[k]);
        os << '\n';
    }
}

inline void write_series_json(std::ostream& os, const json& config, const TimeSeries& s,
                              double omega_n = 0.0) {
    json series;
    series["t"] = s.times;
    series["dE_B"] = s.dE_B;
    std::vector<double> dec(s.E_C.size());
    for (std::size_t k = 0; k < s.E_C.size(); ++k) dec[k] = s.E_C[k] - s.E_C.front();
    series["E_C_minus_E_C0"] = dec;
    series["E_I"] = s.E_I;
    series["P_B"] = s.power;
    if (omega_n > 0.0) {
        std::vector<double> w(s.times.size());
        for (std::size_t k = 0; k < s.times.size(); ++k) w[k] = 0.5 * omega_n * s.times[k];
        series["omega_half_t"] = w;
    }
    json doc;
    doc["config"] = config;
    doc["series"] = series;
    os << doc.dump(2) << '\n';
}

// -------------------------------- sweep tables ------------------------------

inline void write_sweep_csv(std::ostream& os, const json& config,
                            const scaling::SweepResult& result) {
    os << "# " << config.dump() << "\n";
    os << "N,N_B,n0,m0,E_max,P_max,t_at_Pmax\n";
    for (const auto& row : result.rows) {
        os << row.N << ',' << row.N_B << ',' << row.n0 << ',' << row.m0 << ','
           << fmt17(row.E_max) << ',' << fmt17(row.P_max) << ',' << fmt17(row.t_at_Pmax)
           << '\n';
    }
    for (const auto& fail : result.failed)
        os << "# failed: N=" << fail.N << " N_B=" << fail.N_B << " (" << fail.message
           << ")\n";
}

inline json sweep_row_json(const scaling::SweepRow& row) {
    return json{{"N", row.N},         {"N_B", row.N_B},     {"n0", row.n0},
                {"m0", row.m0},       {"E_max", row.E_max}, {"P_max", row.P_max},
                {"t_at_Pmax", row.t_at_Pmax}};
}

inline void write_sweep_json(std::ostream& os, const json& config,
                             const scaling::SweepResult& result) {
    json rows = json::array();
    for (const auto& row : result.rows) rows.push_back(sweep_row_json(row));
    json failed = json::array();
    for (const auto& fail : result.failed)
        failed.push_back(json{{"N", fail.N}, {"N_B", fail.N_B}, {"message", fail.message}});
    json doc;
    doc["config"] = config;
    doc["rows"] = rows;
    doc["failed"] = failed;
    os << doc.dump(2) << '\n';
}

struct SweepTable {
    json config;
    std::vector<scaling::SweepRow> rows;
};

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream ss(line);
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

inline scaling::SweepRow row_from_json(const json& j) {
    scaling::SweepRow row;
    row.N = j.at("N").get<int>();
    row.N_B = j.at("N_B").get<int>();
    row.n0 = j.at("n0").get<int>();
    row.m0 = j.at("m0").get<int>();
    row.E_max = j.at("E_max").get<double>();
    row.P_max = j.at("P_max").get<double>();
    row.t_at_Pmax = j.at("t_at_Pmax").get<double>();
    return row;
}

}  // namespace detail

// Parse a sweep table written by either writer; the format is detected from
// the first non-blank character ('{' for JSON, '#' or a header for CSV).
inline SweepTable read_sweep(std::istream& is) {
    SweepTable table;
    std::string content((std::istreambuf_iterator<char>(is)),
                        std::istreambuf_iterator<char>());
    std::size_t start = content.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) throw IoError("empty sweep table");

    if (content[start] == '{') {
        json doc = json::parse(content, nullptr, false);
        if (doc.is_discarded()) throw IoError("sweep table: invalid JSON");
        if (doc.contains("config")) table.config = doc["config"];
        if (!doc.contains("rows")) throw IoError("sweep table: missing \"rows\"");
        for (const auto& j : doc["rows"]) table.rows.push_back(detail::row_from_json(j));
        return table;
    }

    std::istringstream ss(content);
    std::string line;
    std::unordered_map<std::string, int> col;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t brace = line.find('{');
            if (table.config.is_null() && brace != std::string::npos) {
                json cfg = json::parse(line.substr(brace), nullptr, false);
                if (!cfg.is_discarded()) table.config = cfg;
            }
            continue;
        }
        const auto parts = detail::split(line, ',');
        if (col.empty()) {
            for (std::size_t c = 0; c < parts.size(); ++c) col[parts[c]] = static_cast<int>(c);
            for (const char* required : {"N", "N_B", "n0", "m0", "E_max", "P_max", "t_at_Pmax"})
                if (!col.count(required))
                    throw IoError(std::string("sweep table: missing column ") + required);
            continue;
        }
        if (parts.size() < col.size()) throw IoError("sweep table: short row: " + line);
        scaling::SweepRow row;
        row.N = std::stoi(parts[col["N"]]);
        row.N_B = std::stoi(parts[col["N_B"]]);
        row.n0 = std::stoi(parts[col["n0"]]);
        row.m0 = std::stoi(parts[col["m0"]]);
        row.E_max = std::strtod(parts[col["E_max"]].c_str(), nullptr);
        row.P_max = std::strtod(parts[col["P_max"]].c_str(), nullptr);
        row.t_at_Pmax = std::strtod(parts[col["t_at_Pmax"]].c_str(), nullptr);
        table.rows.push_back(row);
    }
    if (col.empty()) throw IoError("sweep table: no header row");
    return table;
}

inline json fit_json(const scaling::ScalingFit& fit) {
    return json{{"alpha", fit.alpha},
                {"beta", fit.beta},
                {"residual", fit.residual},
                {"N", fit.N},
                {"fit_range", {fit.fit_range.first, fit.fit_range.second}},
                {"rows_used", fit.rows_used}};
}

}  // namespace spinbatt::io
