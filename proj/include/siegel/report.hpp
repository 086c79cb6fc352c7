#pragma once

// ScanReport serialization. CSV: two comment lines carrying the config
// snapshot and its hash, a header, one row per sample. JSON: a summary
// document {schema, kind, config, config_hash, provenance, summary,
// row_count, flags, columns}.
//
// Numbers are printed with std::to_chars (shortest round trip), so reruns
// with the same config are byte-identical.

#include "siegel/experiments.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

namespace siegel {

inline constexpr const char* kReportSchema = "siegel-report/1";

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    char buf[17];
    auto r = std::to_chars(buf, buf + 16, x, 16);
    std::string s(buf, r.ptr);
    return std::string(16 - s.size(), '0') + s;
}

inline std::string config_hash(const nlohmann::json& config) { return hex64(fnv1a(config.dump())); }

inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const ScanReport& rep, const nlohmann::json& config) {
    os << "# " << rep.kind << " config=" << config.dump() << '\n';
    os << "# config_hash=" << config_hash(config) << '\n';
    os << "theta,family,Y,Y_tail,B,log_R,S,uncertainty,flagged,diagnostics";
    for (const auto& c : rep.extra_columns) os << ',' << c;
    os << '\n';
    for (const auto& r : rep.rows) {
        os << detail::csv_field(r.theta) << ',' << detail::csv_field(r.family) << ',' << format_number(r.Y) << ','
           << format_number(r.Y_tail) << ',' << format_number(r.B) << ',' << format_number(r.log_R) << ','
           << format_number(r.S) << ',' << format_number(r.uncertainty) << ',' << (r.flagged ? 1 : 0) << ','
           << detail::csv_field(r.diagnostics);
        for (double v : r.extra) os << ',' << format_number(v);
        os << '\n';
    }
}

inline nlohmann::json summary_json(const ScanReport& rep, const nlohmann::json& config) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["kind"] = rep.kind;
    j["config"] = config;
    j["config_hash"] = config_hash(config);
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [k, v] : rep.provenance) prov[k] = v;
    j["provenance"] = prov;
    nlohmann::json sum = nlohmann::json::object();
    for (const auto& [k, v] : rep.summary) sum[k] = detail::json_number(v);
    j["summary"] = sum;
    j["row_count"] = rep.rows.size();
    j["flags"] = rep.flagged();
    nlohmann::json cols = nlohmann::json::array();
    for (const char* c : {"theta", "family", "Y", "Y_tail", "B", "log_R", "S", "uncertainty", "flagged", "diagnostics"})
        cols.push_back(c);
    for (const auto& c : rep.extra_columns) cols.push_back(c);
    j["columns"] = cols;
    return j;
}

inline void write_json(std::ostream& os, const ScanReport& rep, const nlohmann::json& config) {
    os << summary_json(rep, config).dump(2) << '\n';
}

}  // namespace siegel
