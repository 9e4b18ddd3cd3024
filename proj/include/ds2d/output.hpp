#pragma once

// Machine-readable emission of sweep results: a flat CSV with a fixed
// column order, or a single structured JSON document. Both are byte-stable
// for a given (scenario, seed): no timestamps, hostnames or paths ever go
// into the output, and floats are printed with 12 significant digits so
// golden-file comparisons hold across platforms.

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ds2d/simkit.hpp"
#include "ds2d/version.hpp"

namespace ds2d {

inline constexpr std::string_view kCsvHeader =
    "scenario_id,seed,level,scheme,alpha_first_link,ftl_s,gain_vs_d2d,energy_wh,annual_kwh,"
    "annual_cost_usd,annual_co2_lb,i_source_ma,battery_life_h,completes_on_charge";

struct SweepMeta {
    std::string scenario_id;
    std::string scenario_hash_hex;
};

// 12 significant digits: enough that parsing the field back recovers the
// computed double to well under 1e-9 relative.
inline std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string to_csv(const SweepResult& sweep, const SweepMeta& meta) {
    std::string out;
    out += "# ";
    out += kToolName;
    out += " ";
    out += kToolVersion;
    out += "\n# scenario ";
    out += meta.scenario_id;
    out += " hash ";
    out += meta.scenario_hash_hex;
    out += "\n# seed " + std::to_string(sweep.seed) + " mc_draws " + std::to_string(sweep.mc_draws);
    out += "\n";
    out += kCsvHeader;
    out += "\n";
    for (const auto& row : sweep.rows) {
        out += meta.scenario_id;
        out += "," + std::to_string(sweep.seed);
        out += "," + std::to_string(row.level);
        out += ",";
        out += scheme_name(row.scheme);
        out += "," + format_sig12(row.alpha_first_link);
        out += "," + format_sig12(row.ftl_s);
        out += "," + format_sig12(row.gain_vs_d2d);
        out += "," + format_sig12(row.green.energy_wh);
        out += "," + format_sig12(row.green.annual_kwh);
        out += "," + format_sig12(row.green.annual_cost_usd);
        out += "," + format_sig12(row.green.annual_co2_lb);
        out += "," + format_sig12(row.green.i_source_ma);
        out += "," + format_sig12(row.green.battery_life_h);
        out += ",";
        out += row.green.completes_on_full_charge ? "true" : "false";
        out += "\n";
    }
    return out;
}

// Single JSON document carrying the same rows plus fields that have no CSV
// column, notably the closed-form expectation for the random scheme.
inline std::string to_structured_json(const SweepResult& sweep, const SweepMeta& meta) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : sweep.rows) {
        nlohmann::json r = {
            {"level", row.level},
            {"scheme", std::string(scheme_name(row.scheme))},
            {"alpha_first_link", row.alpha_first_link},
            {"ftl_s", row.ftl_s},
            {"gain_vs_d2d", row.gain_vs_d2d},
            {"energy_wh", row.green.energy_wh},
            {"annual_kwh", row.green.annual_kwh},
            {"annual_cost_usd", row.green.annual_cost_usd},
            {"annual_co2_lb", row.green.annual_co2_lb},
            {"i_source_ma", row.green.i_source_ma},
            {"battery_life_h", row.green.battery_life_h},
            {"completes_on_charge", row.green.completes_on_full_charge},
        };
        if (row.expected_random_ftl_s) {
            r["expected_random_ftl_s"] = *row.expected_random_ftl_s;
        }
        rows.push_back(std::move(r));
    }
    const nlohmann::json doc = {
        {"tool", std::string(kToolName)},
        {"version", std::string(kToolVersion)},
        {"scenario_id", meta.scenario_id},
        {"scenario_hash", meta.scenario_hash_hex},
        {"seed", sweep.seed},
        {"mc_draws", sweep.mc_draws},
        {"rows", rows},
    };
    return doc.dump(2) + "\n";
}

} // namespace ds2d
