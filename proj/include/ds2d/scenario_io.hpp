#pragma once

// Scenario files are JSON documents mirroring the Scenario fields
// one-to-one, with units spelled out in the key names so a mAh can never be
// read as a Wh. See data/default_scenario.json for the reference layout.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ds2d/model.hpp"

namespace ds2d {

inline nlohmann::json to_json(const Device& d) {
    nlohmann::json interfaces = nlohmann::json::array();
    for (const auto& ir : d.interfaces) {
        interfaces.push_back({{"index", ir.interface_index}, {"rate_level", ir.rate_level}});
    }
    return {{"id", d.id}, {"interfaces", interfaces}};
}

inline nlohmann::json to_json(const Scenario& s) {
    nlohmann::json sources = nlohmann::json::array();
    for (const auto& d : s.sources) sources.push_back(to_json(d));
    return {
        {"id", s.id},
        {"sink", to_json(s.sink)},
        {"sources", sources},
        {"file", {{"packet_count", s.file.packet_count},
                  {"bits_per_packet", s.file.bits_per_packet}}},
        {"battery", {{"charge_mah", s.battery.charge_mah},
                     {"energy_wh", s.battery.energy_wh},
                     {"duty_transfers_per_hour", s.battery.duty_transfers_per_hour}}},
        {"rate_table_kbps", s.rate_table.rates_kbps},
        {"economics", {{"price_cents_per_kwh", s.economics.price_cents_per_kwh},
                       {"carbon_lb_per_kwh", s.economics.carbon_lb_per_kwh},
                       {"transfers_per_year", s.economics.transfers_per_year},
                       {"random_seed", s.economics.random_seed}}},
    };
}

namespace detail {

inline Device device_from_json(const nlohmann::json& j, DeviceRole role) {
    Device d;
    d.id = j.at("id").get<std::string>();
    d.role = role;
    for (const auto& entry : j.at("interfaces")) {
        d.interfaces.push_back(
            {entry.at("index").get<int>(), entry.at("rate_level").get<int>()});
    }
    return d;
}

} // namespace detail

// Builds a Scenario from its JSON form. Missing optional sections fall back
// to the defaults; the result is validated, so structural and invariant
// problems surface as one ScenarioError with the complete issue list.
inline Scenario scenario_from_json(const nlohmann::json& j) {
    try {
        Scenario s;
        s.id = j.at("id").get<std::string>();
        s.sink = detail::device_from_json(j.at("sink"), DeviceRole::sink);
        for (const auto& src : j.at("sources")) {
            s.sources.push_back(detail::device_from_json(src, DeviceRole::candidate_source));
        }
        const auto& file = j.at("file");
        s.file.packet_count = file.at("packet_count").get<std::uint64_t>();
        s.file.bits_per_packet = file.at("bits_per_packet").get<std::uint64_t>();
        const auto& battery = j.at("battery");
        s.battery.charge_mah = battery.at("charge_mah").get<double>();
        s.battery.energy_wh = battery.at("energy_wh").get<double>();
        s.battery.duty_transfers_per_hour = battery.at("duty_transfers_per_hour").get<double>();
        if (j.contains("rate_table_kbps")) {
            s.rate_table.rates_kbps = j.at("rate_table_kbps").get<std::vector<double>>();
        }
        const auto& eco = j.at("economics");
        s.economics.price_cents_per_kwh = eco.at("price_cents_per_kwh").get<double>();
        s.economics.carbon_lb_per_kwh = eco.at("carbon_lb_per_kwh").get<double>();
        s.economics.transfers_per_year = eco.at("transfers_per_year").get<std::uint64_t>();
        s.economics.random_seed = eco.at("random_seed").get<std::uint64_t>();
        return validated(std::move(s));
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError({std::string("malformed scenario document: ") + e.what()});
    }
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError({"cannot read scenario file " + path});
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError({std::string("scenario file is not valid JSON: ") + e.what()});
    }
    return scenario_from_json(j);
}

inline void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ScenarioError({"cannot write scenario file " + path});
    out << to_json(s).dump(2) << "\n";
}

// FNV-1a over the canonical (sorted-key, compact) serialization, so two
// formattings of the same scenario hash the same.
inline std::string scenario_hash_hex(const Scenario& s) {
    const std::string canonical = to_json(s).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

} // namespace ds2d
