#pragma once

// Domain types for multi-source device-to-device (Ds2D) file transfer:
// rate table, file and battery descriptions, devices, and the Scenario
// aggregate that the rest of the library consumes. Everything here is a
// plain value type, immutable by convention after validation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ds2d {

inline constexpr int kMinRateLevel = 1;
inline constexpr int kMaxRateLevel = 15;

// Achieved data rate (kbps) per SINR-derived level 1..15 on the shared
// index space; entry i holds the rate of level i+1.
inline constexpr std::array<double, 15> kDefaultRatesKbps = {
    213.3,  328.2,  527.8,  842.2,  1227.8, 1646.1, 2067.2, 2679.7,
    3368.8, 3822.7, 4651.2, 5463.2, 6332.8, 7161.3, 7776.6};

struct RateTable {
    std::vector<double> rates_kbps{kDefaultRatesKbps.begin(), kDefaultRatesKbps.end()};

    double rate_for_level(int level) const {
        if (level < kMinRateLevel || level > kMaxRateLevel) {
            std::ostringstream msg;
            msg << "rate level " << level << " outside valid range " << kMinRateLevel
                << ".." << kMaxRateLevel;
            throw std::domain_error(msg.str());
        }
        return rates_kbps.at(static_cast<std::size_t>(level - 1));
    }
};

struct FileSpec {
    std::uint64_t packet_count = 55000;  // P
    std::uint64_t bits_per_packet = 12000;  // B, 1500 bytes

    // Exact for packet_count <= 1e9 and bits_per_packet <= 1e6, which
    // validation enforces; the product then stays below 2^53 and is also
    // exactly representable as a double.
    std::uint64_t total_bits() const { return packet_count * bits_per_packet; }
};

struct BatteryProfile {
    double charge_mah = 1440.0;
    double energy_wh = 5.45;
    // Assumed file transfers per hour; converts per-transfer energy into an
    // average load current for battery-life estimation.
    double duty_transfers_per_hour = 2.0;

    double nominal_voltage() const { return energy_wh / (charge_mah / 1000.0); }
};

enum class DeviceRole { sink, candidate_source };

// One data interface of a device and the rate level it achieves there.
// Kept as a list rather than a map so that duplicate indices coming from a
// scenario file survive parsing and are reported by validation.
struct InterfaceRate {
    int interface_index = 0;
    int rate_level = 0;
};

// A device exposes only its data interfaces here. The coordination
// (cellular) link used for signaling is always available and carries no
// modeled traffic or energy, so it never appears in a scenario.
struct Device {
    std::string id;
    DeviceRole role = DeviceRole::candidate_source;
    std::vector<InterfaceRate> interfaces;

    bool has_interface(int index) const {
        return std::any_of(interfaces.begin(), interfaces.end(),
                           [&](const InterfaceRate& ir) { return ir.interface_index == index; });
    }

    int level_at(int index) const {
        for (const auto& ir : interfaces) {
            if (ir.interface_index == index) return ir.rate_level;
        }
        throw std::domain_error("device " + id + " has no interface " + std::to_string(index));
    }
};

struct Economics {
    double price_cents_per_kwh = 12.0;
    double carbon_lb_per_kwh = 1.21;
    std::uint64_t transfers_per_year = 365;  // one file per day
    std::uint64_t random_seed = 1;
};

struct Scenario {
    std::string id = "default";
    Device sink;
    std::vector<Device> sources;
    FileSpec file;
    BatteryProfile battery;
    RateTable rate_table;
    Economics economics;

    const Device* find_source(std::string_view source_id) const {
        for (const auto& s : sources) {
            if (s.id == source_id) return &s;
        }
        return nullptr;
    }
};

// One established data link: a source device transmitting on interface n of
// the shared index space. The achieved rate is the source's level on that
// interface looked up in the scenario rate table.
struct Link {
    std::string source_id;
    int interface_index = 0;
    double rate_kbps = 0.0;

    double bits_per_second() const { return rate_kbps * 1000.0; }

    friend bool operator==(const Link&, const Link&) = default;
};

inline Link make_link(const Scenario& scenario, std::string_view source_id, int interface_index) {
    const Device* source = scenario.find_source(source_id);
    if (source == nullptr) {
        throw std::domain_error("unknown source device " + std::string(source_id));
    }
    const int level = source->level_at(interface_index);
    return Link{source->id, interface_index, scenario.rate_table.rate_for_level(level)};
}

// Scenario validation. Returns one entry per violated invariant, prefixed
// with the offending field path; empty means the scenario is usable.
inline std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> issues;
    auto add = [&](const std::string& path, const std::string& what) {
        issues.push_back(path + ": " + what);
    };

    if (s.id.empty()) add("id", "scenario id empty");

    const auto& rates = s.rate_table.rates_kbps;
    if (rates.size() != 15) {
        add("rate_table", "expected 15 entries, got " + std::to_string(rates.size()));
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (!(rates[i] > 0.0)) {
            add("rate_table[" + std::to_string(i) + "]", "rate must be > 0");
        }
        if (i > 0 && !(rates[i] > rates[i - 1])) {
            add("rate_table[" + std::to_string(i) + "]", "rates must be strictly increasing with level");
        }
    }

    if (s.file.packet_count < 1) add("file.packet_count", "must be >= 1");
    if (s.file.packet_count > 1000000000ULL) add("file.packet_count", "must be <= 1e9");
    if (s.file.bits_per_packet < 8) add("file.bits_per_packet", "must be >= 8");
    if (s.file.bits_per_packet > 1000000ULL) add("file.bits_per_packet", "must be <= 1e6");

    if (!(s.battery.charge_mah > 0.0)) add("battery.charge_mah", "must be > 0");
    if (!(s.battery.energy_wh > 0.0)) add("battery.energy_wh", "must be > 0");
    if (!(s.battery.duty_transfers_per_hour > 0.0)) add("battery.duty_transfers_per_hour", "must be > 0");

    if (!(s.economics.price_cents_per_kwh >= 0.0)) add("economics.price_cents_per_kwh", "must be >= 0");
    if (!(s.economics.carbon_lb_per_kwh >= 0.0)) add("economics.carbon_lb_per_kwh", "must be >= 0");
    if (s.economics.transfers_per_year < 1) add("economics.transfers_per_year", "must be >= 1");

    auto check_device = [&](const Device& d, const std::string& path) {
        if (d.id.empty()) add(path + ".id", "device id empty");
        if (d.interfaces.empty()) add(path + ".interfaces", "device needs at least one data interface");
        std::vector<int> seen;
        for (std::size_t i = 0; i < d.interfaces.size(); ++i) {
            const auto& ir = d.interfaces[i];
            const std::string p = path + ".interfaces[" + std::to_string(i) + "]";
            if (ir.interface_index < 1) add(p + ".index", "interface index must be >= 1");
            if (ir.rate_level < kMinRateLevel || ir.rate_level > kMaxRateLevel) {
                add(p + ".rate_level", "rate level must be in 1..15");
            }
            if (std::find(seen.begin(), seen.end(), ir.interface_index) != seen.end()) {
                add(p + ".index",
                    "duplicate interface index " + std::to_string(ir.interface_index));
            }
            seen.push_back(ir.interface_index);
        }
    };

    check_device(s.sink, "sink");
    if (s.sink.role != DeviceRole::sink) add("sink.role", "must be sink");

    if (s.sources.empty()) add("sources", "sources empty");
    std::vector<std::string> ids{s.sink.id};
    for (std::size_t i = 0; i < s.sources.size(); ++i) {
        const std::string path = "sources[" + std::to_string(i) + "]";
        const Device& d = s.sources[i];
        check_device(d, path);
        if (d.role != DeviceRole::candidate_source) add(path + ".role", "must be candidate_source");
        if (std::find(ids.begin(), ids.end(), d.id) != ids.end()) {
            add(path + ".id", "duplicate device id " + d.id);
        }
        ids.push_back(d.id);
    }

    return issues;
}

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid scenario:";
        for (const auto& i : issues) out += "\n  " + i;
        return out;
    }

    std::vector<std::string> issues_;
};

// Gate used by everything downstream: returns the scenario unchanged iff
// every invariant holds, otherwise throws with the complete violation list.
inline Scenario validated(Scenario s) {
    auto issues = validate(s);
    if (!issues.empty()) throw ScenarioError(std::move(issues));
    return s;
}

} // namespace ds2d
