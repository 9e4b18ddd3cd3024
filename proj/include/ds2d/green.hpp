#pragma once

// Energy, electricity-cost, carbon and battery-life analytics for a source
// device taking part in a transfer. A device engaged for t seconds with A
// active data interfaces consumes
//
//   E = A * E_batt * t / 3600   [Wh]
//
// which annualizes into cost and CO2 via the scenario economics, and turns
// into an average load current through the duty model: a device performing D
// transfers per hour draws I = D * E / V_batt. Battery life follows the
// usual capacity estimate I_batt / I * 0.70, the 0.70 covering external
// derating factors.

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "ds2d/model.hpp"
#include "ds2d/split.hpp"

namespace ds2d {

struct GreenReport {
    double energy_wh = 0.0;        // per transfer, per source device
    double annual_kwh = 0.0;
    double annual_cost_usd = 0.0;
    double annual_co2_lb = 0.0;
    double i_source_ma = 0.0;
    double battery_life_h = 0.0;   // +inf when the device draws no load
    bool completes_on_full_charge = false;

    bool battery_life_unbounded() const {
        return battery_life_h == std::numeric_limits<double>::infinity();
    }
};

inline double transfer_energy(const BatteryProfile& battery, double t_s, int active_interfaces) {
    if (t_s < 0.0) throw std::domain_error("transfer time must be nonnegative");
    if (active_interfaces < 1) throw std::domain_error("need at least one active interface");
    return static_cast<double>(active_interfaces) * battery.energy_wh * t_s / 3600.0;
}

inline double annual_cost(double e_per_transfer_wh, std::uint64_t transfers_per_year,
                          double price_cents_per_kwh) {
    if (e_per_transfer_wh < 0.0 || price_cents_per_kwh < 0.0) {
        throw std::domain_error("cost inputs must be nonnegative");
    }
    const double annual_kwh = e_per_transfer_wh * static_cast<double>(transfers_per_year) / 1000.0;
    return annual_kwh * price_cents_per_kwh / 100.0;
}

inline double annual_carbon(double annual_kwh, double lb_per_kwh) {
    if (annual_kwh < 0.0 || lb_per_kwh < 0.0) {
        throw std::domain_error("carbon inputs must be nonnegative");
    }
    return annual_kwh * lb_per_kwh;
}

// Average load current (mA) of a device doing duty_transfers_per_hour
// transfers costing e_per_transfer_wh each, at the battery nominal voltage.
inline double load_current(const BatteryProfile& battery, double e_per_transfer_wh) {
    if (e_per_transfer_wh < 0.0) throw std::domain_error("energy must be nonnegative");
    return battery.duty_transfers_per_hour * e_per_transfer_wh / battery.nominal_voltage() * 1000.0;
}

// Battery life in hours; a zero load means the battery never drains, reported
// as the +inf sentinel rather than a number.
inline double battery_life(const BatteryProfile& battery, double i_source_ma) {
    if (i_source_ma < 0.0) throw std::domain_error("load current must be nonnegative");
    if (i_source_ma == 0.0) return std::numeric_limits<double>::infinity();
    return battery.charge_mah / i_source_ma * 0.70;
}

// Full analytics chain for one (scheme, scenario) outcome. The engagement
// duration is the outcome latency: with the optimal split every source
// finishes exactly then, and under other splits the session holds all
// devices until the slowest link completes.
inline GreenReport green_report(const Scenario& scenario, const TransferOutcome& outcome,
                                int active_interfaces) {
    GreenReport r;
    r.energy_wh = transfer_energy(scenario.battery, outcome.ftl_s, active_interfaces);
    r.annual_kwh =
        r.energy_wh * static_cast<double>(scenario.economics.transfers_per_year) / 1000.0;
    r.annual_cost_usd = annual_cost(r.energy_wh, scenario.economics.transfers_per_year,
                                    scenario.economics.price_cents_per_kwh);
    r.annual_co2_lb = annual_carbon(r.annual_kwh, scenario.economics.carbon_lb_per_kwh);
    r.i_source_ma = load_current(scenario.battery, r.energy_wh);
    r.battery_life_h = battery_life(scenario.battery, r.i_source_ma);
    r.completes_on_full_charge = r.battery_life_h >= outcome.ftl_s / 3600.0;
    return r;
}

} // namespace ds2d
