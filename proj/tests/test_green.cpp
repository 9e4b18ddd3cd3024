#include <catch2/catch_amalgamated.hpp>

#include "ds2d/green.hpp"
#include "helpers.hpp"

using namespace ds2d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const BatteryProfile kBattery;  // 1440 mAh, 5.45 Wh, 2 transfers/hour
} // namespace

TEST_CASE("one hour of one active interface drains one battery equivalent") {
    CHECK_THAT(transfer_energy(kBattery, 3600.0, 1), WithinRel(5.45, 1e-12));
}

TEST_CASE("transfer energy for the level-1 single-link latency") {
    CHECK_THAT(transfer_energy(kBattery, 3094.2334739803096, 1),
               WithinRel(4.684325675886857, 1e-12));
}

TEST_CASE("energy scales linearly with active interfaces") {
    const double one = transfer_energy(kBattery, 354.9532107131333, 1);
    const double two = transfer_energy(kBattery, 354.9532107131333, 2);
    CHECK_THAT(two, WithinRel(2.0 * one, 1e-12));
}

TEST_CASE("transfer energy rejects bad inputs") {
    CHECK_THROWS_AS(transfer_energy(kBattery, -1.0, 1), std::domain_error);
    CHECK_THROWS_AS(transfer_energy(kBattery, 10.0, 0), std::domain_error);
}

TEST_CASE("annual cost chain at twelve cents per kWh") {
    // Level-1 single link: 4.684 Wh/transfer, 365 transfers/year.
    CHECK_THAT(annual_cost(4.684325675886857, 365, 12.0),
               WithinRel(0.2051734646038444, 1e-12));
    CHECK(annual_cost(0.0, 365, 12.0) == 0.0);
    // Level-1 optimal split.
    CHECK_THAT(annual_cost(0.537359721774049, 365, 12.0),
               WithinRel(0.023536355813703346, 1e-12));
}

TEST_CASE("carbon conversion reproduces the annual anchors") {
    // Single-link D2D at level 1: 1.7098 kWh -> 2.069 lb.
    const double d2d = annual_carbon(1.709778871698703, 1.21);
    CHECK_THAT(d2d, WithinRel(2.0688324347554308, 1e-12));
    CHECK_THAT(d2d, WithinAbs(2.06, 0.03));

    // Random split, closed-form expected energy 2.377 Wh/transfer.
    const double random = annual_carbon(2.376978106959407 * 365.0 / 1000.0, 1.21);
    CHECK_THAT(random, WithinAbs(1.0497923809386, 1e-9));
    CHECK_THAT(random, WithinAbs(1.06, 0.03));

    // Optimal split, 0.5374 Wh/transfer.
    const double optimal = annual_carbon(0.537359721774049 * 365.0 / 1000.0, 1.21);
    CHECK_THAT(optimal, WithinAbs(0.23732492112, 1e-9));
    CHECK_THAT(optimal, WithinAbs(0.23, 0.01));
}

TEST_CASE("load current follows the duty model") {
    CHECK_THAT(load_current(kBattery, 0.537359721774049), WithinRel(283.9625685705066, 1e-12));
    CHECK_THAT(load_current(kBattery, 4.684325675886857), WithinRel(2475.386779184247, 1e-12));
    CHECK(load_current(kBattery, 0.0) == 0.0);
}

TEST_CASE("battery life follows the derated capacity ratio") {
    CHECK_THAT(battery_life(kBattery, 1440.0), WithinRel(0.70, 1e-12));
    CHECK_THAT(battery_life(kBattery, 283.9625685705066), WithinRel(3.549763636363636, 1e-12));
    CHECK_THAT(battery_life(kBattery, 2475.386779184247), WithinRel(0.4072090909090909, 1e-12));
    CHECK(battery_life(kBattery, 0.0) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(battery_life(kBattery, -1.0), std::domain_error);
}

TEST_CASE("full report for level-1 single-link transfer") {
    const Scenario s = test::default_scenario();
    const TransferOutcome outcome{{}, 3094.2334739803096};
    const GreenReport r = green_report(s, outcome, 1);
    CHECK_THAT(r.energy_wh, WithinRel(4.684325675886857, 1e-12));
    CHECK_THAT(r.annual_kwh, WithinRel(1.709778871698703, 1e-12));
    CHECK_THAT(r.annual_cost_usd, WithinRel(0.2051734646038444, 1e-12));
    CHECK_THAT(r.annual_co2_lb, WithinRel(2.0688324347554308, 1e-12));
    CHECK_THAT(r.i_source_ma, WithinRel(2475.386779184247, 1e-12));
    CHECK_THAT(r.battery_life_h, WithinRel(0.4072090909090909, 1e-12));
    // The transfer itself takes 0.86 h; the battery dies first.
    CHECK_FALSE(r.completes_on_full_charge);
}

TEST_CASE("full report for level-1 optimal split per source") {
    const Scenario s = test::default_scenario();
    const TransferOutcome outcome{{}, 354.9532107131333};
    const GreenReport r = green_report(s, outcome, 1);
    CHECK_THAT(r.energy_wh, WithinRel(0.537359721774049, 1e-12));
    CHECK_THAT(r.battery_life_h, WithinRel(3.549763636363636, 1e-12));
    CHECK(r.battery_life_h >= 3.0);
    CHECK(r.completes_on_full_charge);
}

TEST_CASE("zero-length outcome yields an all-zero report with unbounded life") {
    const Scenario s = test::default_scenario();
    const GreenReport r = green_report(s, TransferOutcome{{}, 0.0}, 1);
    CHECK(r.energy_wh == 0.0);
    CHECK(r.annual_kwh == 0.0);
    CHECK(r.annual_cost_usd == 0.0);
    CHECK(r.annual_co2_lb == 0.0);
    CHECK(r.i_source_ma == 0.0);
    CHECK(r.battery_life_unbounded());
    CHECK(r.completes_on_full_charge);
}

TEST_CASE("energy inherits the latency ordering", "[property]") {
    Rng rng(15);
    const Scenario s = test::default_scenario();
    for (int trial = 0; trial < 200; ++trial) {
        const double t1 = rng.uniform01() * 4000.0;
        const double t2 = rng.uniform01() * 4000.0;
        const auto r1 = green_report(s, TransferOutcome{{}, t1}, 1);
        const auto r2 = green_report(s, TransferOutcome{{}, t2}, 1);
        if (t1 <= t2) {
            REQUIRE(r1.energy_wh <= r2.energy_wh);
        } else {
            REQUIRE(r1.energy_wh >= r2.energy_wh);
        }
    }
}

TEST_CASE("optimal per-source energy never exceeds single-link energy", "[property]") {
    // P*B/sum(R) <= P*B/R1 for every rate pair, and energy is monotone in t.
    Rng rng(16);
    const FileSpec file;
    for (int trial = 0; trial < 200; ++trial) {
        const RateTable table;
        const double r1 = table.rate_for_level(1 + static_cast<int>(rng.next_u64() % 15));
        const double r2 = table.rate_for_level(1 + static_cast<int>(rng.next_u64() % 15));
        const std::vector<Link> links{{"D1", 1, r1}, {"D2", 2, r2}};
        const double t_opt = ftl(optimal_split(links, file)).ftl_s;
        const double t_d2d = ftl(single_link_plan(links[0], file)).ftl_s;
        REQUIRE(transfer_energy(kBattery, t_opt, 1) <=
                transfer_energy(kBattery, t_d2d, 1) * (1.0 + 1e-12));
    }
}

TEST_CASE("multihoming device energy is N times the per-source Ds2D energy") {
    const double t = 354.9532107131333;
    CHECK_THAT(transfer_energy(kBattery, t, 2),
               WithinRel(2.0 * transfer_energy(kBattery, t, 1), 1e-12));
}

TEST_CASE("doubling the duty halves the battery life") {
    BatteryProfile doubled = kBattery;
    doubled.duty_transfers_per_hour *= 2.0;
    const double e = 0.537359721774049;
    const double base = battery_life(kBattery, load_current(kBattery, e));
    const double fast = battery_life(doubled, load_current(doubled, e));
    CHECK_THAT(fast, WithinRel(base / 2.0, 1e-12));
}
