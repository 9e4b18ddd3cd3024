#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// must not reuse the library's computation path for the quantity they check.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ds2d/model.hpp"
#include "ds2d/rng.hpp"
#include "ds2d/split.hpp"

namespace ds2d::test {

// The reference experiment: sink D0, source D1 on interfaces 1 (level 1,
// the swept one) and 2 (level 6), source D2 on interface 2 (level 6).
// Mirrors data/default_scenario.json.
inline Scenario default_scenario() {
    Scenario s;
    s.id = "two-source-default";
    s.sink = Device{"D0", DeviceRole::sink, {{1, 6}, {2, 6}}};
    s.sources = {
        Device{"D1", DeviceRole::candidate_source, {{1, 1}, {2, 6}}},
        Device{"D2", DeviceRole::candidate_source, {{2, 6}}},
    };
    s.economics.random_seed = 7;
    return s;
}

// Composite-Simpson quadrature of the expected two-link random-split
// latency, E[max(a*F/R1, (1-a)*F/R2)] over a ~ U(0,1). Integrates the max
// directly; knows nothing about the closed form.
inline double expected_random_ftl_quadrature(double r1_kbps, double r2_kbps,
                                             const FileSpec& file, int intervals = 400000) {
    const double r1 = r1_kbps * 1000.0;
    const double r2 = r2_kbps * 1000.0;
    const double total_bits = static_cast<double>(file.total_bits());
    const double h = 1.0 / intervals;
    double sum = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double a = i * h;
        const double v = std::max(a * total_bits / r1, (1.0 - a) * total_bits / r2);
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * v;
    }
    return sum * h / 3.0;
}

// Random link sets for property tests: 1..max_links links with distinct
// (source, interface) endpoints and rates drawn from the default table.
inline std::vector<Link> random_links(Rng& rng, std::size_t max_links = 5) {
    const RateTable table;
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_u64() % max_links);
    std::vector<Link> links;
    for (std::size_t i = 0; i < n; ++i) {
        const int level = 1 + static_cast<int>(rng.next_u64() % 15);
        links.push_back({"S" + std::to_string(i), static_cast<int>(i + 1),
                         table.rate_for_level(level)});
    }
    return links;
}

// Random feasible selection instance within the enumeration guard. The sink
// carries all interfaces 1..n_ifaces, so any source with at least one
// interface yields a feasible pair.
inline Scenario random_selection_instance(Rng& rng, std::size_t max_sources = 6,
                                          std::size_t max_ifaces = 4) {
    Scenario s;
    s.id = "random-instance";
    const int n_ifaces = 1 + static_cast<int>(rng.next_u64() % max_ifaces);
    const int n_sources = 1 + static_cast<int>(rng.next_u64() % max_sources);

    s.sink = Device{"sink", DeviceRole::sink, {}};
    for (int i = 1; i <= n_ifaces; ++i) s.sink.interfaces.push_back({i, 1});

    for (int j = 0; j < n_sources; ++j) {
        Device d{"S" + std::to_string(j), DeviceRole::candidate_source, {}};
        for (int i = 1; i <= n_ifaces; ++i) {
            if (rng.uniform01() < 0.6) {
                d.interfaces.push_back({i, 1 + static_cast<int>(rng.next_u64() % 15)});
            }
        }
        if (d.interfaces.empty()) {
            d.interfaces.push_back({1 + static_cast<int>(rng.next_u64() % n_ifaces),
                                    1 + static_cast<int>(rng.next_u64() % 15)});
        }
        s.sources.push_back(std::move(d));
    }
    return s;
}

} // namespace ds2d::test
