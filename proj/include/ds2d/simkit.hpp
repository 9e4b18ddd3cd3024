#pragma once

// Packet-granular transfer simulation (an independent oracle for the
// closed-form latency), the seeded Monte Carlo engine for the random-split
// benchmark, and rate-level sweeps for scheme comparisons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ds2d/green.hpp"
#include "ds2d/model.hpp"
#include "ds2d/rng.hpp"
#include "ds2d/selection.hpp"
#include "ds2d/split.hpp"

namespace ds2d {

struct PacketEvent {
    double time_s = 0.0;
    std::size_t link_index = 0;     // position in the plan's allocation list
    std::uint64_t packet_index = 0; // contiguous from 0 within the link
};

struct PacketTrace {
    std::vector<PacketEvent> events;  // time-ordered
    std::vector<LinkTime> completion_per_link;

    double completion_s() const {
        double t = 0.0;
        for (const auto& lt : completion_per_link) t = std::max(t, lt.seconds);
        return t;
    }
};

// Plays out a plan packet by packet: each link emits its packets
// back-to-back, one packet-time B/R apart, starting at time zero. Completion
// times come from accumulating the per-packet steps, a different arithmetic
// path than the closed-form P_n*B/R_n product in ftl().
inline PacketTrace simulate_packet_transfer(const SplitPlan& plan) {
    PacketTrace trace;
    std::size_t total = 0;
    for (const auto& a : plan.allocations) total += static_cast<std::size_t>(a.packets);
    trace.events.reserve(total);

    std::vector<double> clock(plan.allocations.size(), 0.0);
    std::vector<std::uint64_t> next_packet(plan.allocations.size(), 0);
    for (std::size_t i = 0; i < plan.allocations.size(); ++i) {
        trace.completion_per_link.push_back({plan.allocations[i].link, 0.0});
    }

    // Merge the per-link emission streams in time order; ties go to the
    // lower link index so the trace is fully deterministic.
    for (std::size_t emitted = 0; emitted < total; ++emitted) {
        std::size_t best = plan.allocations.size();
        double best_done = 0.0;
        for (std::size_t i = 0; i < plan.allocations.size(); ++i) {
            if (next_packet[i] >= plan.allocations[i].packets) continue;
            const double done =
                clock[i] + static_cast<double>(plan.bits_per_packet) /
                               plan.allocations[i].link.bits_per_second();
            if (best == plan.allocations.size() || done < best_done) {
                best = i;
                best_done = done;
            }
        }
        clock[best] = best_done;
        trace.events.push_back({best_done, best, next_packet[best]});
        next_packet[best] += 1;
        trace.completion_per_link[best].seconds = best_done;
    }
    return trace;
}

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;  // fixed 50 equal-width bins
};

inline constexpr std::size_t kHistogramBins = 50;

struct MonteCarloResult {
    std::uint64_t draws = 0;
    double mean_ftl_s = 0.0;
    std::optional<double> stderr_s;     // absent for a single draw
    double mean_first_link_share = 0.0; // average fraction of packets on links[0]
    Histogram histogram;
};

// Draws independent random splits over the given links and reports the
// sample latency statistics. Draw i always uses substream derive_seed(seed,
// i), so the result is a pure function of (scenario, links, draws, seed).
inline MonteCarloResult run_monte_carlo(const Scenario& scenario, const std::vector<Link>& links,
                                        std::uint64_t draws, std::uint64_t seed) {
    if (draws < 1) throw std::domain_error("need at least one Monte Carlo draw");

    MonteCarloResult result;
    result.draws = draws;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(draws));
    double share_sum = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const SplitPlan plan = random_split(links, scenario.file, derive_seed(seed, i));
        samples.push_back(ftl(plan).ftl_s);
        share_sum += static_cast<double>(plan.allocations.front().packets) /
                     static_cast<double>(scenario.file.packet_count);
    }

    double sum = 0.0;
    for (double v : samples) sum += v;
    result.mean_ftl_s = sum / static_cast<double>(draws);
    result.mean_first_link_share = share_sum / static_cast<double>(draws);
    if (draws > 1) {
        double ss = 0.0;
        for (double v : samples) ss += (v - result.mean_ftl_s) * (v - result.mean_ftl_s);
        const double sample_var = ss / static_cast<double>(draws - 1);
        result.stderr_s = std::sqrt(sample_var / static_cast<double>(draws));
    }

    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    result.histogram.lo = *lo_it;
    result.histogram.hi = *hi_it;
    result.histogram.counts.assign(kHistogramBins, 0);
    const double width = (result.histogram.hi - result.histogram.lo) / kHistogramBins;
    for (double v : samples) {
        std::size_t bin = 0;
        if (width > 0.0) {
            bin = std::min(kHistogramBins - 1,
                           static_cast<std::size_t>((v - result.histogram.lo) / width));
        }
        result.histogram.counts[bin] += 1;
    }
    return result;
}

struct SweepRow {
    int level = 0;
    Scheme scheme = Scheme::ds2d_optimal;
    double alpha_first_link = 0.0;  // fraction of packets on the first (varied) link
    double ftl_s = 0.0;             // Monte Carlo mean for the random scheme
    double gain_vs_d2d = 0.0;
    GreenReport green;
    // Closed-form expectation of the random-split latency; present for the
    // random scheme over exactly two links.
    std::optional<double> expected_random_ftl_s;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // level-major, schemes in requested order
    std::uint64_t seed = 0;
    std::uint64_t mc_draws = 0;
};

// The (source, interface) whose rate level is swept.
struct VariedLink {
    std::string source_id;
    int interface_index = 0;
};

namespace detail {

inline Scenario with_level(Scenario s, const VariedLink& varied, int level) {
    Device* source = nullptr;
    for (auto& d : s.sources) {
        if (d.id == varied.source_id) source = &d;
    }
    if (source == nullptr) {
        throw std::domain_error("unknown varied source device " + varied.source_id);
    }
    for (auto& ir : source->interfaces) {
        if (ir.interface_index == varied.interface_index) {
            ir.rate_level = level;
            return s;
        }
    }
    throw std::domain_error("source " + varied.source_id + " has no interface " +
                            std::to_string(varied.interface_index));
}

// Links of the selected assignment, varied link first, rest in pair order.
inline std::vector<Link> selected_links(const Scenario& s, const VariedLink& varied) {
    const Assignment chosen = select_sources(s);
    std::vector<Link> links;
    links.reserve(chosen.pairs.size());
    for (const auto& p : chosen.pairs) links.push_back(make_link(s, p.source_id, p.interface_index));
    std::stable_partition(links.begin(), links.end(), [&](const Link& l) {
        return l.source_id == varied.source_id && l.interface_index == varied.interface_index;
    });
    return links;
}

} // namespace detail

// Sweeps the varied link across rate levels and evaluates the requested
// schemes at each level: plan, latency, gain against the single-link D2D
// baseline on the varied link, and the per-source green report. The random
// scheme runs mc_draws seeded draws per level (substream derive_seed(seed,
// level)) and additionally carries the closed-form expectation when exactly
// two links are in play.
inline SweepResult sweep_rate_levels(const Scenario& scenario, const VariedLink& varied,
                                     const std::vector<int>& levels,
                                     const std::vector<Scheme>& schemes, std::uint64_t mc_draws) {
    SweepResult result;
    result.seed = scenario.economics.random_seed;
    result.mc_draws = mc_draws;

    for (int level : levels) {
        if (level < kMinRateLevel || level > kMaxRateLevel) {
            throw std::domain_error("sweep level " + std::to_string(level) +
                                    " outside valid range 1..15");
        }
        const Scenario at_level = detail::with_level(scenario, varied, level);
        const Link baseline_link = make_link(at_level, varied.source_id, varied.interface_index);
        const double t_d2d = ftl(single_link_plan(baseline_link, at_level.file)).ftl_s;

        // Selection only matters for the Ds2D schemes; resolve it lazily so
        // plain d2d/multihoming sweeps work on scenarios with no feasible
        // multi-source matching.
        std::vector<Link> ds2d_links;
        auto links = [&]() -> const std::vector<Link>& {
            if (ds2d_links.empty()) ds2d_links = detail::selected_links(at_level, varied);
            return ds2d_links;
        };

        for (Scheme scheme : schemes) {
            SweepRow row;
            row.level = level;
            row.scheme = scheme;
            switch (scheme) {
                case Scheme::d2d_single: {
                    const auto plan = single_link_plan(baseline_link, at_level.file);
                    row.ftl_s = ftl(plan).ftl_s;
                    row.alpha_first_link = 1.0;
                    row.green = green_report(at_level, ftl(plan), 1);
                    break;
                }
                case Scheme::multihoming: {
                    const Device* source = at_level.find_source(varied.source_id);
                    const auto plan = multihoming_plan(*source, at_level.sink,
                                                       at_level.rate_table, at_level.file);
                    const auto outcome = ftl(plan);
                    row.ftl_s = outcome.ftl_s;
                    row.alpha_first_link =
                        static_cast<double>(plan.allocations.front().packets) /
                        static_cast<double>(at_level.file.packet_count);
                    row.green = green_report(at_level, outcome,
                                             static_cast<int>(plan.allocations.size()));
                    break;
                }
                case Scheme::ds2d_optimal: {
                    const auto plan = optimal_split(links(), at_level.file);
                    const auto outcome = ftl(plan);
                    row.ftl_s = outcome.ftl_s;
                    row.alpha_first_link =
                        static_cast<double>(plan.allocations.front().packets) /
                        static_cast<double>(at_level.file.packet_count);
                    row.green = green_report(at_level, outcome, 1);
                    break;
                }
                case Scheme::ds2d_random: {
                    const auto mc = run_monte_carlo(at_level, links(), mc_draws,
                                                    derive_seed(result.seed,
                                                                static_cast<std::uint64_t>(level)));
                    row.ftl_s = mc.mean_ftl_s;
                    row.alpha_first_link = mc.mean_first_link_share;
                    row.green = green_report(at_level, TransferOutcome{{}, mc.mean_ftl_s}, 1);
                    if (links().size() == 2) {
                        row.expected_random_ftl_s = expected_random_ftl_two_links(
                            links()[0].rate_kbps, links()[1].rate_kbps, at_level.file);
                    }
                    break;
                }
            }
            row.gain_vs_d2d = relative_gain(row.ftl_s, t_d2d);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

} // namespace ds2d
