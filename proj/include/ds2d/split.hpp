#pragma once

// Packet split strategies over a set of established links and the
// closed-form transfer-latency math. A transfer of P packets of B bits is
// split into integer per-link packet counts; the file transfer latency is
// the time the slowest link needs for its share:
//
//   t = max_n (P_n * B / R_n)
//
// The latency-minimizing continuous split is rate-proportional
// (alpha_i = R_i / sum R), which makes all links finish together; for two
// links this is the familiar alpha = R1 / (R1 + R2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "ds2d/model.hpp"
#include "ds2d/rng.hpp"

namespace ds2d {

enum class Scheme { d2d_single, multihoming, ds2d_optimal, ds2d_random };

inline constexpr std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::d2d_single: return "d2d";
        case Scheme::multihoming: return "multihoming";
        case Scheme::ds2d_optimal: return "optimal";
        case Scheme::ds2d_random: return "random";
    }
    return "unknown";
}

struct Allocation {
    Link link;
    std::uint64_t packets = 0;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct SplitPlan {
    std::vector<Allocation> allocations;
    std::uint64_t bits_per_packet = 0;
    Scheme scheme = Scheme::ds2d_optimal;

    std::uint64_t total_packets() const {
        std::uint64_t total = 0;
        for (const auto& a : allocations) total += a.packets;
        return total;
    }

    friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

struct LinkTime {
    Link link;
    double seconds = 0.0;
};

struct TransferOutcome {
    std::vector<LinkTime> per_link_time;
    double ftl_s = 0.0;  // max over links
};

namespace detail {

inline void require_links(const std::vector<Link>& links) {
    if (links.empty()) throw std::domain_error("packet split requires at least one link");
    for (const auto& l : links) {
        if (!(l.rate_kbps > 0.0)) {
            throw std::domain_error("link " + l.source_id + "/" +
                                    std::to_string(l.interface_index) + " has nonpositive rate");
        }
    }
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = i + 1; j < links.size(); ++j) {
            if (links[i].source_id == links[j].source_id &&
                links[i].interface_index == links[j].interface_index) {
                throw std::domain_error("duplicate link in split input");
            }
        }
    }
}

} // namespace detail

// Continuous rate-proportional shares, alpha_i = R_i / sum_j R_j.
inline std::vector<double> rate_proportional_shares(const std::vector<Link>& links) {
    detail::require_links(links);
    double total = 0.0;
    for (const auto& l : links) total += l.rate_kbps;
    std::vector<double> shares;
    shares.reserve(links.size());
    for (const auto& l : links) shares.push_back(l.rate_kbps / total);
    return shares;
}

// Largest-remainder apportionment of `total` items into integer counts
// following the given nonnegative shares. Floors the continuous quotas and
// hands leftover items to the largest fractional parts, ties going to the
// lower index, so the counts always sum to `total` exactly.
inline std::vector<std::uint64_t> apportion_largest_remainder(const std::vector<double>& shares,
                                                              std::uint64_t total) {
    if (shares.empty()) throw std::domain_error("apportionment requires at least one share");
    double share_sum = 0.0;
    for (double s : shares) {
        if (!(s >= 0.0)) throw std::domain_error("shares must be nonnegative");
        share_sum += s;
    }
    if (!(share_sum > 0.0)) throw std::domain_error("share sum must be positive");

    const std::size_t n = shares.size();
    std::vector<std::uint64_t> counts(n);
    std::vector<std::pair<double, std::size_t>> fractional(n);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double quota = shares[i] / share_sum * static_cast<double>(total);
        const double floored = std::floor(quota);
        counts[i] = static_cast<std::uint64_t>(floored);
        fractional[i] = {quota - floored, i};
        assigned += counts[i];
    }

    // Largest fractional part first; ties break toward the lower link index.
    std::sort(fractional.begin(), fractional.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::uint64_t leftover = total - assigned;
    for (std::size_t k = 0; leftover > 0; k = (k + 1) % n, --leftover) {
        counts[fractional[k].second] += 1;
    }
    return counts;
}

inline SplitPlan make_plan(const std::vector<Link>& links, const std::vector<std::uint64_t>& counts,
                           const FileSpec& file, Scheme scheme) {
    SplitPlan plan;
    plan.bits_per_packet = file.bits_per_packet;
    plan.scheme = scheme;
    plan.allocations.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        plan.allocations.push_back({links[i], counts[i]});
    }
    return plan;
}

// Rate-proportional split: the unique continuous split under which all links
// finish simultaneously, rounded to integers by largest remainder.
inline SplitPlan optimal_split(const std::vector<Link>& links, const FileSpec& file) {
    const auto shares = rate_proportional_shares(links);
    const auto counts = apportion_largest_remainder(shares, file.packet_count);
    return make_plan(links, counts, file, Scheme::ds2d_optimal);
}

// Random split benchmark. Two links draw alpha ~ Uniform(0,1); more links
// draw shares uniformly from the simplex (normalized exponentials).
// Deterministic for a given seed.
inline SplitPlan random_split(const std::vector<Link>& links, const FileSpec& file,
                              std::uint64_t rng_seed) {
    detail::require_links(links);
    Rng rng(rng_seed);
    std::vector<double> shares(links.size());
    if (links.size() == 1) {
        shares[0] = 1.0;
    } else if (links.size() == 2) {
        const double alpha = rng.uniform01();
        shares[0] = alpha;
        shares[1] = 1.0 - alpha;
    } else {
        for (auto& s : shares) s = -std::log(rng.uniform01());
    }
    const auto counts = apportion_largest_remainder(shares, file.packet_count);
    return make_plan(links, counts, file, Scheme::ds2d_random);
}

// Traditional D2D: one source transmits the complete file on one link.
inline SplitPlan single_link_plan(const Link& link, const FileSpec& file) {
    detail::require_links({link});
    return make_plan({link}, {file.packet_count}, file, Scheme::d2d_single);
}

// Multi-homing: a single source transmits over every data interface it
// shares with the sink, split rate-proportionally across those interfaces.
inline SplitPlan multihoming_plan(const Device& source, const Device& sink,
                                  const RateTable& rate_table, const FileSpec& file) {
    std::vector<Link> links;
    for (const auto& ir : source.interfaces) {
        if (sink.has_interface(ir.interface_index)) {
            links.push_back(
                {source.id, ir.interface_index, rate_table.rate_for_level(ir.rate_level)});
        }
    }
    if (links.empty()) {
        throw std::domain_error("source " + source.id + " shares no data interface with sink " +
                                sink.id);
    }
    std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
        return a.interface_index < b.interface_index;
    });
    auto plan = optimal_split(links, file);
    plan.scheme = Scheme::multihoming;
    return plan;
}

// Closed-form file transfer latency of a plan.
inline TransferOutcome ftl(const SplitPlan& plan) {
    TransferOutcome outcome;
    outcome.per_link_time.reserve(plan.allocations.size());
    for (const auto& a : plan.allocations) {
        const double bits = static_cast<double>(a.packets) * static_cast<double>(plan.bits_per_packet);
        const double seconds = bits / a.link.bits_per_second();
        outcome.per_link_time.push_back({a.link, seconds});
        outcome.ftl_s = std::max(outcome.ftl_s, seconds);
    }
    return outcome;
}

// Relative latency reduction of a scheme against a baseline. Negative values
// are a loss (the scheme is slower than the baseline).
inline double relative_gain(double t_scheme_s, double t_baseline_s) {
    if (!(t_baseline_s > 0.0)) throw std::domain_error("baseline latency must be positive");
    return (t_baseline_s - t_scheme_s) / t_baseline_s;
}

// Exact expectation of the two-link transfer latency under a random split
// alpha ~ Uniform(0,1). With F = P*B and a* = R1/(R1+R2) the max switches
// branch at a*, and integrating each branch gives
//
//   E[t] = (F/R2)(a* - a*^2/2) + (F/R1)(1 - a*^2)/2.
inline double expected_random_ftl_two_links(double r1_kbps, double r2_kbps, const FileSpec& file) {
    if (!(r1_kbps > 0.0) || !(r2_kbps > 0.0)) throw std::domain_error("rates must be positive");
    const double r1 = r1_kbps * 1000.0;
    const double r2 = r2_kbps * 1000.0;
    const double total_bits = static_cast<double>(file.total_bits());
    const double a = r1 / (r1 + r2);
    return (total_bits / r2) * (a - a * a / 2.0) +
           (total_bits / r1) * (1.0 - a * a) / 2.0;
}

} // namespace ds2d
