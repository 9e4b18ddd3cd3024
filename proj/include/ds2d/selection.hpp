#pragma once

// Source-device and interface selection: which candidate sources transmit on
// which sink data interfaces. A feasible assignment is a partial matching:
//
//   - at most one pair per sink data interface,
//   - every source appears in at most one pair (a source transmits on a
//     single radio interface),
//   - a pair requires the interface on both the source and the sink.
//
// The objective is pluggable; the default maximizes the aggregate rate,
// which simultaneously minimizes the optimal-split latency P*B/sum(R) and,
// with it, per-source transfer energy.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ds2d/model.hpp"

namespace ds2d {

struct AssignmentPair {
    std::string source_id;
    int interface_index = 0;

    friend bool operator==(const AssignmentPair&, const AssignmentPair&) = default;
    friend auto operator<=>(const AssignmentPair&, const AssignmentPair&) = default;
};

struct Assignment {
    std::vector<AssignmentPair> pairs;  // kept sorted by (source_id, interface)
    double objective_value = 0.0;
};

// Deterministic tie order: compare the sorted pair sequences lexicographically.
inline bool lex_less(const Assignment& a, const Assignment& b) {
    return std::lexicographical_compare(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                                        b.pairs.end());
}

class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exhaustive enumeration stays tractable up to these instance sizes; larger
// instances must go through greedy_select.
inline constexpr std::size_t kMaxEnumSources = 12;
inline constexpr std::size_t kMaxEnumInterfaces = 6;

inline bool within_enumeration_guard(const Scenario& s) {
    return s.sources.size() <= kMaxEnumSources &&
           s.sink.interfaces.size() <= kMaxEnumInterfaces;
}

using Objective = std::function<double(const Scenario&, const Assignment&)>;

inline double pair_rate_kbps(const Scenario& s, const AssignmentPair& p) {
    return make_link(s, p.source_id, p.interface_index).rate_kbps;
}

// Default objective: sum of achieved link rates.
inline double aggregate_rate_kbps(const Scenario& s, const Assignment& a) {
    double total = 0.0;
    for (const auto& p : a.pairs) total += pair_rate_kbps(s, p);
    return total;
}

namespace detail {

// (source index, interface) pairs that could carry data, grouped by sink
// interface in increasing index order.
inline std::vector<std::pair<int, std::vector<std::size_t>>> candidate_table(const Scenario& s) {
    std::vector<int> sink_ifaces;
    for (const auto& ir : s.sink.interfaces) sink_ifaces.push_back(ir.interface_index);
    std::sort(sink_ifaces.begin(), sink_ifaces.end());

    std::vector<std::pair<int, std::vector<std::size_t>>> table;
    for (int iface : sink_ifaces) {
        std::vector<std::size_t> sources;
        for (std::size_t i = 0; i < s.sources.size(); ++i) {
            if (s.sources[i].has_interface(iface)) sources.push_back(i);
        }
        if (!sources.empty()) table.emplace_back(iface, std::move(sources));
    }
    return table;
}

} // namespace detail

// Visits every nonempty feasible assignment exactly once. Pairs arrive
// sorted; objective_value is left at zero for the caller to fill in.
inline void enumerate_assignments(const Scenario& s,
                                  const std::function<void(const Assignment&)>& visit) {
    if (!within_enumeration_guard(s)) {
        throw std::domain_error(
            "instance too large for exhaustive enumeration (limits: " +
            std::to_string(kMaxEnumSources) + " sources, " + std::to_string(kMaxEnumInterfaces) +
            " sink interfaces); use greedy_select");
    }
    const auto table = detail::candidate_table(s);
    std::vector<bool> used(s.sources.size(), false);
    std::vector<AssignmentPair> pairs;

    // Walk sink interfaces in index order; each is either skipped or matched
    // to one still-unused source, so no matching is produced twice.
    auto recurse = [&](auto&& self, std::size_t pos) -> void {
        if (pos == table.size()) {
            if (!pairs.empty()) {
                Assignment a{pairs, 0.0};
                std::sort(a.pairs.begin(), a.pairs.end());
                visit(a);
            }
            return;
        }
        self(self, pos + 1);  // leave this interface idle
        const auto& [iface, candidates] = table[pos];
        for (std::size_t src : candidates) {
            if (used[src]) continue;
            used[src] = true;
            pairs.push_back({s.sources[src].id, iface});
            self(self, pos + 1);
            pairs.pop_back();
            used[src] = false;
        }
    };
    recurse(recurse, 0);
}

inline std::vector<Assignment> all_assignments(const Scenario& s) {
    std::vector<Assignment> out;
    enumerate_assignments(s, [&](const Assignment& a) { out.push_back(a); });
    return out;
}

using ObjectiveIncrement = std::function<double(const Scenario&, const Assignment& current,
                                                const AssignmentPair& candidate)>;

inline double pair_rate_increment(const Scenario& s, const Assignment&,
                                  const AssignmentPair& candidate) {
    return pair_rate_kbps(s, candidate);
}

// Greedy fallback: repeatedly add the feasible pair with the largest marginal
// gain until no pair has positive gain or the matching constraints bind.
// Never fails; an infeasible instance yields the empty assignment.
inline Assignment greedy_select(const Scenario& s,
                                const ObjectiveIncrement& gain = pair_rate_increment) {
    Assignment current;
    std::vector<std::string> used_sources;
    std::vector<int> used_ifaces;
    const auto table = detail::candidate_table(s);

    for (;;) {
        bool found = false;
        double best_gain = 0.0;
        AssignmentPair best;
        for (const auto& [iface, candidates] : table) {
            if (std::find(used_ifaces.begin(), used_ifaces.end(), iface) != used_ifaces.end()) {
                continue;
            }
            for (std::size_t src : candidates) {
                const std::string& id = s.sources[src].id;
                if (std::find(used_sources.begin(), used_sources.end(), id) !=
                    used_sources.end()) {
                    continue;
                }
                const AssignmentPair p{id, iface};
                const double g = gain(s, current, p);
                if (!found || g > best_gain || (g == best_gain && p < best)) {
                    found = true;
                    best_gain = g;
                    best = p;
                }
            }
        }
        if (!found || !(best_gain > 0.0)) break;
        used_sources.push_back(best.source_id);
        used_ifaces.push_back(best.interface_index);
        current.pairs.push_back(best);
        current.objective_value += best_gain;
    }
    std::sort(current.pairs.begin(), current.pairs.end());
    return current;
}

// Maximizes the objective over all feasible assignments: exact via
// enumeration within the guard, greedy (with marginal gains derived from the
// objective) beyond it. Ties resolve to the lexicographically smallest pair
// set. Throws InfeasibleError when no source shares an interface with the
// sink.
inline Assignment select_sources(const Scenario& s,
                                 const Objective& objective = aggregate_rate_kbps) {
    if (detail::candidate_table(s).empty()) {
        throw InfeasibleError("no candidate source shares a data interface with the sink");
    }
    if (!within_enumeration_guard(s)) {
        auto increment = [&objective](const Scenario& sc, const Assignment& cur,
                                      const AssignmentPair& p) {
            Assignment next = cur;
            next.pairs.push_back(p);
            std::sort(next.pairs.begin(), next.pairs.end());
            return objective(sc, next) - objective(sc, cur);
        };
        Assignment a = greedy_select(s, increment);
        a.objective_value = objective(s, a);
        return a;
    }

    bool found = false;
    Assignment best;
    enumerate_assignments(s, [&](const Assignment& candidate) {
        Assignment scored = candidate;
        scored.objective_value = objective(s, scored);
        if (!found || scored.objective_value > best.objective_value ||
            (scored.objective_value == best.objective_value && lex_less(scored, best))) {
            best = std::move(scored);
            found = true;
        }
    });
    if (!found) {
        throw InfeasibleError("feasible assignment set is empty");
    }
    return best;
}

} // namespace ds2d
