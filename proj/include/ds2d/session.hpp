#pragma once

// Abstract transfer-session lifecycle, independent of any signaling stack:
//
//   idle -> discovery -> selection -> split_assignment -> transferring
//        -> aggregating -> complete
//
// with abort reachable from every non-terminal phase. In a centralized
// set-up the network emits the events, in a decentralized one the devices
// do; only the event provenance flag differs, the machine is the same.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ds2d/selection.hpp"
#include "ds2d/split.hpp"

namespace ds2d {

enum class SessionPhase {
    idle,
    discovery,
    selection,
    split_assignment,
    transferring,
    aggregating,
    complete,
    aborted,
};

inline constexpr std::string_view phase_name(SessionPhase p) {
    switch (p) {
        case SessionPhase::idle: return "idle";
        case SessionPhase::discovery: return "discovery";
        case SessionPhase::selection: return "selection";
        case SessionPhase::split_assignment: return "split_assignment";
        case SessionPhase::transferring: return "transferring";
        case SessionPhase::aggregating: return "aggregating";
        case SessionPhase::complete: return "complete";
        case SessionPhase::aborted: return "aborted";
    }
    return "unknown";
}

enum class SessionEventKind {
    start_discovery,
    candidates_found,
    assignment_chosen,
    plan_distributed,
    packet_received,
    file_reconstructed,
    abort,
};

inline constexpr std::string_view event_name(SessionEventKind k) {
    switch (k) {
        case SessionEventKind::start_discovery: return "start_discovery";
        case SessionEventKind::candidates_found: return "candidates_found";
        case SessionEventKind::assignment_chosen: return "assignment_chosen";
        case SessionEventKind::plan_distributed: return "plan_distributed";
        case SessionEventKind::packet_received: return "packet_received";
        case SessionEventKind::file_reconstructed: return "file_reconstructed";
        case SessionEventKind::abort: return "abort";
    }
    return "unknown";
}

// Who emitted the event: the cellular network (centralized set-up) or the
// devices themselves (decentralized set-up).
enum class EventOrigin { network_coordinated, device_autonomous };

struct SessionEvent {
    SessionEventKind kind;
    EventOrigin origin = EventOrigin::network_coordinated;
    std::optional<Assignment> assignment;  // assignment_chosen only
    std::optional<SplitPlan> plan;         // plan_distributed only

    static SessionEvent start_discovery() { return {SessionEventKind::start_discovery}; }
    static SessionEvent candidates_found() { return {SessionEventKind::candidates_found}; }
    static SessionEvent assignment_chosen(Assignment a) {
        return {SessionEventKind::assignment_chosen, EventOrigin::network_coordinated,
                std::move(a), std::nullopt};
    }
    static SessionEvent plan_distributed(SplitPlan p) {
        return {SessionEventKind::plan_distributed, EventOrigin::network_coordinated, std::nullopt,
                std::move(p)};
    }
    static SessionEvent packet_received() { return {SessionEventKind::packet_received}; }
    static SessionEvent file_reconstructed() { return {SessionEventKind::file_reconstructed}; }
    static SessionEvent abort() { return {SessionEventKind::abort}; }
};

struct SessionState {
    SessionPhase phase = SessionPhase::idle;
    std::optional<Assignment> assignment;
    std::optional<SplitPlan> plan;
    std::uint64_t received_packets = 0;
    std::uint64_t expected_packets = 0;

    bool terminal() const {
        return phase == SessionPhase::complete || phase == SessionPhase::aborted;
    }
};

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(SessionPhase phase, SessionEventKind event)
        : std::runtime_error("event " + std::string(event_name(event)) +
                             " not applicable in phase " + std::string(phase_name(phase))),
          phase_(phase),
          event_(event) {}

    SessionPhase phase() const { return phase_; }
    SessionEventKind event() const { return event_; }

private:
    SessionPhase phase_;
    SessionEventKind event_;
};

// Applies one lifecycle event. Illegal (phase, event) combinations throw;
// the passed state is never half-updated since it is taken by value.
inline SessionState advance_session(SessionState state, const SessionEvent& ev) {
    const auto reject = [&]() -> SessionState { throw ProtocolError(state.phase, ev.kind); };

    switch (ev.kind) {
        case SessionEventKind::start_discovery:
            if (state.phase != SessionPhase::idle) return reject();
            state.phase = SessionPhase::discovery;
            return state;

        case SessionEventKind::candidates_found:
            if (state.phase != SessionPhase::discovery) return reject();
            state.phase = SessionPhase::selection;
            return state;

        case SessionEventKind::assignment_chosen:
            if (state.phase != SessionPhase::selection || !ev.assignment) return reject();
            state.assignment = ev.assignment;
            state.phase = SessionPhase::split_assignment;
            return state;

        case SessionEventKind::plan_distributed:
            if (state.phase != SessionPhase::split_assignment || !ev.plan) return reject();
            state.plan = ev.plan;
            state.expected_packets = ev.plan->total_packets();
            state.phase = SessionPhase::transferring;
            return state;

        case SessionEventKind::packet_received:
            if (state.phase != SessionPhase::transferring ||
                state.received_packets >= state.expected_packets) {
                return reject();
            }
            state.received_packets += 1;
            if (state.received_packets == state.expected_packets) {
                state.phase = SessionPhase::aggregating;
            }
            return state;

        case SessionEventKind::file_reconstructed:
            if (state.phase != SessionPhase::aggregating ||
                state.received_packets != state.expected_packets) {
                return reject();
            }
            state.phase = SessionPhase::complete;
            return state;

        case SessionEventKind::abort:
            if (state.terminal()) return reject();
            state.phase = SessionPhase::aborted;
            return state;
    }
    return reject();
}

} // namespace ds2d
