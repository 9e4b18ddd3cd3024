#include <catch2/catch_amalgamated.hpp>

#include "ds2d/session.hpp"
#include "helpers.hpp"

using namespace ds2d;

namespace {

SplitPlan tiny_plan(std::uint64_t packets = 3) {
    FileSpec file;
    file.packet_count = packets;
    return single_link_plan(Link{"D1", 1, 213.3}, file);
}

Assignment tiny_assignment() { return Assignment{{{"D1", 1}}, 213.3}; }

SessionState reach_transferring(std::uint64_t packets = 3) {
    SessionState st;
    st = advance_session(st, SessionEvent::start_discovery());
    st = advance_session(st, SessionEvent::candidates_found());
    st = advance_session(st, SessionEvent::assignment_chosen(tiny_assignment()));
    st = advance_session(st, SessionEvent::plan_distributed(tiny_plan(packets)));
    return st;
}

} // namespace

TEST_CASE("happy path walks the full lifecycle") {
    SessionState st;
    CHECK(st.phase == SessionPhase::idle);

    st = advance_session(st, SessionEvent::start_discovery());
    CHECK(st.phase == SessionPhase::discovery);

    st = advance_session(st, SessionEvent::candidates_found());
    CHECK(st.phase == SessionPhase::selection);

    st = advance_session(st, SessionEvent::assignment_chosen(tiny_assignment()));
    CHECK(st.phase == SessionPhase::split_assignment);
    CHECK(st.assignment.has_value());
    CHECK_FALSE(st.plan.has_value());

    st = advance_session(st, SessionEvent::plan_distributed(tiny_plan(3)));
    CHECK(st.phase == SessionPhase::transferring);
    CHECK(st.expected_packets == 3);

    for (int i = 0; i < 3; ++i) st = advance_session(st, SessionEvent::packet_received());
    CHECK(st.phase == SessionPhase::aggregating);
    CHECK(st.received_packets == 3);

    st = advance_session(st, SessionEvent::file_reconstructed());
    CHECK(st.phase == SessionPhase::complete);
    CHECK(st.terminal());
}

TEST_CASE("packets during discovery are a protocol error naming both sides") {
    SessionState st;
    st = advance_session(st, SessionEvent::start_discovery());
    try {
        advance_session(st, SessionEvent::packet_received());
        FAIL("expected ProtocolError");
    } catch (const ProtocolError& e) {
        CHECK(e.phase() == SessionPhase::discovery);
        CHECK(e.event() == SessionEventKind::packet_received);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("discovery"));
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("packet_received"));
    }
}

TEST_CASE("abort is reachable from every non-terminal phase only") {
    SessionState st;
    for (int hops = 0; hops <= 4; ++hops) {
        SessionState cur;
        const SessionEvent path[] = {
            SessionEvent::start_discovery(),
            SessionEvent::candidates_found(),
            SessionEvent::assignment_chosen(tiny_assignment()),
            SessionEvent::plan_distributed(tiny_plan()),
        };
        for (int i = 0; i < hops; ++i) cur = advance_session(cur, path[i]);
        const SessionState aborted = advance_session(cur, SessionEvent::abort());
        CHECK(aborted.phase == SessionPhase::aborted);
        CHECK_THROWS_AS(advance_session(aborted, SessionEvent::abort()), ProtocolError);
    }

    SessionState done = reach_transferring(1);
    done = advance_session(done, SessionEvent::packet_received());
    done = advance_session(done, SessionEvent::file_reconstructed());
    CHECK_THROWS_AS(advance_session(done, SessionEvent::abort()), ProtocolError);
}

TEST_CASE("no packet fits after the expected count") {
    SessionState st = reach_transferring(2);
    st = advance_session(st, SessionEvent::packet_received());
    st = advance_session(st, SessionEvent::packet_received());
    CHECK(st.phase == SessionPhase::aggregating);
    CHECK_THROWS_AS(advance_session(st, SessionEvent::packet_received()), ProtocolError);
}

TEST_CASE("reconstruction needs the aggregation phase") {
    SessionState st = reach_transferring(2);
    st = advance_session(st, SessionEvent::packet_received());
    CHECK_THROWS_AS(advance_session(st, SessionEvent::file_reconstructed()), ProtocolError);
}

TEST_CASE("events may come from either set-up without changing transitions") {
    SessionEvent ev = SessionEvent::start_discovery();
    ev.origin = EventOrigin::device_autonomous;
    SessionState st;
    st = advance_session(st, ev);
    CHECK(st.phase == SessionPhase::discovery);
}

TEST_CASE("skipping phases is rejected") {
    SessionState st;
    CHECK_THROWS_AS(advance_session(st, SessionEvent::candidates_found()), ProtocolError);
    CHECK_THROWS_AS(advance_session(st, SessionEvent::plan_distributed(tiny_plan())),
                    ProtocolError);
    st = advance_session(st, SessionEvent::start_discovery());
    CHECK_THROWS_AS(advance_session(st, SessionEvent::assignment_chosen(tiny_assignment())),
                    ProtocolError);
}

TEST_CASE("no event sequence completes with missing packets", "[property]") {
    Rng rng(321);
    const std::uint64_t packets = 4;
    for (int run = 0; run < 500; ++run) {
        SessionState st;
        for (int step = 0; step < 40; ++step) {
            SessionEvent ev = SessionEvent::start_discovery();
            switch (rng.next_u64() % 7) {
                case 0: ev = SessionEvent::start_discovery(); break;
                case 1: ev = SessionEvent::candidates_found(); break;
                case 2: ev = SessionEvent::assignment_chosen(tiny_assignment()); break;
                case 3: ev = SessionEvent::plan_distributed(tiny_plan(packets)); break;
                case 4: ev = SessionEvent::packet_received(); break;
                case 5: ev = SessionEvent::file_reconstructed(); break;
                case 6: ev = SessionEvent::abort(); break;
            }
            try {
                st = advance_session(st, ev);
            } catch (const ProtocolError&) {
                // rejected events must leave the state untouched
            }
            REQUIRE(st.received_packets <= packets);
            if (st.phase == SessionPhase::complete) {
                REQUIRE(st.received_packets == packets);
            }
        }
    }
}
