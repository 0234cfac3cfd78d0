#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "fhshape/adaptation.hpp"
#include "test_helpers.hpp"

using namespace fhshape;
using test::iid_chain;
using test::reference_abf;
using test::reference_cell;

namespace {

LegalConfigSet reference_legal_set() {
    return LegalConfigSet{reference_cell(), {{132, 8}, {66, 8}, {132, 4}, {66, 4}, {33, 8}}};
}

AdaptationDecision cr_at(double capacity, const LegalConfigSet& set = reference_legal_set()) {
    return cr_decide(set, iid_chain(), reference_abf(), capacity, std::nullopt, 0.0, 0.0);
}

AdaptationDecision sbt_at(double capacity, bool extended = false) {
    return sbt_decide(reference_cell(), iid_chain(), reference_abf(), capacity, extended, 0.0);
}

} // namespace

TEST_CASE("cell reconfiguration picks the best fitting configuration") {
    // 20.4 Gbps: the full cell (23.28 Gbps) no longer fits; halving the
    // bandwidth does. (66,8) is preferred over the equal-access (132,4).
    AdaptationDecision d = cr_at(20.4e9);
    CHECK(d.active == ThrottleState{66, 8});
    CHECK(d.required_fh_bps == doctest::Approx(11927552000.0));
    CHECK(d.access_capacity_bps == doctest::Approx(3447747072.0));
    CHECK(!d.outage);
    CHECK(d.reconfigured);

    // ample capacity: full configuration
    d = cr_at(27.2e9);
    CHECK(d.active == ThrottleState{132, 8});
    CHECK(d.access_capacity_bps == doctest::Approx(6895494144.0));
    CHECK(!d.reconfigured);

    // below even the beamforming control rate: outage
    d = cr_at(0.1e9);
    CHECK(d.outage);
    CHECK(d.access_capacity_bps == 0.0);
    CHECK(d.active == ThrottleState{0, 0});
    CHECK(d.required_fh_bps > 0.1e9); // the unmet minimum
}

TEST_CASE("dwell holds upgrades back but never downgrades") {
    const LegalConfigSet set = reference_legal_set();
    const SplitChain chain = iid_chain();
    const BeamformerConfig bf = reference_abf();
    const double dwell = 300.0;

    // t=0: plenty of capacity
    AdaptationDecision d0 = cr_decide(set, chain, bf, 27.2e9, std::nullopt, dwell, 0.0);
    CHECK(d0.active == ThrottleState{132, 8});

    // t=10: capacity drops; downgrade happens immediately
    AdaptationDecision d1 = cr_decide(set, chain, bf, 20.4e9, d0, dwell, 10.0);
    CHECK(d1.active == ThrottleState{66, 8});
    CHECK(d1.reconfigured);

    // t=100: capacity recovers but the dwell clock is still running
    AdaptationDecision d2 = cr_decide(set, chain, bf, 27.2e9, d1, dwell, 100.0);
    CHECK(d2.active == ThrottleState{66, 8});
    CHECK(!d2.reconfigured);

    // t=310: dwell elapsed, upgrade allowed
    AdaptationDecision d3 = cr_decide(set, chain, bf, 27.2e9, d2, dwell, 310.0);
    CHECK(d3.active == ThrottleState{132, 8});
    CHECK(d3.reconfigured);
}

TEST_CASE("upgrades in any decision sequence are separated by the dwell time") {
    const LegalConfigSet set = reference_legal_set();
    const SplitChain chain = iid_chain();
    const BeamformerConfig bf = reference_abf();
    const double dwell = 120.0;

    // capacity flapping every 30 s between the three link levels
    const double levels[] = {27.2e9, 13.6e9, 20.4e9, 27.2e9};
    std::optional<AdaptationDecision> prev;
    double last_upgrade_t = -1e18;
    double prev_access = -1.0;
    for (int step = 0; step < 600; ++step) {
        const double t = step;
        const double capacity = levels[(step / 30) % 4];
        const AdaptationDecision d = cr_decide(set, chain, bf, capacity, prev, dwell, t);
        CHECK((d.outage || d.required_fh_bps <= capacity));
        if (prev && d.reconfigured && d.access_capacity_bps > prev_access) {
            CHECK(t - last_upgrade_t >= dwell);
            last_upgrade_t = t;
        } else if (!prev) {
            last_upgrade_t = t;
        }
        prev_access = d.access_capacity_bps;
        prev = d;
    }
}

TEST_CASE("scheduler throttling reproduces the reference working points") {
    AdaptationDecision d = sbt_at(27.2e9);
    CHECK(d.active == ThrottleState{132, 8});
    CHECK(d.access_capacity_bps == doctest::Approx(6895494144.0));
    CHECK(d.utilization() == doctest::Approx(1.0));

    d = sbt_at(20.4e9);
    CHECK(d.active == ThrottleState{115, 8});
    CHECK(d.required_fh_bps == doctest::Approx(20357120000.0));
    CHECK(d.access_capacity_bps == doctest::Approx(6007438080.0));
    CHECK(d.utilization() == doctest::Approx(115.0 / 132.0));

    d = sbt_at(13.6e9);
    CHECK(d.active == ThrottleState{75, 8});
    CHECK(d.required_fh_bps == doctest::Approx(13475840000.0));
    CHECK(d.access_capacity_bps == doctest::Approx(3917894400.0));

    // below the analog control rate nothing is sustainable
    d = sbt_at(0.0);
    CHECK(d.outage);
    CHECK(d.active == ThrottleState{0, 0});
}

TEST_CASE("analog control traffic does not shrink with throttling") {
    const AdaptationDecision d = sbt_at(20.4e9);
    // required = active_rb * per-RB radio rate + full analog control rate
    const double per_rb = 12.0 * 8.0 * 16.0 / reference_cell().t_s;
    CHECK(d.required_fh_bps ==
          doctest::Approx(115.0 * per_rb + 573440000.0).epsilon(1e-12));
}

TEST_CASE("digital control traffic scales with the active share") {
    CellConfig cell = reference_cell();
    BeamformerConfig dbf;
    dbf.kind = BeamformerKind::Digital;
    dbf.n_fe = 132;
    dbf.n_rfc = 64;
    dbf.b_w = 32;
    const double full_total = total_fh_rate(cell, iid_chain(), dbf).total_bps;

    // at half capacity the whole requirement scales, so about half the
    // grid stays active
    const AdaptationDecision d = sbt_decide(cell, iid_chain(), dbf, full_total / 2.0, false, 0.0);
    CHECK(d.active.active_rb == 66);
    CHECK(d.required_fh_bps <= full_total / 2.0);

    // and a digital-only cell can throttle all the way to zero traffic
    const AdaptationDecision idle = sbt_decide(cell, iid_chain(), dbf, 0.0, false, 0.0);
    CHECK(idle.required_fh_bps == 0.0);
    CHECK(idle.outage); // zero active resources carry no access traffic
}

TEST_CASE("sbt_decide matches the exhaustive oracle over a capacity sweep") {
    const CellConfig cell = reference_cell();
    const SplitChain chain = iid_chain();
    const BeamformerConfig bf = reference_abf();
    for (double capacity = 0.0; capacity <= 30e9; capacity += 0.1e9) {
        const AdaptationDecision d = sbt_decide(cell, chain, bf, capacity, false, 0.0);
        const auto oracle = sbt_oracle(cell, chain, bf, capacity, false);
        if (!oracle) {
            CHECK(d.outage);
            CHECK(d.active == ThrottleState{0, 0});
        } else {
            CHECK(d.active == *oracle);
        }
    }
}

TEST_CASE("extended mode matches the oracle and exploits layer granularity") {
    const CellConfig cell = reference_cell();
    const SplitChain chain = iid_chain();
    const BeamformerConfig bf = reference_abf();

    const auto at_204 = sbt_oracle(cell, chain, bf, 20.4e9, true);
    REQUIRE(at_204.has_value());
    CHECK(*at_204 == ThrottleState{115, 8}); // 920 active units beats any other pair

    for (double capacity = 0.0; capacity <= 30e9; capacity += 0.25e9) {
        const AdaptationDecision d = sbt_decide(cell, chain, bf, capacity, true, 0.0);
        const auto oracle = sbt_oracle(cell, chain, bf, capacity, true);
        if (!oracle) {
            CHECK(d.outage);
        } else {
            CHECK(d.active == *oracle);
        }
    }
}

TEST_CASE("sbt active_rb is monotone in capacity and steps by one RB of traffic") {
    const double per_rb = 12.0 * 8.0 * 16.0 / reference_cell().t_s;
    int prev_rb = -1;
    std::set<long long> required_levels;
    for (double capacity = 0.5e9; capacity <= 30e9; capacity += 0.05e9) {
        const AdaptationDecision d = sbt_at(capacity);
        if (d.required_fh_bps > capacity) continue; // pre-control outage
        CHECK(d.active.active_rb >= prev_rb);
        prev_rb = d.active.active_rb;
        required_levels.insert(std::llround(d.required_fh_bps));
    }
    // consecutive distinct required rates differ by exactly one RB of traffic
    long long prev = -1;
    for (long long level : required_levels) {
        if (prev >= 0) {
            CHECK(static_cast<double>(level - prev) == doctest::Approx(per_rb).epsilon(1e-9));
        }
        prev = level;
    }
}

TEST_CASE("sbt dominates cell reconfiguration whenever CR states are reachable") {
    const LegalConfigSet full_layer_set{reference_cell(), {{132, 8}, {66, 8}, {33, 8}}};
    for (double capacity = 0.0; capacity <= 30e9; capacity += 0.1e9) {
        const AdaptationDecision cr = cr_at(capacity, full_layer_set);
        const AdaptationDecision sbt = sbt_at(capacity);
        CHECK(sbt.access_capacity_bps >= cr.access_capacity_bps);
        CHECK((cr.outage || cr.required_fh_bps <= capacity));
        CHECK((sbt.outage || sbt.required_fh_bps <= capacity));
    }
}

TEST_CASE("legal set validation") {
    LegalConfigSet ok = reference_legal_set();
    CHECK_NOTHROW(ok.validate());

    LegalConfigSet empty{reference_cell(), {}};
    CHECK_THROWS_AS(empty.validate(), ConfigError);

    // (132, 8) is the dominating configuration but is missing
    LegalConfigSet no_full{reference_cell(), {{66, 8}, {132, 4}}};
    CHECK_THROWS_AS(no_full.validate(), ConfigError);
}

TEST_CASE("baseline strategy is all-or-nothing") {
    const CellConfig cell = reference_cell();
    AdaptationDecision d = none_decide(cell, iid_chain(), reference_abf(), 23.3e9, 0.0);
    CHECK(!d.outage);
    CHECK(d.utilization() == 1.0);
    CHECK(d.required_fh_bps == doctest::Approx(23281664000.0));

    d = none_decide(cell, iid_chain(), reference_abf(), 20.4e9, 0.0);
    CHECK(d.outage);
    CHECK(d.access_capacity_bps == 0.0);
    CHECK(d.required_fh_bps == doctest::Approx(23281664000.0)); // still demands the full rate
}
