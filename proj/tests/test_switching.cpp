#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "rcts/cts.hpp"
#include "rcts/error.hpp"
#include "rcts/switching.hpp"

using namespace rcts;
using namespace rcts::testing;

namespace {

ChannelSet set_of(std::initializer_list<int> ids) {
    ChannelSet s;
    for (int id : ids) {
        s.insert(Channel{id});
    }
    return s;
}

// Drives the composed system along uniquely-determined channel steps.
GlobalConfig drive(const ComposedCts& composed, GlobalConfig cfg, const Word& channels) {
    for (Channel c : channels) {
        const auto next = composed.channel_successors(cfg, c);
        REQUIRE(next.size() == 1);
        cfg = next[0].second;
    }
    return cfg;
}

} // namespace

TEST_CASE("cyclic successor and predecessor invert each other") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const ChannelSet D = ChannelSet::of_raw(rng() % 64 + 1); // nonempty over 6 ids
        for (Channel d : D) {
            CHECK(next_cyclic(D, d) == oracle_next_cyclic(D, d));
            CHECK(prev_cyclic(D, next_cyclic(D, d)) == d);
            CHECK(next_cyclic(D, prev_cyclic(D, d)) == d);
        }
    }
    CHECK(next_cyclic(set_of({1, 3}), Channel{2}) == Channel{2}); // identity off the set
    CHECK_THROWS_AS(prev_cyclic(set_of({1, 3}), Channel{2}), InputError);
    CHECK_THROWS_AS(prev_cyclic(ChannelSet{}, Channel{0}), InputError);
}

TEST_CASE("the subset walk goes by size, then lexicographically") {
    const SubsetOrder order = size_lex_order(set_of({0, 1, 2}), Channel{3});
    const std::vector<ChannelSet> expected = {
        set_of({}),     set_of({0}),    set_of({1}),    set_of({2}),
        set_of({0, 1}), set_of({0, 2}), set_of({1, 2}), set_of({0, 1, 2}),
    };
    REQUIRE(order.subsets == expected);
    for (std::size_t i = 0; i + 1 < expected.size(); ++i) {
        CHECK(order.inc(expected[i]) == expected[i + 1]);
    }
    CHECK(!order.inc(expected.back()).has_value());
    CHECK_THROWS_AS(order.inc(set_of({3})), InputError);
}

TEST_CASE("subset orders are validated on construction") {
    const ChannelSet allowed = set_of({0, 1});
    CHECK_THROWS_AS(make_subset_order(allowed, Channel{2}, {set_of({}), set_of({0})}),
                    InputError);
    CHECK_THROWS_AS(make_subset_order(allowed, Channel{2},
                                      {set_of({0}), set_of({}), set_of({1}), set_of({0, 1})}),
                    InputError);
    CHECK_THROWS_AS(make_subset_order(allowed, Channel{0},
                                      {set_of({}), set_of({0}), set_of({1}), set_of({0, 1})}),
                    InputError);
    CHECK_NOTHROW(make_subset_order(allowed, Channel{2},
                                    {set_of({}), set_of({1}), set_of({0}), set_of({0, 1})}));
}

TEST_CASE("the single-switching family has the expected shape") {
    const std::map<int, int> expected_states = {{1, 10}, {2, 60}, {3, 272}};
    for (const auto& [n, count] : expected_states) {
        const SingleSwitchSystem sys = gen_single(n);
        CHECK(sys.n == n);
        CHECK(sys.system.process_count() == n);
        CHECK(sys.system.universe().channel_count() == n + 1);
        CHECK(static_cast<int>(sys.states.size()) == count);
        for (int p = 0; p < n; ++p) {
            const Cts& comp = sys.system.component(ProcessId{p});
            CHECK(comp.state_count() == count);
            const SwitchState start = sys.decode(comp.initial());
            CHECK(start == SwitchState{Channel{p}, Channel{n}, ChannelSet{}, Channel{p}});
        }
    }
    CHECK_THROWS_AS(gen_single(0), InputError);
}

TEST_CASE("state names decode back to the states they were printed from") {
    const SingleSwitchSystem sys = gen_single(2);
    const Universe& u = sys.system.universe();
    for (const SwitchState& s : sys.states) {
        const auto parsed = parse_switch_state_name(u, switch_state_name(u, s));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == s);
    }
    CHECK(!parse_switch_state_name(u, "(c=1,sc=3,D={)").has_value());
    CHECK(!parse_switch_state_name(u, "nonsense").has_value());
}

TEST_CASE("reinterpreting a generated system recovers the construction") {
    const SingleSwitchSystem original = gen_single(2);
    const SingleSwitchSystem recovered = single_system_from_cts(original.system);
    CHECK(recovered.n == original.n);
    CHECK(recovered.states == original.states);
    for (const SwitchState& s : original.states) {
        CHECK(recovered.state_index(s) == original.state_index(s));
    }
    const DoubleSwitchSystem original2 = gen_double(2);
    const DoubleSwitchSystem recovered2 = double_system_from_cts(original2.system);
    CHECK(recovered2.n == original2.n);
    CHECK(recovered2.states == original2.states);
    // A system that is not the construction is rejected.
    Rng rng(42);
    CHECK_THROWS_AS(single_system_from_cts(random_cts_system(rng)), InputError);
}

TEST_CASE("exactly the free channels and the head of the dependence set are enabled") {
    for (int n = 1; n <= 2; ++n) {
        const SingleSwitchSystem sys = gen_single(n);
        const ComposedCts composed(sys.system);
        const ReachGraph g = composed.explore();
        const ChannelSet all = ChannelSet::first(n + 1);
        for (const GlobalConfig& cfg : g.configs) {
            const SingleView view = single_shared_view(sys, cfg);
            const ChannelSet enabled = composed.enabled_channels(cfg);
            const ChannelSet in_d = enabled & view.dependent;
            CHECK(in_d.size() == (view.dependent.empty() ? 0 : 1));
            const ChannelSet free = all.minus(view.dependent).minus(set_of({view.sc.v}));
            CHECK(enabled == (free | set_of({view.sc.v}) | in_d));
        }
    }
}

TEST_CASE("dependent channels fire in ascending cyclic order") {
    const SingleSwitchSystem sys = gen_single(2);
    const ComposedCts composed(sys.system);
    const ReachGraph g = composed.explore();
    for (const GlobalConfig& cfg : g.configs) {
        const SingleView view = single_shared_view(sys, cfg);
        const ChannelSet heads = composed.enabled_channels(cfg) & view.dependent;
        if (heads.empty()) {
            continue;
        }
        const Channel head = heads.min();
        // After the head fires, the next dependent channel in cyclic order
        // becomes the new head (sc-communications change D instead).
        const auto next = composed.channel_successors(cfg, head);
        REQUIRE(next.size() == 1);
        const SingleView after = single_shared_view(sys, next[0].second);
        if (after.dependent == view.dependent) {
            const ChannelSet new_heads =
                composed.enabled_channels(next[0].second) & after.dependent;
            REQUIRE(new_heads.size() == 1);
            CHECK(new_heads.min() == next_cyclic(view.dependent, head));
        }
    }
}

TEST_CASE("the switching schedule walks the subsets and rotates the channel") {
    const SingleSwitchSystem sys = gen_single(2);
    const std::vector<SingleView> schedule = switching_schedule(sys, 13);
    const std::vector<SingleView> expected = {
        {Channel{2}, set_of({})},     {Channel{2}, set_of({0})},
        {Channel{2}, set_of({1})},    {Channel{2}, set_of({0, 1})},
        {Channel{0}, set_of({})},     {Channel{0}, set_of({1})},
        {Channel{0}, set_of({2})},    {Channel{0}, set_of({1, 2})},
        {Channel{1}, set_of({})},     {Channel{1}, set_of({0})},
        {Channel{1}, set_of({2})},    {Channel{1}, set_of({0, 2})},
        {Channel{2}, set_of({})},     {Channel{2}, set_of({0})},
    };
    CHECK(schedule == expected);
}

TEST_CASE("two-switching states respect the role constraints") {
    const DoubleSwitchSystem sys = gen_double(2);
    CHECK(sys.system.universe().channel_count() == 4);
    for (const TwoSwitchState& s : sys.states) {
        CHECK(s.tg != s.hl);
        CHECK(s.h != s.tg);
        CHECK(s.h != s.hl);
    }
    const Universe& u = sys.system.universe();
    for (const TwoSwitchState& s : sys.states) {
        const auto parsed = parse_two_switch_state_name(u, two_switch_state_name(u, s));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == s);
    }
}

TEST_CASE("role rotation can hand a process's own channel a switching role") {
    const DoubleSwitchSystem sys = gen_double(3);
    const std::vector<RoleCollision> collisions = role_collisions(sys);
    CHECK(collisions.size() == 1185);
    // First hit: three highlighter communications trigger the rotation.
    REQUIRE(!collisions.empty());
    CHECK(collisions.front().access == Word(3, Channel{4}));

    // Independent recount: walk the reachable product and decode the state
    // names instead of trusting the collision scanner.
    const ComposedCts composed(sys.system);
    const ReachGraph g = composed.explore();
    std::size_t recount = 0;
    for (const GlobalConfig& cfg : g.configs) {
        for (int p = 0; p < sys.system.process_count(); ++p) {
            const std::string& name = sys.system.component(ProcessId{p}).state_name(cfg[p]);
            const auto s = parse_two_switch_state_name(sys.system.universe(), name);
            REQUIRE(s.has_value());
            if (s->c == s->tg || s->c == s->hl) {
                ++recount;
            }
        }
    }
    CHECK(recount == collisions.size());

    // Both rotation policies collide on the reachable orbit.
    CHECK(role_collisions(gen_double(3, CyclePolicy::Disjoint)).size() == 1185);

    // Each reported collision replays to a genuinely colliding state. The
    // access word can pass through states where an own channel doubles as a
    // switching role, so the replay is existential over the branching runs.
    for (std::size_t i = 0; i < collisions.size(); i += 97) {
        const RoleCollision& rc = collisions[i];
        const RunResultCts replay = run_channel_word(composed, rc.access);
        REQUIRE(replay.ok());
        CHECK(std::find(replay.configs.begin(), replay.configs.end(), rc.config) !=
              replay.configs.end());
        const TwoSwitchState s = sys.decode(rc.config[rc.process.v]);
        CHECK(s == rc.state);
        CHECK((s.c == s.tg || s.c == s.hl));
    }
}

TEST_CASE("any dependence set is reachable with few toggles and highlights") {
    const DoubleSwitchSystem sys = gen_double(2);
    const ComposedCts composed(sys.system);
    const GlobalConfig start = composed.initial();
    const TwoSwitchState init = sys.decode(start[0]);
    const ChannelSet cycle = ChannelSet::first(4).minus(set_of({init.tg.v, init.hl.v}));

    // Walk h over the cycle, toggling exactly the wanted members in.
    for (std::uint64_t raw = 0; raw < (1u << cycle.size()); ++raw) {
        ChannelSet target;
        int bit = 0;
        for (Channel c : cycle) {
            if ((raw >> bit++) & 1) {
                target.insert(c);
            }
        }
        Word plan;
        int toggles = 0;
        int highlights = 0;
        Channel h = init.h;
        while (true) {
            if (target.contains(h)) {
                plan.push_back(init.tg);
                ++toggles;
            }
            if (h == cycle.max()) {
                break; // one more highlight would rotate the roles
            }
            plan.push_back(init.hl);
            ++highlights;
            h = next_cyclic(cycle, h);
        }
        CHECK(toggles == target.size());
        CHECK(highlights <= cycle.size());
        const GlobalConfig cfg = drive(composed, start, plan);
        for (int p = 0; p < sys.system.process_count(); ++p) {
            CHECK(sys.decode(cfg[p]).dependent == target);
        }
    }
}
