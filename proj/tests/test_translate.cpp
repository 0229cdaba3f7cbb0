#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"
#include "rcts/analysis.hpp"
#include "rcts/error.hpp"
#include "rcts/switching.hpp"
#include "rcts/translate.hpp"

using namespace rcts;
using namespace rcts::testing;

namespace {

// Letter words and channel words coincide under the translations because the
// channel vocabulary is exactly the letter vocabulary.
bool same_language(const WordSet& a, const WordSet& b) {
    return a == b;
}

} // namespace

TEST_CASE("joint rewrites survive the trip into channels and back through composition") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const GlobalAA aa = random_global_aa(rng);
        const CtsSystem sys = aa_to_cts(aa);
        REQUIRE(sys.process_count() == aa.alphabet().process_count());
        REQUIRE(sys.universe().channel_count() == aa.alphabet().letter_count());
        const ComposedCts composed(sys);
        CHECK(same_language(language_upto(aa, 5), composed.language_upto(5)));
    }
}

TEST_CASE("local step machines translate the same way") {
    Rng rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        const LocalAA laa = random_local_aa(rng);
        const ComposedCts composed(laa_to_cts(laa));
        CHECK(same_language(language_upto(laa, 5), composed.language_upto(5)));
    }
}

TEST_CASE("translating local machines forth and back preserves the language") {
    Rng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        const LocalAA laa = random_local_aa(rng);
        const CtsSystem sys = laa_to_cts(laa);
        const LocalAA round = cts_to_laa(sys);
        CHECK(same_language(language_upto(laa, 5), language_upto(round, 5)));
    }
}

TEST_CASE("deterministic systems translate into language-equal automata") {
    Rng rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        const CtsSystem sys = random_cts_system(rng);
        const ComposedCts composed(sys);
        const GlobalAA aa = cts_to_aa(sys);
        CHECK(equiv_upto(MachineRef(aa), MachineRef(composed), 5).equal);
    }
}

TEST_CASE("the full-domain translation makes every process listen to everything") {
    Rng rng(35);
    const CtsSystem sys = random_cts_system(rng);
    const GlobalAA aa = cts_to_aa(sys);
    for (int p = 0; p < aa.alphabet().process_count(); ++p) {
        CHECK(aa.alphabet().dom_inv(ProcessId{p}) == aa.alphabet().all_letters());
    }
}

TEST_CASE("singleton-content systems round-trip through local machines") {
    // The local machine lets non-listeners stutter, while the composition
    // blocks a channel nobody listens to. The two agree exactly on systems
    // where every channel keeps a listener in every configuration, so the
    // generator pins one always-listening component per channel here.
    Rng rng(36);
    for (int trial = 0; trial < 40; ++trial) {
        const CtsSystem sys = random_cts_system(rng, 3, 3, 4, true);
        const LocalAA laa = cts_to_laa(sys);
        CHECK(equiv_upto(MachineRef(laa), MachineRef(ComposedCts(sys)), 5).equal);
    }
}

TEST_CASE("cts_to_laa needs a lone message content") {
    const Universe u{{"m"}, {"x", "y"}};
    std::vector<ChannelSet> listen(1);
    listen[0].insert(Channel{0});
    const Cts c(u, {"s"}, 0, listen, {{0, 0, Channel{0}, 0}});
    CHECK_THROWS_AS(cts_to_laa(CtsSystem({"p1"}, {c})), InputError);
}

TEST_CASE("nondeterministic channels are rejected or resolved per policy") {
    // Two moves on the same channel and content from the initial state.
    const Universe u{{"m"}, {"t"}};
    std::vector<ChannelSet> listen(2);
    listen[0].insert(Channel{0});
    listen[1].insert(Channel{0});
    const Cts c(u, {"s1", "s2"}, 0, listen,
                {{0, 0, Channel{0}, 0}, {0, 0, Channel{0}, 1}});
    const CtsSystem sys({"p1"}, {c});
    CHECK_THROWS_AS(cts_to_aa(sys, NondetPolicy::Reject), InputError);
    const GlobalAA resolved = cts_to_aa(sys, NondetPolicy::LexSmallest);
    // The lexicographically least option keeps s1.
    const RunResult r = run_word(resolved, {Channel{0}, Channel{0}});
    CHECK(r.ok());
    CHECK(r.config == GlobalConfig{0});
}

TEST_CASE("executor translation tracks the composition in one process") {
    const SingleSwitchSystem fix = gen_single(2);
    const ComposedCts composed(fix.system);
    ExecutorChoice choice;
    choice.executor = ProcessId{0};
    choice.listen_sets.assign(2, ChannelSet{});
    const GlobalAA aa = cts_to_aa_executor(fix.system, choice);

    CHECK(equiv_upto(MachineRef(aa), MachineRef(composed), 5).equal);
    // The executor's state space is the reachable composed graph.
    const ReachGraph g = composed.explore();
    CHECK(aa.local_state_count(ProcessId{0}) == static_cast<int>(g.configs.size()));
    CHECK(aa.local_state_count(ProcessId{1}) == 1);
    // Nobody opted in, so only the executor owns any letter.
    for (int a = 0; a < aa.alphabet().letter_count(); ++a) {
        CHECK(aa.alphabet().dom(Letter{a}) == ProcessSet::of_raw(0b01));
    }
}

TEST_CASE("opted-in processes join the domains of their channels") {
    const SingleSwitchSystem fix = gen_single(2);
    ExecutorChoice choice;
    choice.executor = ProcessId{1};
    choice.listen_sets.assign(2, ChannelSet{});
    choice.listen_sets[0].insert(Channel{2});
    const GlobalAA aa = cts_to_aa_executor(fix.system, choice);
    const auto c3 = aa.alphabet().find_letter("3");
    REQUIRE(c3.has_value());
    CHECK(aa.alphabet().dom(*c3).contains(ProcessId{0}));
    CHECK(aa.alphabet().dom_inv(ProcessId{0}) == LetterSet::of_raw(0b100));
    CHECK(equiv_upto(MachineRef(aa), MachineRef(ComposedCts(fix.system)), 5).equal);
}

TEST_CASE("executor translation matches plain translation on random systems") {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const CtsSystem sys = random_cts_system(rng);
        ExecutorChoice choice;
        choice.executor = ProcessId{rand_int(rng, 0, sys.process_count() - 1)};
        choice.listen_sets.assign(sys.process_count(), ChannelSet{});
        const GlobalAA via_executor = cts_to_aa_executor(sys, choice);
        const GlobalAA direct = cts_to_aa(sys);
        CHECK(equiv_upto(MachineRef(via_executor), MachineRef(direct), 5).equal);
    }
}

TEST_CASE("executor choice is validated") {
    const SingleSwitchSystem fix = gen_single(2);
    ExecutorChoice bad;
    bad.executor = ProcessId{5};
    bad.listen_sets.assign(2, ChannelSet{});
    CHECK_THROWS_AS(cts_to_aa_executor(fix.system, bad), InputError);
}
