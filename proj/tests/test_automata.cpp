#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "rcts/automata.hpp"
#include "rcts/error.hpp"

using namespace rcts;
using namespace rcts::testing;

namespace {

DistributedAlphabet fixture_alphabet() {
    return DistributedAlphabet({"a", "b", "c", "d"}, {"p1", "p2", "p3"},
                               {ProcessSet::of_raw(0b011), ProcessSet::of_raw(0b110),
                                ProcessSet::of_raw(0b100), ProcessSet::of_raw(0b001)});
}

// a swings p1 between x1/x2 while flipping p2; c cycles p3; d resets p1.
// b stays undefined everywhere, so it simply never fires.
GlobalAA fixture_global() {
    const DistributedAlphabet alpha = fixture_alphabet();
    std::vector<GlobalAA::DeltaMap> delta(4);
    delta[0][{0, 0}] = {1, 1};
    delta[0][{1, 1}] = {0, 0};
    delta[2][{0}] = {1};
    delta[2][{1}] = {0};
    delta[3][{1}] = {0};
    return GlobalAA(alpha, {{"x1", "x2"}, {"y1", "y2"}, {"z1", "z2"}}, {0, 0, 0},
                    std::move(delta));
}

Word word_of(std::initializer_list<int> ids) {
    Word w;
    for (int id : ids) {
        w.push_back(Letter{id});
    }
    return w;
}

} // namespace

TEST_CASE("joint rewrites step exactly the participants") {
    const GlobalAA aa = fixture_global();
    const auto after_a = aa_step(aa, {0, 0, 0}, Letter{0});
    REQUIRE(after_a.has_value());
    CHECK(*after_a == GlobalConfig{1, 1, 0});
    CHECK(!aa_step(aa, {0, 0, 0}, Letter{1}).has_value());
    CHECK(!aa_step(aa, {1, 0, 0}, Letter{0}).has_value()); // no row for (x2, y1)
    CHECK(aa.config_name({0, 1, 0}) == "(x1|y2|z1)");
}

TEST_CASE("run_word reports the blocking position") {
    const GlobalAA aa = fixture_global();
    const RunResult ok = run_word(aa, word_of({0, 2, 0}));
    CHECK(ok.ok());
    CHECK(ok.config == GlobalConfig{0, 0, 1});
    const RunResult blocked = run_word(aa, word_of({0, 3, 1}));
    REQUIRE(blocked.blocked_at.has_value());
    CHECK(*blocked.blocked_at == 2);
    CHECK(blocked.config == GlobalConfig{0, 1, 0});
}

TEST_CASE("bounded language matches the brute-force oracle on random machines") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const GlobalAA aa = random_global_aa(rng);
        CHECK(language_upto(aa, 5) == oracle_language_global(aa, 5));
    }
}

TEST_CASE("per-process step tables match their oracle too") {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const LocalAA laa = random_local_aa(rng);
        CHECK(language_upto(laa, 5) == oracle_language_local(laa, 5));
    }
}

TEST_CASE("bounded languages are prefix closed") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const GlobalAA aa = random_global_aa(rng);
        const WordSet words = language_upto(aa, 5);
        for (const Word& w : words) {
            if (!w.empty()) {
                CHECK(words.count(Word(w.begin(), w.end() - 1)) == 1);
            }
        }
    }
}

TEST_CASE("exploration produces replayable access words") {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const GlobalAA aa = random_global_aa(rng);
        const ReachGraph g = explore(aa);
        REQUIRE(!g.configs.empty());
        CHECK(g.configs[0] == aa.initial());
        for (std::size_t i = 0; i < g.configs.size(); ++i) {
            const RunResult r = run_word(aa, g.access_word(static_cast<std::int32_t>(i)));
            CHECK(r.ok());
            CHECK(r.config == g.configs[i]);
        }
        for (const ReachGraph::Edge& e : g.edges) {
            const auto next = aa_step(aa, g.configs[e.from], e.label);
            REQUIRE(next.has_value());
            CHECK(*next == g.configs[e.to]);
        }
    }
}

TEST_CASE("lifting local steps to joint rewrites preserves the language") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        const LocalAA laa = random_local_aa(rng);
        const GlobalAA lifted = lift(laa);
        CHECK(language_upto(lifted, 5) == language_upto(laa, 5));
    }
}

TEST_CASE("local machines block a letter when any participant lacks a step") {
    const DistributedAlphabet alpha = fixture_alphabet();
    std::vector<std::vector<std::vector<LocalState>>> delta(3);
    delta[0] = {{0, -1, -1, -1}, {-1, -1, -1, -1}}; // p1: a self-loop in s1
    delta[1] = {{-1, -1, -1, -1}};                  // p2: never moves
    delta[2] = {{-1, -1, -1, -1}};                  // p3: never moves
    const LocalAA laa(alpha, {{"s1", "s2"}, {"u1"}, {"v1"}}, {0, 0, 0}, delta);
    // a needs both p1 and p2; p2 has no step, so a is blocked.
    CHECK(!laa_step(laa, {0, 0, 0}, Letter{0}).has_value());
    CHECK(language_upto(laa, 3) == WordSet{{}});
}

TEST_CASE("constructors reject inconsistent tables") {
    const DistributedAlphabet alpha = fixture_alphabet();
    SUBCASE("joint rewrite arity must match the domain") {
        std::vector<GlobalAA::DeltaMap> delta(4);
        delta[0][{0}] = {0}; // letter a involves two processes
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x"}, {"y"}, {"z"}}, {0, 0, 0}, delta), InputError);
    }
    SUBCASE("joint rewrite targets must be in range") {
        std::vector<GlobalAA::DeltaMap> delta(4);
        delta[2][{0}] = {3};
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x"}, {"y"}, {"z"}}, {0, 0, 0}, delta), InputError);
    }
    SUBCASE("local state names must be unique per process") {
        std::vector<GlobalAA::DeltaMap> delta(4);
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x", "x"}, {"y"}, {"z"}}, {0, 0, 0}, delta),
                        InputError);
    }
    SUBCASE("every process needs a state table and an initial state") {
        std::vector<GlobalAA::DeltaMap> delta(4);
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x"}, {"y"}}, {0, 0, 0}, delta), InputError);
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x"}, {"y"}, {"z"}}, {0, 0}, delta), InputError);
        CHECK_THROWS_AS(GlobalAA(alpha, {{"x"}, {"y"}, {"z"}}, {0, 0, 1}, delta), InputError);
    }
    SUBCASE("a non-participant must not be given a local step") {
        std::vector<std::vector<std::vector<LocalState>>> delta(3);
        delta[0] = {{-1, -1, 0, -1}}; // c belongs to p3 only
        delta[1] = {{-1, -1, -1, -1}};
        delta[2] = {{-1, -1, -1, -1}};
        CHECK_THROWS_AS(LocalAA(alpha, {{"x"}, {"y"}, {"z"}}, {0, 0, 0}, delta), InputError);
    }
}

TEST_CASE("exploration respects the configured cap") {
    const GlobalAA aa = fixture_global();
    Limits tiny;
    tiny.max_explored = 2;
    CHECK_THROWS_AS(explore(aa, tiny), ResourceError);
    CHECK_THROWS_AS(language_upto(aa, 6, tiny), ResourceError);
}
