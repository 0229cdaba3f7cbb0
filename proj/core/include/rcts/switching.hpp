#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcts/cts.hpp"

namespace rcts {

// Successor of d in the ascending-index cycle through D; identity off D.
Channel next_cyclic(ChannelSet D, Channel d);
// Predecessor of d in that cycle. d must be a member.
Channel prev_cyclic(ChannelSet D, Channel d);

// A total enumeration of the subsets of a fixed channel set, starting at the
// empty set. Drives which dependence set a switching communication installs
// next.
struct SubsetOrder {
    Channel sc;
    ChannelSet allowed;
    std::vector<ChannelSet> subsets;

    // Successor in the enumeration; nullopt at the last subset.
    std::optional<ChannelSet> inc(ChannelSet d) const;

private:
    friend SubsetOrder make_subset_order(ChannelSet allowed, Channel sc,
                                         std::vector<ChannelSet> subsets);
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

SubsetOrder make_subset_order(ChannelSet allowed, Channel sc, std::vector<ChannelSet> subsets);

// Subsets ordered by size, ties broken lexicographically on the ascending
// element lists.
SubsetOrder size_lex_order(ChannelSet allowed, Channel sc);

using OrderFactory = std::function<SubsetOrder(ChannelSet allowed, Channel sc)>;

// How the switching-channel roles rotate once a round completes.
enum class CyclePolicy {
    Index,    // both roles advance along the ascending-index cycle
    Disjoint, // the toggler additionally skips the new highlighter's channel
};

// Local state of the one-switching-channel construction: own channel c,
// current switching channel sc, dependence set D, and the channel d whose
// communication this process waits for next.
struct SwitchState {
    Channel c;
    Channel sc;
    ChannelSet dependent;
    Channel d;

    bool operator==(const SwitchState&) const = default;
};

// Local state of the two-switching-channel construction: tg toggles the
// membership of the highlighted channel h in D, hl advances h.
struct TwoSwitchState {
    Channel c;
    Channel tg;
    Channel hl;
    Channel h;
    ChannelSet dependent;
    Channel d;

    bool operator==(const TwoSwitchState&) const = default;
};

// n identically-shaped components over n+1 channels. All components share
// one state table; only the initial states differ.
struct SingleSwitchSystem {
    int n = 0;
    CtsSystem system;
    std::vector<SwitchState> states; // index-aligned with every component

    const SwitchState& decode(LocalState s) const { return states[s]; }
    std::int32_t state_index(const SwitchState& s) const;

private:
    friend SingleSwitchSystem gen_single(int n, const OrderFactory& order);
    friend SingleSwitchSystem single_system_from_cts(const CtsSystem& system);
    std::unordered_map<std::uint64_t, std::int32_t> index_;
};

struct DoubleSwitchSystem {
    int n = 0;
    CtsSystem system;
    std::vector<TwoSwitchState> states;

    const TwoSwitchState& decode(LocalState s) const { return states[s]; }
    std::int32_t state_index(const TwoSwitchState& s) const;

private:
    friend DoubleSwitchSystem gen_double(int n, CyclePolicy policy);
    friend DoubleSwitchSystem double_system_from_cts(const CtsSystem& system);
    std::unordered_map<std::uint64_t, std::int32_t> index_;
};

SingleSwitchSystem gen_single(int n, const OrderFactory& order = size_lex_order);
DoubleSwitchSystem gen_double(int n, CyclePolicy policy = CyclePolicy::Index);

// The (sc, D) pair all processes agree on in a reachable configuration.
struct SingleView {
    Channel sc;
    ChannelSet dependent;

    bool operator==(const SingleView&) const = default;
};

SingleView single_shared_view(const SingleSwitchSystem& sys, const GlobalConfig& cfg);

// Fires the switching channel `steps` times; snapshot[i] is the shared view
// after i communications, so the result has steps+1 entries.
std::vector<SingleView> switching_schedule(const SingleSwitchSystem& sys, int steps);

// A reachable configuration where some process's own channel currently is a
// switching channel, which the role rotation can produce.
struct RoleCollision {
    GlobalConfig config;
    Word access;
    ProcessId process;
    TwoSwitchState state;
};

std::vector<RoleCollision> role_collisions(const DoubleSwitchSystem& sys,
                                           const Limits& limits = {});

std::string switch_state_name(const Universe& u, const SwitchState& s);
std::string two_switch_state_name(const Universe& u, const TwoSwitchState& s);
std::optional<SwitchState> parse_switch_state_name(const Universe& u, const std::string& name);
std::optional<TwoSwitchState> parse_two_switch_state_name(const Universe& u,
                                                          const std::string& name);

// Reinterpret a parsed system as a switching construction by decoding its
// state names. InputError when the shape does not match.
SingleSwitchSystem single_system_from_cts(const CtsSystem& system);
DoubleSwitchSystem double_system_from_cts(const CtsSystem& system);

} // namespace rcts
