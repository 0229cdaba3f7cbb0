#pragma once

#include <cstddef>
#include <vector>

#include "rcts/automata.hpp"
#include "rcts/cts.hpp"

namespace rcts {

// How to handle a channel whose joint successor is not unique when turning
// channeled systems back into (deterministic) automata.
enum class NondetPolicy {
    Reject,      // raise InputError naming the configuration and channel
    LexSmallest, // keep the least (content, successor tuple) option
};

struct TranslateOptions {
    // Joint rewrites are tabulated over the full product of component state
    // spaces only while the product stays under this bound; beyond it only
    // the reachable part is tabulated, which preserves the language and all
    // runs from the initial configuration.
    std::size_t full_product_cap = 200'000;
    Limits limits;
};

// One component per process. A letter becomes a channel; the message content
// spells out the joint rewrite the participants agree on, so exactly the
// original joint steps survive composition. Every state of a component
// listens to all letters its process participates in.
CtsSystem aa_to_cts(const GlobalAA& aa);

// Same channel vocabulary, but local steps need no tuple contents: a single
// shared content tags every message.
CtsSystem laa_to_cts(const LocalAA& laa);

// Inverse direction: every process participates in every channel, listeners
// move per the composition and non-listeners repeat their state.
GlobalAA cts_to_aa(const CtsSystem& system, NondetPolicy policy = NondetPolicy::Reject,
                   const TranslateOptions& options = {});

// Requires a single message content. Listeners' moves become local steps,
// non-listeners get explicit stay-put steps, and a listener without a move
// stays undefined, so it blocks the letter exactly as the composition does.
LocalAA cts_to_laa(const CtsSystem& system);

struct ExecutorChoice {
    ProcessId executor;
    // Listening sets for the other processes; entry at the executor's index
    // is ignored. Missing entries default to the empty set.
    std::vector<ChannelSet> listen_sets;
};

// One process tracks the whole composed system; every other process keeps a
// single state with stay-put steps on its chosen channels, so it never
// constrains anything. The executor's states are the reachable composed
// configurations.
GlobalAA cts_to_aa_executor(const CtsSystem& system, const ExecutorChoice& choice,
                            NondetPolicy policy = NondetPolicy::Reject,
                            const TranslateOptions& options = {});

} // namespace rcts
