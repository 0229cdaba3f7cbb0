#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rcts/alphabet.hpp"
#include "rcts/types.hpp"

namespace rcts {

// Shared-action machine over a distributed alphabet: each letter jointly
// rewrites the local states of exactly the processes that own it, and is
// enabled only where that joint rewrite is defined. Deterministic; blocking
// on an undefined rewrite is a normal outcome, not an error.
class GlobalAA {
public:
    // Local states of dom(a), in ascending process order.
    using DomTuple = std::vector<LocalState>;
    using DeltaMap = std::unordered_map<DomTuple, DomTuple, ConfigHash>;

    GlobalAA(DistributedAlphabet alphabet,
             std::vector<std::vector<std::string>> state_names,
             GlobalConfig initial,
             std::vector<DeltaMap> delta);

    const DistributedAlphabet& alphabet() const { return alphabet_; }
    const GlobalConfig& initial() const { return initial_; }
    int local_state_count(ProcessId p) const;
    const std::string& state_name(ProcessId p, LocalState s) const;
    const std::vector<std::vector<std::string>>& state_names() const { return state_names_; }
    const DeltaMap& delta(Letter a) const;
    const std::vector<DeltaMap>& delta() const { return delta_; }

    std::string config_name(const GlobalConfig& cfg) const;

private:
    DistributedAlphabet alphabet_;
    std::vector<std::vector<std::string>> state_names_;
    GlobalConfig initial_;
    std::vector<DeltaMap> delta_;
};

// Per-process machine: each process owns a partial local step per letter it
// participates in; a letter fires when every participant has a step, and
// only the participants move.
class LocalAA {
public:
    LocalAA(DistributedAlphabet alphabet,
            std::vector<std::vector<std::string>> state_names,
            GlobalConfig initial,
            // delta[p][s][a] = target local state, or -1 where undefined.
            // Must be -1 for every letter p does not participate in.
            std::vector<std::vector<std::vector<LocalState>>> delta);

    const DistributedAlphabet& alphabet() const { return alphabet_; }
    const GlobalConfig& initial() const { return initial_; }
    int local_state_count(ProcessId p) const;
    const std::string& state_name(ProcessId p, LocalState s) const;
    const std::vector<std::vector<std::string>>& state_names() const { return state_names_; }
    std::optional<LocalState> local_step(ProcessId p, LocalState s, Letter a) const;
    const std::vector<std::vector<std::vector<LocalState>>>& delta() const { return delta_; }

    std::string config_name(const GlobalConfig& cfg) const;

private:
    DistributedAlphabet alphabet_;
    std::vector<std::vector<std::string>> state_names_;
    GlobalConfig initial_;
    std::vector<std::vector<std::vector<LocalState>>> delta_;
};

std::optional<GlobalConfig> aa_step(const GlobalAA& aa, const GlobalConfig& cfg, Letter a);
std::optional<GlobalConfig> laa_step(const LocalAA& laa, const GlobalConfig& cfg, Letter a);

struct RunResult {
    // Final configuration, or the configuration just before the blocked letter.
    GlobalConfig config;
    std::optional<std::size_t> blocked_at;

    bool ok() const { return !blocked_at.has_value(); }
};

RunResult run_word(const GlobalAA& aa, const Word& w);
RunResult run_word(const LocalAA& laa, const Word& w);

// All runnable words of length <= k (always contains the empty word).
WordSet language_upto(const GlobalAA& aa, int k, const Limits& limits = {});
WordSet language_upto(const LocalAA& laa, int k, const Limits& limits = {});

ReachGraph explore(const GlobalAA& aa, const Limits& limits = {});
ReachGraph explore(const LocalAA& laa, const Limits& limits = {});

// The joint-rewrite machine whose delta is the product of the local steps.
// Languages coincide by construction.
GlobalAA lift(const LocalAA& laa);

} // namespace rcts
