#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rcts/error.hpp"
#include "rcts/types.hpp"

namespace rcts {

// Shared channel and message-content vocabulary of a system's components.
struct Universe {
    std::vector<std::string> channel_names;
    std::vector<std::string> content_names;

    int channel_count() const { return static_cast<int>(channel_names.size()); }
    int content_count() const { return static_cast<int>(content_names.size()); }
    std::optional<Channel> find_channel(const std::string& name) const;
    std::optional<std::int32_t> find_content(const std::string& name) const;

    bool operator==(const Universe&) const = default;
};

struct CtsTransition {
    LocalState from;
    std::int32_t content;
    Channel channel;
    LocalState to;

    auto operator<=>(const CtsTransition&) const = default;
};

// One component: a state graph whose edges carry (content, channel) messages,
// plus a per-state listening set. A state may listen to a channel without
// having any transition on it; in a composition that silently vetoes the
// channel, which is the whole point of listening.
class Cts {
public:
    Cts(Universe universe,
        std::vector<std::string> state_names,
        LocalState initial,
        std::vector<ChannelSet> listen,
        std::vector<CtsTransition> transitions);

    const Universe& universe() const { return universe_; }
    int state_count() const { return static_cast<int>(state_names_.size()); }
    const std::string& state_name(LocalState s) const;
    const std::vector<std::string>& state_names() const { return state_names_; }
    LocalState initial() const { return initial_; }
    ChannelSet listen(LocalState s) const;
    // Sorted by (from, content, channel, to), duplicates removed.
    const std::vector<CtsTransition>& transitions() const { return transitions_; }
    // Transitions leaving `s`, contiguous in transitions().
    std::pair<std::size_t, std::size_t> transitions_from(LocalState s) const;

    std::vector<LocalState> successors(LocalState s, std::int32_t content, Channel c) const;

private:
    Universe universe_;
    std::vector<std::string> state_names_;
    LocalState initial_;
    std::vector<ChannelSet> listen_;
    std::vector<CtsTransition> transitions_;
    std::vector<std::pair<std::size_t, std::size_t>> by_state_;
};

// All runnable channel words of length <= k of a lone component.
WordSet cts_language_upto(const Cts& c, int k, const Limits& limits = {});

// Named components over one shared universe.
class CtsSystem {
public:
    // Empty placeholder; every accessor except process_count throws until a
    // real system is assigned over it.
    CtsSystem() = default;
    CtsSystem(std::vector<std::string> process_names, std::vector<Cts> components);

    const Universe& universe() const {
        if (components_.empty()) {
            throw InputError("system has no components");
        }
        return components_[0].universe();
    }
    int process_count() const { return static_cast<int>(components_.size()); }
    const std::string& process_name(ProcessId p) const;
    const std::vector<std::string>& process_names() const { return process_names_; }
    const Cts& component(ProcessId p) const;
    const std::vector<Cts>& components() const { return components_; }

private:
    std::vector<std::string> process_names_;
    std::vector<Cts> components_;
};

// Synchronous product of the components: a message (t, c) fires when at
// least one component listens to c, every listener has a matching (t, c)
// transition, all listeners take one, and nobody else moves.
class ComposedCts {
public:
    explicit ComposedCts(CtsSystem system);

    const CtsSystem& system() const { return system_; }
    const Universe& universe() const { return system_.universe(); }
    GlobalConfig initial() const;

    ProcessSet listeners(const GlobalConfig& cfg, Channel c) const;
    std::vector<GlobalConfig> successors(const GlobalConfig& cfg, std::int32_t content,
                                         Channel c) const;
    // Deduplicated (content, successor) pairs over all contents of a channel.
    std::vector<std::pair<std::int32_t, GlobalConfig>> channel_successors(const GlobalConfig& cfg,
                                                                          Channel c) const;
    ChannelSet enabled_channels(const GlobalConfig& cfg) const;

    WordSet language_upto(int k, const Limits& limits = {}) const;
    ReachGraph explore(const Limits& limits = {}) const;

    std::string config_name(const GlobalConfig& cfg) const;

private:
    CtsSystem system_;
};

ComposedCts compose(CtsSystem system);
ComposedCts compose(std::vector<Cts> components, std::vector<std::string> process_names = {});

// Materializes the reachable product as a lone component (listening = union
// of the listeners' sets per reachable state).
Cts composed_to_cts(const ComposedCts& composed, const Limits& limits = {});

struct RunResultCts {
    // All configurations the word can end in; empty never occurs on success.
    std::vector<GlobalConfig> configs;
    std::optional<std::size_t> blocked_at;

    bool ok() const { return !blocked_at.has_value(); }
};

// Runs a channel word existentially over contents and branching.
RunResultCts run_channel_word(const ComposedCts& composed, const Word& w);

} // namespace rcts
