#include "rcts/cts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace rcts {

std::optional<Channel> Universe::find_channel(const std::string& name) const {
    for (std::size_t i = 0; i < channel_names.size(); ++i) {
        if (channel_names[i] == name) {
            return Channel{static_cast<std::int32_t>(i)};
        }
    }
    return std::nullopt;
}

std::optional<std::int32_t> Universe::find_content(const std::string& name) const {
    for (std::size_t i = 0; i < content_names.size(); ++i) {
        if (content_names[i] == name) {
            return static_cast<std::int32_t>(i);
        }
    }
    return std::nullopt;
}

namespace {

void check_universe(const Universe& u) {
    if (u.channel_names.empty()) {
        throw InputError("universe needs at least one channel");
    }
    if (u.content_names.empty()) {
        throw InputError("universe needs at least one message content");
    }
    if (u.channel_names.size() > ChannelSet::max_elements) {
        throw InputError("universe exceeds the supported size of 64 channels");
    }
    auto unique = [](const std::vector<std::string>& names, const char* what) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names) {
            if (n.empty()) {
                throw InputError(std::string(what) + " name must not be empty");
            }
            if (!seen.insert(n).second) {
                throw InputError(std::string(what) + " name '" + n + "' is not unique");
            }
        }
    };
    unique(u.channel_names, "channel");
    unique(u.content_names, "content");
}

} // namespace

Cts::Cts(Universe universe,
         std::vector<std::string> state_names,
         LocalState initial,
         std::vector<ChannelSet> listen,
         std::vector<CtsTransition> transitions)
    : universe_(std::move(universe)),
      state_names_(std::move(state_names)),
      initial_(initial),
      listen_(std::move(listen)),
      transitions_(std::move(transitions)) {
    check_universe(universe_);
    if (state_names_.empty()) {
        throw InputError("component needs at least one state");
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& n : state_names_) {
            if (n.empty() || !seen.insert(n).second) {
                throw InputError("component state names must be unique and nonempty");
            }
        }
    }
    if (initial_ < 0 || initial_ >= state_count()) {
        throw InputError("initial state out of range");
    }
    if (listen_.size() != state_names_.size()) {
        throw InputError("listening sets must cover every state");
    }
    const ChannelSet all = ChannelSet::first(universe_.channel_count());
    for (std::size_t s = 0; s < listen_.size(); ++s) {
        if (!listen_[s].subset_of(all)) {
            throw InputError("state '" + state_names_[s] + "' listens to an unknown channel");
        }
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    for (const auto& t : transitions_) {
        if (t.from < 0 || t.from >= state_count() || t.to < 0 || t.to >= state_count()) {
            throw InputError("transition state out of range");
        }
        if (t.channel.v < 0 || t.channel.v >= universe_.channel_count()) {
            throw InputError("transition channel out of range");
        }
        if (t.content < 0 || t.content >= universe_.content_count()) {
            throw InputError("transition content out of range");
        }
        if (!listen_[t.from].contains(t.channel)) {
            throw InputError("state '" + state_names_[t.from] + "' has a transition on channel '" +
                             universe_.channel_names[t.channel.v] +
                             "' it does not listen to; transitions require listening");
        }
    }
    by_state_.assign(state_names_.size(), {0, 0});
    std::size_t i = 0;
    for (LocalState s = 0; s < state_count(); ++s) {
        std::size_t begin = i;
        while (i < transitions_.size() && transitions_[i].from == s) {
            ++i;
        }
        by_state_[s] = {begin, i};
    }
}

const std::string& Cts::state_name(LocalState s) const {
    if (s < 0 || s >= state_count()) {
        throw InputError("state out of range");
    }
    return state_names_[s];
}

ChannelSet Cts::listen(LocalState s) const {
    if (s < 0 || s >= state_count()) {
        throw InputError("state out of range");
    }
    return listen_[s];
}

std::pair<std::size_t, std::size_t> Cts::transitions_from(LocalState s) const {
    if (s < 0 || s >= state_count()) {
        throw InputError("state out of range");
    }
    return by_state_[s];
}

std::vector<LocalState> Cts::successors(LocalState s, std::int32_t content, Channel c) const {
    auto [begin, end] = transitions_from(s);
    std::vector<LocalState> out;
    for (std::size_t i = begin; i < end; ++i) {
        if (transitions_[i].content == content && transitions_[i].channel == c) {
            out.push_back(transitions_[i].to);
        }
    }
    return out;
}

WordSet cts_language_upto(const Cts& c, int k, const Limits& limits) {
    return compose(std::vector<Cts>{c}).language_upto(k, limits);
}

CtsSystem::CtsSystem(std::vector<std::string> process_names, std::vector<Cts> components)
    : process_names_(std::move(process_names)), components_(std::move(components)) {
    if (components_.empty()) {
        throw InputError("system needs at least one component");
    }
    if (process_names_.size() != components_.size()) {
        throw InputError("system needs one process name per component");
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& n : process_names_) {
            if (n.empty() || !seen.insert(n).second) {
                throw InputError("process names must be unique and nonempty");
            }
        }
    }
    for (const auto& c : components_) {
        if (!(c.universe() == components_[0].universe())) {
            throw InputError("components disagree on channels or contents");
        }
    }
}

const std::string& CtsSystem::process_name(ProcessId p) const {
    if (p.v < 0 || p.v >= process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return process_names_[p.v];
}

const Cts& CtsSystem::component(ProcessId p) const {
    if (p.v < 0 || p.v >= process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return components_[p.v];
}

ComposedCts::ComposedCts(CtsSystem system) : system_(std::move(system)) {}

GlobalConfig ComposedCts::initial() const {
    GlobalConfig cfg(system_.process_count());
    for (int p = 0; p < system_.process_count(); ++p) {
        cfg[p] = system_.component(ProcessId{p}).initial();
    }
    return cfg;
}

ProcessSet ComposedCts::listeners(const GlobalConfig& cfg, Channel c) const {
    ProcessSet out;
    for (int p = 0; p < system_.process_count(); ++p) {
        if (system_.component(ProcessId{p}).listen(cfg[p]).contains(c)) {
            out.insert(ProcessId{p});
        }
    }
    return out;
}

std::vector<GlobalConfig> ComposedCts::successors(const GlobalConfig& cfg, std::int32_t content,
                                                  Channel c) const {
    if (cfg.size() != static_cast<std::size_t>(system_.process_count())) {
        throw InputError("configuration does not match the system");
    }
    const ProcessSet who = listeners(cfg, c);
    if (who.empty()) {
        return {};
    }
    // Per-listener successor choices; any listener without a matching
    // transition vetoes the message.
    std::vector<ProcessId> order;
    std::vector<std::vector<LocalState>> choices;
    for (ProcessId p : who) {
        auto succ = system_.component(p).successors(cfg[p.v], content, c);
        if (succ.empty()) {
            return {};
        }
        order.push_back(p);
        choices.push_back(std::move(succ));
    }
    std::vector<GlobalConfig> out;
    std::vector<std::size_t> pick(order.size(), 0);
    while (true) {
        GlobalConfig next = cfg;
        for (std::size_t i = 0; i < order.size(); ++i) {
            next[order[i].v] = choices[i][pick[i]];
        }
        out.push_back(std::move(next));
        std::size_t pos = 0;
        while (pos < order.size()) {
            if (++pick[pos] < choices[pos].size()) {
                break;
            }
            pick[pos] = 0;
            ++pos;
        }
        if (pos == order.size()) {
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<std::int32_t, GlobalConfig>> ComposedCts::channel_successors(
    const GlobalConfig& cfg, Channel c) const {
    std::vector<std::pair<std::int32_t, GlobalConfig>> out;
    for (int t = 0; t < universe().content_count(); ++t) {
        for (auto& next : successors(cfg, t, c)) {
            out.emplace_back(t, std::move(next));
        }
    }
    return out;
}

ChannelSet ComposedCts::enabled_channels(const GlobalConfig& cfg) const {
    ChannelSet out;
    for (int c = 0; c < universe().channel_count(); ++c) {
        for (int t = 0; t < universe().content_count(); ++t) {
            if (!successors(cfg, t, Channel{c}).empty()) {
                out.insert(Channel{c});
                break;
            }
        }
    }
    return out;
}

WordSet ComposedCts::language_upto(int k, const Limits& limits) const {
    if (k < 0) {
        throw InputError("language bound must be nonnegative");
    }
    WordSet words{Word{}};
    struct Node {
        Word word;
        // All configurations reachable on `word`, sorted and deduplicated.
        std::vector<GlobalConfig> configs;
    };
    std::deque<Node> todo;
    todo.push_back({{}, {initial()}});
    std::size_t explored = 0;
    while (!todo.empty()) {
        Node node = std::move(todo.front());
        todo.pop_front();
        if (static_cast<int>(node.word.size()) >= k) {
            continue;
        }
        for (int c = 0; c < universe().channel_count(); ++c) {
            std::set<GlobalConfig> next;
            for (const auto& cfg : node.configs) {
                for (auto& [t, succ] : channel_successors(cfg, Channel{c})) {
                    next.insert(std::move(succ));
                }
            }
            if (next.empty()) {
                continue;
            }
            explored += next.size();
            if (explored > limits.max_explored) {
                throw ResourceError("language enumeration exceeded the cap of " +
                                    std::to_string(limits.max_explored) + " configurations");
            }
            Word w = node.word;
            w.push_back(Channel{c});
            words.insert(w);
            todo.push_back({std::move(w), {next.begin(), next.end()}});
        }
    }
    return words;
}

ReachGraph ComposedCts::explore(const Limits& limits) const {
    ReachGraph g;
    g.configs.push_back(initial());
    g.index.emplace(initial(), 0);
    g.parent_edge.push_back(-1);
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        for (int c = 0; c < universe().channel_count(); ++c) {
            const GlobalConfig src = g.configs[i];
            for (const auto& [t, next] : channel_successors(src, Channel{c})) {
                auto [it, fresh] =
                    g.index.emplace(next, static_cast<std::int32_t>(g.configs.size()));
                if (fresh) {
                    if (g.configs.size() >= limits.max_explored) {
                        throw ResourceError("reachability exceeded the cap of " +
                                            std::to_string(limits.max_explored) +
                                            " configurations");
                    }
                    g.configs.push_back(next);
                    g.parent_edge.push_back(static_cast<std::int32_t>(g.edges.size()));
                }
                g.edges.push_back({static_cast<std::int32_t>(i), t, Channel{c}, it->second});
            }
        }
    }
    return g;
}

std::string ComposedCts::config_name(const GlobalConfig& cfg) const {
    std::ostringstream out;
    out << "(";
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        if (p > 0) {
            out << "|";
        }
        out << system_.component(ProcessId{static_cast<std::int32_t>(p)}).state_name(cfg[p]);
    }
    out << ")";
    return out.str();
}

ComposedCts compose(CtsSystem system) {
    return ComposedCts(std::move(system));
}

ComposedCts compose(std::vector<Cts> components, std::vector<std::string> process_names) {
    if (process_names.empty()) {
        for (std::size_t i = 0; i < components.size(); ++i) {
            process_names.push_back("p" + std::to_string(i + 1));
        }
    }
    return ComposedCts(CtsSystem(std::move(process_names), std::move(components)));
}

Cts composed_to_cts(const ComposedCts& composed, const Limits& limits) {
    ReachGraph g = composed.explore(limits);
    std::vector<std::string> names;
    names.reserve(g.configs.size());
    std::vector<ChannelSet> listen;
    listen.reserve(g.configs.size());
    for (const auto& cfg : g.configs) {
        names.push_back(composed.config_name(cfg));
        ChannelSet l;
        for (int c = 0; c < composed.universe().channel_count(); ++c) {
            if (!composed.listeners(cfg, Channel{c}).empty()) {
                l.insert(Channel{c});
            }
        }
        listen.push_back(l);
    }
    std::vector<CtsTransition> transitions;
    transitions.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        transitions.push_back({e.from, e.content, e.label, e.to});
    }
    return Cts(composed.universe(), std::move(names), 0, std::move(listen),
               std::move(transitions));
}

RunResultCts run_channel_word(const ComposedCts& composed, const Word& w) {
    for (Channel c : w) {
        if (c.v < 0 || c.v >= composed.universe().channel_count()) {
            throw InputError("word contains unknown channel id " + std::to_string(c.v));
        }
    }
    std::vector<GlobalConfig> current{composed.initial()};
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::set<GlobalConfig> next;
        for (const auto& cfg : current) {
            for (auto& [t, succ] : composed.channel_successors(cfg, w[i])) {
                next.insert(std::move(succ));
            }
        }
        if (next.empty()) {
            return RunResultCts{std::move(current), i};
        }
        current.assign(next.begin(), next.end());
    }
    return RunResultCts{std::move(current), std::nullopt};
}

} // namespace rcts
