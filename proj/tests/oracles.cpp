#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace rcts::testing {

namespace {

// The letter's participants in ascending order, as concrete indices.
std::vector<int> dom_slots(const DistributedAlphabet& alpha, Letter a) {
    std::vector<int> slots;
    for (ProcessId p : alpha.dom(a)) {
        slots.push_back(p.v);
    }
    return slots;
}

template <typename StepFn>
WordSet language_by_extension(const GlobalConfig& initial, int letters, int k, StepFn step) {
    WordSet words;
    struct Item {
        Word w;
        GlobalConfig cfg;
    };
    std::deque<Item> frontier{{Word{}, initial}};
    while (!frontier.empty()) {
        Item item = std::move(frontier.front());
        frontier.pop_front();
        words.insert(item.w);
        if (static_cast<int>(item.w.size()) == k) {
            continue;
        }
        for (int a = 0; a < letters; ++a) {
            if (auto next = step(item.cfg, Letter{a})) {
                Word w = item.w;
                w.push_back(Letter{a});
                frontier.push_back({std::move(w), std::move(*next)});
            }
        }
    }
    return words;
}

} // namespace

WordSet oracle_language_global(const GlobalAA& aa, int k) {
    const DistributedAlphabet& alpha = aa.alphabet();
    const auto step = [&](const GlobalConfig& cfg, Letter a) -> std::optional<GlobalConfig> {
        const std::vector<int> slots = dom_slots(alpha, a);
        GlobalAA::DomTuple from(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) {
            from[i] = cfg[slots[i]];
        }
        for (const auto& [row_from, row_to] : aa.delta(a)) {
            if (row_from == from) {
                GlobalConfig next = cfg;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    next[slots[i]] = row_to[i];
                }
                return next;
            }
        }
        return std::nullopt;
    };
    return language_by_extension(aa.initial(), alpha.letter_count(), k, step);
}

WordSet oracle_language_local(const LocalAA& laa, int k) {
    const DistributedAlphabet& alpha = laa.alphabet();
    const auto& delta = laa.delta();
    const auto step = [&](const GlobalConfig& cfg, Letter a) -> std::optional<GlobalConfig> {
        GlobalConfig next = cfg;
        for (int slot : dom_slots(alpha, a)) {
            const LocalState to = delta[slot][cfg[slot]][a.v];
            if (to < 0) {
                return std::nullopt;
            }
            next[slot] = to;
        }
        return next;
    };
    return language_by_extension(laa.initial(), alpha.letter_count(), k, step);
}

std::vector<GlobalConfig> oracle_compose_step(const CtsSystem& sys, const GlobalConfig& cfg,
                                              std::int32_t content, Channel c) {
    std::vector<int> listeners;
    for (int p = 0; p < sys.process_count(); ++p) {
        if (sys.component(ProcessId{p}).listen(cfg[p]).contains(c)) {
            listeners.push_back(p);
        }
    }
    if (listeners.empty()) {
        return {};
    }
    std::vector<std::vector<LocalState>> moves(listeners.size());
    for (std::size_t i = 0; i < listeners.size(); ++i) {
        const Cts& comp = sys.component(ProcessId{listeners[i]});
        for (const CtsTransition& t : comp.transitions()) {
            if (t.from == cfg[listeners[i]] && t.content == content && t.channel == c) {
                moves[i].push_back(t.to);
            }
        }
        if (moves[i].empty()) {
            return {};
        }
    }
    std::vector<GlobalConfig> out;
    std::vector<std::size_t> pick(listeners.size(), 0);
    while (true) {
        GlobalConfig next = cfg;
        for (std::size_t i = 0; i < listeners.size(); ++i) {
            next[listeners[i]] = moves[i][pick[i]];
        }
        out.push_back(std::move(next));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == moves[i].size()) {
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size()) {
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WordSet oracle_cts_language(const CtsSystem& sys, int k) {
    const Universe& u = sys.universe();
    GlobalConfig initial(sys.process_count());
    for (int p = 0; p < sys.process_count(); ++p) {
        initial[p] = sys.component(ProcessId{p}).initial();
    }
    WordSet words;
    struct Item {
        Word w;
        std::set<GlobalConfig> frontier;
    };
    std::deque<Item> queue{{Word{}, {initial}}};
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        words.insert(item.w);
        if (static_cast<int>(item.w.size()) == k) {
            continue;
        }
        for (int c = 0; c < u.channel_count(); ++c) {
            std::set<GlobalConfig> next;
            for (const GlobalConfig& cfg : item.frontier) {
                for (int t = 0; t < u.content_count(); ++t) {
                    for (GlobalConfig& succ : oracle_compose_step(sys, cfg, t, Channel{c})) {
                        next.insert(std::move(succ));
                    }
                }
            }
            if (!next.empty()) {
                Word w = item.w;
                w.push_back(Channel{c});
                queue.push_back({std::move(w), std::move(next)});
            }
        }
    }
    return words;
}

WordSet oracle_trace_class(const DistributedAlphabet& alpha, const Word& u) {
    WordSet seen{u};
    std::deque<Word> queue{u};
    while (!queue.empty()) {
        const Word w = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (!alpha.independent(w[i], w[i + 1])) {
                continue;
            }
            Word swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            if (seen.insert(swapped).second) {
                queue.push_back(std::move(swapped));
            }
        }
    }
    return seen;
}

Channel oracle_next_cyclic(ChannelSet D, Channel d) {
    if (!D.contains(d)) {
        return d;
    }
    std::vector<Channel> members;
    for (Channel c : D) {
        members.push_back(c);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] == d) {
            return members[(i + 1) % members.size()];
        }
    }
    return d;
}

} // namespace rcts::testing
