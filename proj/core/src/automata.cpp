#include "rcts/automata.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

namespace rcts {

namespace {

void check_state_table(const DistributedAlphabet& alphabet,
                       const std::vector<std::vector<std::string>>& state_names,
                       const GlobalConfig& initial) {
    if (static_cast<int>(state_names.size()) != alphabet.process_count()) {
        throw InputError("state table must cover every process");
    }
    for (int p = 0; p < alphabet.process_count(); ++p) {
        if (state_names[p].empty()) {
            throw InputError("process '" + alphabet.process_name(ProcessId{p}) +
                             "' has no local states");
        }
        std::unordered_set<std::string> seen;
        for (const auto& name : state_names[p]) {
            if (name.empty() || !seen.insert(name).second) {
                throw InputError("local state names of process '" +
                                 alphabet.process_name(ProcessId{p}) +
                                 "' must be unique and nonempty");
            }
        }
    }
    if (initial.size() != state_names.size()) {
        throw InputError("initial configuration must cover every process");
    }
    for (std::size_t p = 0; p < initial.size(); ++p) {
        if (initial[p] < 0 || initial[p] >= static_cast<LocalState>(state_names[p].size())) {
            throw InputError("initial local state out of range");
        }
    }
}

std::vector<ProcessId> dom_order(const DistributedAlphabet& alphabet, Letter a) {
    std::vector<ProcessId> order;
    for (ProcessId p : alphabet.dom(a)) {
        order.push_back(p);
    }
    return order;
}

template <typename Machine, typename StepFn>
WordSet language_upto_impl(const Machine& m, int k, const Limits& limits, StepFn step) {
    if (k < 0) {
        throw InputError("language bound must be nonnegative");
    }
    WordSet words;
    struct Node {
        GlobalConfig cfg;
        Word word;
    };
    std::deque<Node> todo;
    todo.push_back({m.initial(), {}});
    words.insert(Word{});
    std::size_t explored = 0;
    const int letters = m.alphabet().letter_count();
    while (!todo.empty()) {
        Node node = std::move(todo.front());
        todo.pop_front();
        if (static_cast<int>(node.word.size()) >= k) {
            continue;
        }
        for (int i = 0; i < letters; ++i) {
            Letter a{i};
            auto next = step(m, node.cfg, a);
            if (!next) {
                continue;
            }
            if (++explored > limits.max_explored) {
                throw ResourceError("language enumeration exceeded the cap of " +
                                    std::to_string(limits.max_explored) + " words");
            }
            Word w = node.word;
            w.push_back(a);
            words.insert(w);
            todo.push_back({std::move(*next), std::move(w)});
        }
    }
    return words;
}

template <typename Machine, typename StepFn>
ReachGraph explore_impl(const Machine& m, const Limits& limits, StepFn step) {
    ReachGraph g;
    g.configs.push_back(m.initial());
    g.index.emplace(m.initial(), 0);
    g.parent_edge.push_back(-1);
    const int letters = m.alphabet().letter_count();
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        for (int a = 0; a < letters; ++a) {
            // configs grows while we iterate; copy the source out first.
            GlobalConfig src = g.configs[i];
            auto next = step(m, src, Letter{a});
            if (!next) {
                continue;
            }
            auto [it, fresh] = g.index.emplace(*next, static_cast<std::int32_t>(g.configs.size()));
            if (fresh) {
                if (g.configs.size() >= limits.max_explored) {
                    throw ResourceError("reachability exceeded the cap of " +
                                        std::to_string(limits.max_explored) + " configurations");
                }
                g.configs.push_back(*next);
                g.parent_edge.push_back(static_cast<std::int32_t>(g.edges.size()));
            }
            g.edges.push_back({static_cast<std::int32_t>(i), -1, Letter{a}, it->second});
        }
    }
    return g;
}

} // namespace

GlobalAA::GlobalAA(DistributedAlphabet alphabet,
                   std::vector<std::vector<std::string>> state_names,
                   GlobalConfig initial,
                   std::vector<DeltaMap> delta)
    : alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      initial_(std::move(initial)),
      delta_(std::move(delta)) {
    check_state_table(alphabet_, state_names_, initial_);
    if (static_cast<int>(delta_.size()) != alphabet_.letter_count()) {
        throw InputError("delta must cover every letter");
    }
    for (int a = 0; a < alphabet_.letter_count(); ++a) {
        const auto order = dom_order(alphabet_, Letter{a});
        for (const auto& [from, to] : delta_[a]) {
            if (from.size() != order.size() || to.size() != order.size()) {
                throw InputError("joint rewrite for letter '" +
                                 alphabet_.letter_name(Letter{a}) +
                                 "' must cover exactly its participants");
            }
            for (std::size_t i = 0; i < order.size(); ++i) {
                const auto bound = static_cast<LocalState>(state_names_[order[i].v].size());
                if (from[i] < 0 || from[i] >= bound || to[i] < 0 || to[i] >= bound) {
                    throw InputError("joint rewrite for letter '" +
                                     alphabet_.letter_name(Letter{a}) +
                                     "' references a local state out of range");
                }
            }
        }
    }
}

int GlobalAA::local_state_count(ProcessId p) const {
    if (p.v < 0 || p.v >= alphabet_.process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return static_cast<int>(state_names_[p.v].size());
}

const std::string& GlobalAA::state_name(ProcessId p, LocalState s) const {
    if (p.v < 0 || p.v >= alphabet_.process_count() || s < 0 ||
        s >= static_cast<LocalState>(state_names_[p.v].size())) {
        throw InputError("local state out of range");
    }
    return state_names_[p.v][s];
}

const GlobalAA::DeltaMap& GlobalAA::delta(Letter a) const {
    if (a.v < 0 || a.v >= alphabet_.letter_count()) {
        throw InputError("unknown letter id " + std::to_string(a.v));
    }
    return delta_[a.v];
}

std::string GlobalAA::config_name(const GlobalConfig& cfg) const {
    std::ostringstream out;
    out << "(";
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        if (p > 0) {
            out << "|";
        }
        out << state_names_[p][cfg[p]];
    }
    out << ")";
    return out.str();
}

LocalAA::LocalAA(DistributedAlphabet alphabet,
                 std::vector<std::vector<std::string>> state_names,
                 GlobalConfig initial,
                 std::vector<std::vector<std::vector<LocalState>>> delta)
    : alphabet_(std::move(alphabet)),
      state_names_(std::move(state_names)),
      initial_(std::move(initial)),
      delta_(std::move(delta)) {
    check_state_table(alphabet_, state_names_, initial_);
    if (static_cast<int>(delta_.size()) != alphabet_.process_count()) {
        throw InputError("delta must cover every process");
    }
    for (int p = 0; p < alphabet_.process_count(); ++p) {
        if (delta_[p].size() != state_names_[p].size()) {
            throw InputError("delta must cover every local state");
        }
        const LetterSet mine = alphabet_.dom_inv(ProcessId{p});
        for (std::size_t s = 0; s < delta_[p].size(); ++s) {
            if (static_cast<int>(delta_[p][s].size()) != alphabet_.letter_count()) {
                throw InputError("delta rows must cover every letter");
            }
            for (int a = 0; a < alphabet_.letter_count(); ++a) {
                LocalState t = delta_[p][s][a];
                if (t < -1 || t >= static_cast<LocalState>(state_names_[p].size())) {
                    throw InputError("local step target out of range");
                }
                if (t >= 0 && !mine.contains(Letter{a})) {
                    throw InputError("process '" + alphabet_.process_name(ProcessId{p}) +
                                     "' has a step on letter '" +
                                     alphabet_.letter_name(Letter{a}) +
                                     "' it does not participate in");
                }
            }
        }
    }
}

int LocalAA::local_state_count(ProcessId p) const {
    if (p.v < 0 || p.v >= alphabet_.process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return static_cast<int>(state_names_[p.v].size());
}

const std::string& LocalAA::state_name(ProcessId p, LocalState s) const {
    if (p.v < 0 || p.v >= alphabet_.process_count() || s < 0 ||
        s >= static_cast<LocalState>(state_names_[p.v].size())) {
        throw InputError("local state out of range");
    }
    return state_names_[p.v][s];
}

std::optional<LocalState> LocalAA::local_step(ProcessId p, LocalState s, Letter a) const {
    if (p.v < 0 || p.v >= alphabet_.process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    if (s < 0 || s >= static_cast<LocalState>(state_names_[p.v].size())) {
        throw InputError("local state out of range");
    }
    if (a.v < 0 || a.v >= alphabet_.letter_count()) {
        throw InputError("unknown letter id " + std::to_string(a.v));
    }
    LocalState t = delta_[p.v][s][a.v];
    if (t < 0) {
        return std::nullopt;
    }
    return t;
}

std::string LocalAA::config_name(const GlobalConfig& cfg) const {
    std::ostringstream out;
    out << "(";
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        if (p > 0) {
            out << "|";
        }
        out << state_names_[p][cfg[p]];
    }
    out << ")";
    return out.str();
}

std::optional<GlobalConfig> aa_step(const GlobalAA& aa, const GlobalConfig& cfg, Letter a) {
    const auto& map = aa.delta(a);
    const auto order = dom_order(aa.alphabet(), a);
    GlobalAA::DomTuple key;
    key.reserve(order.size());
    for (ProcessId p : order) {
        key.push_back(cfg[p.v]);
    }
    auto it = map.find(key);
    if (it == map.end()) {
        return std::nullopt;
    }
    GlobalConfig next = cfg;
    for (std::size_t i = 0; i < order.size(); ++i) {
        next[order[i].v] = it->second[i];
    }
    return next;
}

std::optional<GlobalConfig> laa_step(const LocalAA& laa, const GlobalConfig& cfg, Letter a) {
    GlobalConfig next = cfg;
    for (ProcessId p : laa.alphabet().dom(a)) {
        auto t = laa.local_step(p, cfg[p.v], a);
        if (!t) {
            return std::nullopt;
        }
        next[p.v] = *t;
    }
    return next;
}

namespace {

template <typename Machine, typename StepFn>
RunResult run_word_impl(const Machine& m, const Word& w, StepFn step) {
    check_word(m.alphabet(), w);
    GlobalConfig cfg = m.initial();
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto next = step(m, cfg, w[i]);
        if (!next) {
            return RunResult{std::move(cfg), i};
        }
        cfg = std::move(*next);
    }
    return RunResult{std::move(cfg), std::nullopt};
}

} // namespace

RunResult run_word(const GlobalAA& aa, const Word& w) {
    return run_word_impl(aa, w, [](const GlobalAA& m, const GlobalConfig& c, Letter a) {
        return aa_step(m, c, a);
    });
}

RunResult run_word(const LocalAA& laa, const Word& w) {
    return run_word_impl(laa, w, [](const LocalAA& m, const GlobalConfig& c, Letter a) {
        return laa_step(m, c, a);
    });
}

WordSet language_upto(const GlobalAA& aa, int k, const Limits& limits) {
    return language_upto_impl(aa, k, limits,
                              [](const GlobalAA& m, const GlobalConfig& c, Letter a) {
                                  return aa_step(m, c, a);
                              });
}

WordSet language_upto(const LocalAA& laa, int k, const Limits& limits) {
    return language_upto_impl(laa, k, limits,
                              [](const LocalAA& m, const GlobalConfig& c, Letter a) {
                                  return laa_step(m, c, a);
                              });
}

ReachGraph explore(const GlobalAA& aa, const Limits& limits) {
    return explore_impl(aa, limits, [](const GlobalAA& m, const GlobalConfig& c, Letter a) {
        return aa_step(m, c, a);
    });
}

ReachGraph explore(const LocalAA& laa, const Limits& limits) {
    return explore_impl(laa, limits, [](const LocalAA& m, const GlobalConfig& c, Letter a) {
        return laa_step(m, c, a);
    });
}

GlobalAA lift(const LocalAA& laa) {
    const auto& alpha = laa.alphabet();
    std::vector<GlobalAA::DeltaMap> delta(alpha.letter_count());
    for (int a = 0; a < alpha.letter_count(); ++a) {
        const auto order = dom_order(alpha, Letter{a});
        // Enumerate all participant tuples; keep those where every local
        // step is defined.
        GlobalAA::DomTuple tuple(order.size(), 0);
        while (true) {
            GlobalAA::DomTuple target(order.size(), 0);
            bool defined = true;
            for (std::size_t i = 0; i < order.size() && defined; ++i) {
                auto t = laa.local_step(order[i], tuple[i], Letter{a});
                if (t) {
                    target[i] = *t;
                } else {
                    defined = false;
                }
            }
            if (defined) {
                delta[a].emplace(tuple, target);
            }
            // Advance the mixed-radix counter.
            std::size_t pos = 0;
            while (pos < order.size()) {
                if (++tuple[pos] < laa.local_state_count(order[pos])) {
                    break;
                }
                tuple[pos] = 0;
                ++pos;
            }
            if (pos == order.size()) {
                break;
            }
        }
    }
    return GlobalAA(alpha, laa.state_names(), laa.initial(), std::move(delta));
}

} // namespace rcts
