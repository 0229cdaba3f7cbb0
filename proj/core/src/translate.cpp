#include "rcts/translate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rcts {

namespace {

std::vector<ProcessId> dom_order(const DistributedAlphabet& alphabet, Letter a) {
    std::vector<ProcessId> order;
    for (ProcessId p : alphabet.dom(a)) {
        order.push_back(p);
    }
    return order;
}

} // namespace

CtsSystem aa_to_cts(const GlobalAA& aa) {
    const auto& alpha = aa.alphabet();
    Universe universe;
    for (int a = 0; a < alpha.letter_count(); ++a) {
        universe.channel_names.push_back(alpha.letter_name(Letter{a}));
    }

    // One content per joint rewrite source: the participants' states spelled
    // out, so two components can only agree on a message when they actually
    // sit in the same joint source.
    std::map<std::pair<std::int32_t, GlobalAA::DomTuple>, std::int32_t> token_index;
    for (int a = 0; a < alpha.letter_count(); ++a) {
        std::vector<GlobalAA::DomTuple> froms;
        for (const auto& [from, to] : aa.delta(Letter{a})) {
            froms.push_back(from);
        }
        std::sort(froms.begin(), froms.end());
        const auto order = dom_order(alpha, Letter{a});
        for (auto& from : froms) {
            token_index.emplace(std::make_pair(a, from),
                                static_cast<std::int32_t>(universe.content_names.size()));
            std::ostringstream name;
            name << alpha.letter_name(Letter{a}) << "(";
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i > 0) {
                    name << ",";
                }
                name << aa.state_name(order[i], from[i]);
            }
            name << ")";
            universe.content_names.push_back(name.str());
        }
    }
    if (universe.content_names.empty()) {
        // No joint rewrite anywhere; keep the universe well-formed.
        universe.content_names.push_back("none");
    }

    std::vector<Cts> components;
    std::vector<std::string> process_names;
    for (int p = 0; p < alpha.process_count(); ++p) {
        process_names.push_back(alpha.process_name(ProcessId{p}));
        const LetterSet mine = alpha.dom_inv(ProcessId{p});
        std::vector<ChannelSet> listen(aa.local_state_count(ProcessId{p}), mine);
        std::vector<CtsTransition> transitions;
        for (Letter a : mine) {
            const auto order = dom_order(alpha, a);
            std::size_t slot = 0;
            while (order[slot].v != p) {
                ++slot;
            }
            for (const auto& [from, to] : aa.delta(a)) {
                auto tok = token_index.at(std::make_pair(a.v, from));
                transitions.push_back({from[slot], tok, a, to[slot]});
            }
        }
        components.emplace_back(universe, aa.state_names()[p], aa.initial()[p], std::move(listen),
                                std::move(transitions));
    }
    return CtsSystem(std::move(process_names), std::move(components));
}

CtsSystem laa_to_cts(const LocalAA& laa) {
    const auto& alpha = laa.alphabet();
    Universe universe;
    for (int a = 0; a < alpha.letter_count(); ++a) {
        universe.channel_names.push_back(alpha.letter_name(Letter{a}));
    }
    universe.content_names = {"t"};

    std::vector<Cts> components;
    std::vector<std::string> process_names;
    for (int p = 0; p < alpha.process_count(); ++p) {
        process_names.push_back(alpha.process_name(ProcessId{p}));
        const LetterSet mine = alpha.dom_inv(ProcessId{p});
        std::vector<ChannelSet> listen(laa.local_state_count(ProcessId{p}), mine);
        std::vector<CtsTransition> transitions;
        for (LocalState s = 0; s < laa.local_state_count(ProcessId{p}); ++s) {
            for (Letter a : mine) {
                if (auto t = laa.local_step(ProcessId{p}, s, a)) {
                    transitions.push_back({s, 0, a, *t});
                }
            }
        }
        components.emplace_back(universe, laa.state_names()[p], laa.initial()[p],
                                std::move(listen), std::move(transitions));
    }
    return CtsSystem(std::move(process_names), std::move(components));
}

namespace {

DistributedAlphabet complete_alphabet(const CtsSystem& system) {
    std::vector<ProcessSet> dom(system.universe().channel_count(),
                                ProcessSet::first(system.process_count()));
    return DistributedAlphabet(system.universe().channel_names, system.process_names(),
                               std::move(dom));
}

// The unique joint successor of `cfg` on channel `c`, resolved per policy.
// nullopt when the channel is not enabled there.
std::optional<GlobalConfig> resolve_step(const ComposedCts& composed, const GlobalConfig& cfg,
                                         Channel c, NondetPolicy policy) {
    auto options = composed.channel_successors(cfg, c);
    if (options.empty()) {
        return std::nullopt;
    }
    std::sort(options.begin(), options.end());
    bool unique = true;
    for (std::size_t i = 1; i < options.size(); ++i) {
        if (options[i].second != options[0].second) {
            unique = false;
            break;
        }
    }
    if (!unique && policy == NondetPolicy::Reject) {
        std::ostringstream msg;
        msg << "channel '" << composed.universe().channel_names[c.v]
            << "' has several joint successors from " << composed.config_name(cfg)
            << "; rerun with the lexicographic resolution policy to pick the least one";
        throw InputError(msg.str());
    }
    return options[0].second;
}

std::size_t full_product_size(const CtsSystem& system, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& comp : system.components()) {
        total *= static_cast<std::size_t>(comp.state_count());
        if (total > cap) {
            return cap + 1;
        }
    }
    return total;
}

} // namespace

GlobalAA cts_to_aa(const CtsSystem& system, NondetPolicy policy, const TranslateOptions& options) {
    const ComposedCts composed(system);
    DistributedAlphabet alpha = complete_alphabet(system);

    std::vector<std::vector<std::string>> state_names;
    GlobalConfig initial;
    for (const auto& comp : system.components()) {
        state_names.push_back(comp.state_names());
        initial.push_back(comp.initial());
    }

    std::vector<GlobalAA::DeltaMap> delta(alpha.letter_count());
    auto add_steps_from = [&](const GlobalConfig& cfg) {
        for (int c = 0; c < alpha.letter_count(); ++c) {
            if (auto next = resolve_step(composed, cfg, Channel{c}, policy)) {
                delta[c].emplace(cfg, *next);
            }
        }
    };

    if (full_product_size(system, options.full_product_cap) <= options.full_product_cap) {
        GlobalConfig cfg(system.process_count(), 0);
        while (true) {
            add_steps_from(cfg);
            std::size_t pos = 0;
            while (pos < cfg.size()) {
                if (++cfg[pos] < system.component(ProcessId{static_cast<std::int32_t>(pos)})
                                      .state_count()) {
                    break;
                }
                cfg[pos] = 0;
                ++pos;
            }
            if (pos == cfg.size()) {
                break;
            }
        }
    } else {
        // The full product is too large to tabulate; the reachable part
        // carries the same language from the initial configuration.
        ReachGraph g = composed.explore(options.limits);
        for (const auto& cfg : g.configs) {
            add_steps_from(cfg);
        }
    }
    return GlobalAA(std::move(alpha), std::move(state_names), std::move(initial),
                    std::move(delta));
}

LocalAA cts_to_laa(const CtsSystem& system) {
    if (system.universe().content_count() != 1) {
        throw InputError("local translation needs a single message content, got " +
                         std::to_string(system.universe().content_count()));
    }
    DistributedAlphabet alpha = complete_alphabet(system);

    std::vector<std::vector<std::string>> state_names;
    GlobalConfig initial;
    std::vector<std::vector<std::vector<LocalState>>> delta;
    for (int p = 0; p < system.process_count(); ++p) {
        const Cts& comp = system.component(ProcessId{p});
        state_names.push_back(comp.state_names());
        initial.push_back(comp.initial());
        std::vector<std::vector<LocalState>> rows(comp.state_count(),
                                                  std::vector<LocalState>(
                                                      alpha.letter_count(), -1));
        for (LocalState s = 0; s < comp.state_count(); ++s) {
            for (int c = 0; c < alpha.letter_count(); ++c) {
                if (!comp.listen(s).contains(Channel{c})) {
                    rows[s][c] = s; // not listening: stay put
                    continue;
                }
                auto succ = comp.successors(s, 0, Channel{c});
                if (succ.empty()) {
                    continue; // listening without a move: blocks the letter
                }
                std::sort(succ.begin(), succ.end());
                succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
                if (succ.size() > 1) {
                    throw InputError("state '" + comp.state_name(s) +
                                     "' has several successors on channel '" +
                                     system.universe().channel_names[c] +
                                     "'; the local translation needs deterministic components");
                }
                rows[s][c] = succ[0];
            }
        }
        delta.push_back(std::move(rows));
    }
    return LocalAA(std::move(alpha), std::move(state_names), std::move(initial),
                   std::move(delta));
}

GlobalAA cts_to_aa_executor(const CtsSystem& system, const ExecutorChoice& choice,
                            NondetPolicy policy, const TranslateOptions& options) {
    const int n = system.process_count();
    if (choice.executor.v < 0 || choice.executor.v >= n) {
        throw InputError("executor process id out of range");
    }
    if (choice.listen_sets.size() > static_cast<std::size_t>(n)) {
        throw InputError("more listening sets than processes");
    }
    const ChannelSet all_channels = ChannelSet::first(system.universe().channel_count());
    auto listen_of = [&](int p) {
        ChannelSet l =
            static_cast<std::size_t>(p) < choice.listen_sets.size() ? choice.listen_sets[p]
                                                                    : ChannelSet{};
        if (!l.subset_of(all_channels)) {
            throw InputError("listening set for process '" +
                             system.process_name(ProcessId{p}) + "' names an unknown channel");
        }
        return l;
    };

    const ComposedCts composed(system);
    ReachGraph g = composed.explore(options.limits);

    // Letters keep the channel names; participation is the executor plus
    // whoever opted in to listen.
    std::vector<ProcessSet> dom(system.universe().channel_count());
    for (int c = 0; c < system.universe().channel_count(); ++c) {
        dom[c].insert(choice.executor);
        for (int p = 0; p < n; ++p) {
            if (p != choice.executor.v && listen_of(p).contains(Channel{c})) {
                dom[c].insert(ProcessId{p});
            }
        }
    }
    DistributedAlphabet alpha(system.universe().channel_names, system.process_names(),
                              std::move(dom));

    std::vector<std::vector<std::string>> state_names(n);
    GlobalConfig initial(n, 0);
    for (int p = 0; p < n; ++p) {
        if (p == choice.executor.v) {
            for (const auto& cfg : g.configs) {
                state_names[p].push_back(composed.config_name(cfg));
            }
        } else {
            state_names[p].push_back("idle");
        }
    }

    std::vector<GlobalAA::DeltaMap> delta(alpha.letter_count());
    for (int c = 0; c < alpha.letter_count(); ++c) {
        const auto order = dom_order(alpha, Channel{c});
        for (std::size_t i = 0; i < g.configs.size(); ++i) {
            auto next = resolve_step(composed, g.configs[i], Channel{c}, policy);
            if (!next) {
                continue;
            }
            const auto target = static_cast<LocalState>(g.index_of(*next));
            // Reachability is closed under steps, so the target is tabulated.
            GlobalAA::DomTuple from;
            GlobalAA::DomTuple to;
            for (ProcessId p : order) {
                if (p == choice.executor) {
                    from.push_back(static_cast<LocalState>(i));
                    to.push_back(target);
                } else {
                    from.push_back(0);
                    to.push_back(0);
                }
            }
            delta[c].emplace(std::move(from), std::move(to));
        }
    }
    return GlobalAA(std::move(alpha), std::move(state_names), std::move(initial),
                    std::move(delta));
}

} // namespace rcts
