#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rcts/alphabet.hpp"
#include "rcts/automata.hpp"
#include "rcts/cts.hpp"

// Seeded random machine builders for the property suites. Everything is a
// pure function of the engine state, so a fixed seed reproduces a failure.
namespace rcts::testing {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool rand_chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline DistributedAlphabet random_alphabet(Rng& rng, int max_processes = 3,
                                           int max_letters = 4) {
    const int np = rand_int(rng, 1, max_processes);
    const int nl = rand_int(rng, 1, max_letters);
    std::vector<std::string> process_names;
    for (int p = 0; p < np; ++p) {
        process_names.push_back("p" + std::to_string(p + 1));
    }
    std::vector<std::string> letter_names;
    std::vector<ProcessSet> dom;
    for (int a = 0; a < nl; ++a) {
        letter_names.push_back("a" + std::to_string(a + 1));
        ProcessSet owners;
        for (int p = 0; p < np; ++p) {
            if (rand_chance(rng, 0.5)) {
                owners.insert(ProcessId{p});
            }
        }
        if (owners.empty()) {
            owners.insert(ProcessId{rand_int(rng, 0, np - 1)});
        }
        dom.push_back(owners);
    }
    return DistributedAlphabet(std::move(letter_names), std::move(process_names),
                               std::move(dom));
}

inline std::vector<std::vector<std::string>> random_state_names(Rng& rng, int processes,
                                                                int max_states,
                                                                std::vector<int>& counts) {
    counts.clear();
    std::vector<std::vector<std::string>> names(processes);
    for (int p = 0; p < processes; ++p) {
        const int k = rand_int(rng, 1, max_states);
        counts.push_back(k);
        for (int s = 0; s < k; ++s) {
            names[p].push_back("s" + std::to_string(s + 1));
        }
    }
    return names;
}

// Walks every tuple over the given per-slot sizes.
inline bool advance_tuple(std::vector<LocalState>& tuple, const std::vector<int>& sizes) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (++tuple[i] < sizes[i]) {
            return true;
        }
        tuple[i] = 0;
    }
    return false;
}

inline GlobalAA random_global_aa(Rng& rng, int max_processes = 3, int max_states = 3,
                                 int max_letters = 4) {
    const DistributedAlphabet alpha = random_alphabet(rng, max_processes, max_letters);
    std::vector<int> counts;
    auto names = random_state_names(rng, alpha.process_count(), max_states, counts);
    GlobalConfig initial;
    for (int p = 0; p < alpha.process_count(); ++p) {
        initial.push_back(rand_int(rng, 0, counts[p] - 1));
    }
    std::vector<GlobalAA::DeltaMap> delta(alpha.letter_count());
    for (int a = 0; a < alpha.letter_count(); ++a) {
        std::vector<int> sizes;
        for (ProcessId p : alpha.dom(Letter{a})) {
            sizes.push_back(counts[p.v]);
        }
        std::vector<LocalState> from(sizes.size(), 0);
        do {
            if (!rand_chance(rng, 0.7)) {
                continue;
            }
            std::vector<LocalState> to(sizes.size());
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                to[i] = rand_int(rng, 0, sizes[i] - 1);
            }
            delta[a].emplace(from, std::move(to));
        } while (advance_tuple(from, sizes));
    }
    return GlobalAA(alpha, std::move(names), std::move(initial), std::move(delta));
}

inline LocalAA random_local_aa(Rng& rng, int max_processes = 3, int max_states = 3,
                               int max_letters = 4) {
    const DistributedAlphabet alpha = random_alphabet(rng, max_processes, max_letters);
    std::vector<int> counts;
    auto names = random_state_names(rng, alpha.process_count(), max_states, counts);
    GlobalConfig initial;
    for (int p = 0; p < alpha.process_count(); ++p) {
        initial.push_back(rand_int(rng, 0, counts[p] - 1));
    }
    std::vector<std::vector<std::vector<LocalState>>> delta(alpha.process_count());
    for (int p = 0; p < alpha.process_count(); ++p) {
        delta[p].assign(counts[p], std::vector<LocalState>(alpha.letter_count(), -1));
        for (int s = 0; s < counts[p]; ++s) {
            for (Letter a : alpha.dom_inv(ProcessId{p})) {
                if (rand_chance(rng, 0.7)) {
                    delta[p][s][a.v] = rand_int(rng, 0, counts[p] - 1);
                }
            }
        }
    }
    return LocalAA(alpha, std::move(names), std::move(initial), std::move(delta));
}

// Deterministic system over one message content: every state has at most one
// move per channel, so the composition never branches. With cover_listeners
// each channel gets one component that listens to it in every state, so no
// reachable configuration ever drops a channel's last listener.
inline CtsSystem random_cts_system(Rng& rng, int max_processes = 3, int max_states = 3,
                                   int max_channels = 4, bool cover_listeners = false) {
    Universe u;
    const int nc = rand_int(rng, 1, max_channels);
    for (int c = 0; c < nc; ++c) {
        u.channel_names.push_back("c" + std::to_string(c + 1));
    }
    u.content_names.push_back("t");
    const int np = rand_int(rng, 1, max_processes);
    std::vector<int> guard_of;
    if (cover_listeners) {
        for (int c = 0; c < nc; ++c) {
            guard_of.push_back(rand_int(rng, 0, np - 1));
        }
    }
    std::vector<std::string> process_names;
    std::vector<Cts> components;
    for (int p = 0; p < np; ++p) {
        process_names.push_back("p" + std::to_string(p + 1));
        const int k = rand_int(rng, 1, max_states);
        std::vector<std::string> state_names;
        for (int s = 0; s < k; ++s) {
            state_names.push_back("s" + std::to_string(s + 1));
        }
        std::vector<ChannelSet> listen(k);
        std::vector<CtsTransition> transitions;
        for (int s = 0; s < k; ++s) {
            for (int c = 0; c < nc; ++c) {
                const bool guards = cover_listeners && guard_of[c] == p;
                if (!guards && !rand_chance(rng, 0.6)) {
                    continue;
                }
                listen[s].insert(Channel{c});
                if (rand_chance(rng, 0.75)) {
                    transitions.push_back({s, 0, Channel{c}, rand_int(rng, 0, k - 1)});
                }
            }
        }
        components.emplace_back(u, std::move(state_names), rand_int(rng, 0, k - 1),
                                std::move(listen), std::move(transitions));
    }
    return CtsSystem(std::move(process_names), std::move(components));
}

// Product of per-process components over process-private letters. Every
// letter touches exactly one coordinate, so independent letters commute by
// construction and any accepting subset is closed under swaps.
inline Dfa random_product_dfa(Rng& rng, int max_processes = 3, int max_states = 3) {
    const int np = rand_int(rng, 2, max_processes);
    std::vector<std::string> process_names;
    std::vector<std::string> letter_names;
    std::vector<ProcessSet> dom;
    std::vector<std::vector<int>> letters_of(np);
    for (int p = 0; p < np; ++p) {
        process_names.push_back("p" + std::to_string(p + 1));
        const int own = rand_int(rng, 1, 2);
        for (int i = 0; i < own; ++i) {
            letters_of[p].push_back(static_cast<int>(letter_names.size()));
            letter_names.push_back("a" + std::to_string(letter_names.size() + 1));
            ProcessSet owners;
            owners.insert(ProcessId{p});
            dom.push_back(owners);
        }
    }
    DistributedAlphabet alpha(letter_names, process_names, dom);

    std::vector<int> counts(np);
    std::vector<std::vector<std::vector<LocalState>>> comp_delta(np);
    for (int p = 0; p < np; ++p) {
        counts[p] = rand_int(rng, 1, max_states);
        comp_delta[p].assign(counts[p],
                             std::vector<LocalState>(alpha.letter_count(), -1));
        for (int s = 0; s < counts[p]; ++s) {
            for (int a : letters_of[p]) {
                if (rand_chance(rng, 0.7)) {
                    comp_delta[p][s][a] = rand_int(rng, 0, counts[p] - 1);
                }
            }
        }
    }

    // Enumerate the full product; the tuple is its own index in mixed radix.
    int total = 1;
    for (int p = 0; p < np; ++p) {
        total *= counts[p];
    }
    const auto decode = [&](int q) {
        std::vector<int> tuple(np);
        for (int p = 0; p < np; ++p) {
            tuple[p] = q % counts[p];
            q /= counts[p];
        }
        return tuple;
    };
    const auto encode = [&](const std::vector<int>& tuple) {
        int q = 0;
        for (int p = np - 1; p >= 0; --p) {
            q = q * counts[p] + tuple[p];
        }
        return q;
    };
    std::vector<std::string> state_names;
    std::vector<std::vector<LocalState>> delta(total,
                                               std::vector<LocalState>(alpha.letter_count(), -1));
    std::vector<bool> accepting;
    for (int q = 0; q < total; ++q) {
        state_names.push_back("q" + std::to_string(q + 1));
        accepting.push_back(rand_chance(rng, 0.5));
        const std::vector<int> tuple = decode(q);
        for (int p = 0; p < np; ++p) {
            for (int a : letters_of[p]) {
                const LocalState to = comp_delta[p][tuple[p]][a];
                if (to >= 0) {
                    std::vector<int> next = tuple;
                    next[p] = to;
                    delta[q][a] = encode(next);
                }
            }
        }
    }
    return Dfa(std::move(alpha), std::move(state_names), 0, std::move(delta),
               std::move(accepting));
}

// Redirects or deletes one edge of a completed diamond so the two orders of
// an independent pair disagree. Returns nothing when the automaton has no
// completed diamond to break.
inline std::optional<Dfa> break_diamond(Rng& rng, const Dfa& dfa) {
    struct Square {
        LocalState q;
        Letter a;
        Letter b;
    };
    std::vector<Square> squares;
    const int nl = dfa.alphabet.letter_count();
    for (LocalState q = 0; q < dfa.state_count(); ++q) {
        for (int a = 0; a < nl; ++a) {
            for (int b = a + 1; b < nl; ++b) {
                if (!dfa.alphabet.independent(Letter{a}, Letter{b})) {
                    continue;
                }
                const LocalState x = dfa.delta[q][a];
                const LocalState u = dfa.delta[q][b];
                // Skip self-loops on the first edge: rewriting delta[x][b]
                // with x == q would change both orders at once and can leave
                // the square commuting.
                if (x >= 0 && x != q && u >= 0 && dfa.delta[x][b] >= 0 &&
                    dfa.delta[u][a] >= 0) {
                    squares.push_back({q, Letter{a}, Letter{b}});
                }
            }
        }
    }
    if (squares.empty()) {
        return std::nullopt;
    }
    const Square s = squares[rand_int(rng, 0, static_cast<int>(squares.size()) - 1)];
    Dfa broken = dfa;
    const LocalState x = dfa.delta[s.q][s.a.v];
    const LocalState u = dfa.delta[s.q][s.b.v];
    const LocalState v = dfa.delta[u][s.a.v];
    if (dfa.state_count() > 1 && rand_chance(rng, 0.5)) {
        // Land the a-then-b corner somewhere other than the b-then-a corner.
        broken.delta[x][s.b.v] = (v + 1) % dfa.state_count();
    } else {
        broken.delta[x][s.b.v] = -1;
    }
    return broken;
}

} // namespace rcts::testing
