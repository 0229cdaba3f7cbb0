#include "rcts/dot.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace rcts {

namespace {

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

// One drawable automaton; several of them render as clusters.
struct Drawable {
    std::string title;
    std::vector<std::string> labels;
    std::vector<bool> accepting; // empty when the kind has no accepting states
    int initial = 0;
    struct Edge {
        int from;
        std::string label;
        int to;
    };
    std::vector<Edge> edges;
};

std::string render(const std::vector<Drawable>& graphs) {
    std::ostringstream out;
    out << "digraph machine {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle, fontsize=10];\n";
    const bool clustered = graphs.size() > 1;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Drawable& g = graphs[gi];
        const std::string indent = clustered ? "    " : "  ";
        const std::string prefix = "g" + std::to_string(gi) + "_";
        if (clustered) {
            out << "  subgraph cluster_" << gi << " {\n";
            out << indent << "label=\"" << esc(g.title) << "\";\n";
        }
        out << indent << prefix << "start [shape=point, label=\"\"];\n";
        for (std::size_t i = 0; i < g.labels.size(); ++i) {
            out << indent << prefix << "n" << i << " [label=\"" << esc(g.labels[i]) << "\"";
            if (!g.accepting.empty() && g.accepting[i]) {
                out << ", shape=doublecircle";
            }
            out << "];\n";
        }
        out << indent << prefix << "start -> " << prefix << "n" << g.initial << ";\n";
        for (const Drawable::Edge& e : g.edges) {
            out << indent << prefix << "n" << e.from << " -> " << prefix << "n" << e.to
                << " [label=\"" << esc(e.label) << "\"];\n";
        }
        if (clustered) {
            out << "  }\n";
        }
    }
    out << "}\n";
    return out.str();
}

// Local edges in a fixed order, then the reachable part in BFS order.
struct LocalGraph {
    std::vector<std::string> labels;
    int initial = 0;
    std::vector<Drawable::Edge> edges; // indices into the full state list
};

Drawable reachable_part(const std::string& title, const std::vector<std::string>& names,
                        int initial, const std::vector<std::tuple<int, std::string, int>>& edges,
                        const std::vector<bool>& accepting = {}) {
    std::vector<std::vector<std::pair<std::string, int>>> adj(names.size());
    for (const auto& [f, l, t] : edges) {
        adj[f].emplace_back(l, t);
    }
    std::vector<int> order(names.size(), -1);
    std::vector<int> found;
    std::deque<int> queue{initial};
    order[initial] = 0;
    found.push_back(initial);
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        for (const auto& [label, t] : adj[s]) {
            if (order[t] < 0) {
                order[t] = static_cast<int>(found.size());
                found.push_back(t);
                queue.push_back(t);
            }
        }
    }
    Drawable g;
    g.title = title;
    g.initial = 0;
    for (int s : found) {
        g.labels.push_back(names[s]);
        if (!accepting.empty()) {
            g.accepting.push_back(accepting[s]);
        }
    }
    for (int s : found) {
        for (const auto& [label, t] : adj[s]) {
            if (order[t] >= 0) {
                g.edges.push_back({order[s], label, order[t]});
            }
        }
    }
    return g;
}

std::vector<std::tuple<int, std::string, int>> dedup(
    std::vector<std::tuple<int, std::string, int>> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// Projection of the joint rewrites onto one process.
std::vector<std::tuple<int, std::string, int>> local_edges(const GlobalAA& aa, ProcessId p) {
    std::vector<std::tuple<int, std::string, int>> edges;
    const DistributedAlphabet& alpha = aa.alphabet();
    for (int a = 0; a < alpha.letter_count(); ++a) {
        const ProcessSet dom = alpha.dom(Letter{a});
        if (!dom.contains(p)) {
            continue;
        }
        int slot = 0;
        for (ProcessId q : dom) {
            if (q == p) {
                break;
            }
            ++slot;
        }
        for (const auto& [from, to] : aa.delta(Letter{a})) {
            edges.emplace_back(from[slot], alpha.letter_name(Letter{a}), to[slot]);
        }
    }
    return dedup(std::move(edges));
}

std::vector<std::tuple<int, std::string, int>> local_edges(const LocalAA& aa, ProcessId p) {
    std::vector<std::tuple<int, std::string, int>> edges;
    const DistributedAlphabet& alpha = aa.alphabet();
    for (int s = 0; s < aa.local_state_count(p); ++s) {
        for (int a = 0; a < alpha.letter_count(); ++a) {
            const LocalState to = aa.delta()[p.v][s][a];
            if (to >= 0) {
                edges.emplace_back(s, alpha.letter_name(Letter{a}), to);
            }
        }
    }
    return edges;
}

std::vector<std::tuple<int, std::string, int>> local_edges(const Cts& c) {
    std::vector<std::tuple<int, std::string, int>> edges;
    const Universe& u = c.universe();
    for (const CtsTransition& t : c.transitions()) {
        edges.emplace_back(t.from,
                           u.channel_names[t.channel.v] + ":" + u.content_names[t.content],
                           t.to);
    }
    return dedup(std::move(edges));
}

// Picks the processes to draw; empty option means all of them.
std::vector<int> selected_processes(int count, const std::optional<std::string>& wanted,
                                    auto find) {
    if (!wanted) {
        std::vector<int> all(count);
        for (int p = 0; p < count; ++p) {
            all[p] = p;
        }
        return all;
    }
    auto p = find(*wanted);
    if (!p) {
        throw InputError("unknown process '" + *wanted + "'");
    }
    return {p->v};
}

// The reachable global graph with the enabled labels folded into node text.
Drawable composed_drawable(const ReachGraph& g, auto config_name, auto edge_label) {
    std::vector<std::set<std::string>> enabled(g.configs.size());
    for (const auto& e : g.edges) {
        enabled[e.from].insert(edge_label(e));
    }
    Drawable out;
    out.title = "reachable";
    out.initial = 0;
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        std::string label = config_name(g.configs[i]);
        label += "\\nenabled:";
        if (enabled[i].empty()) {
            label += " none";
        } else {
            for (const auto& name : enabled[i]) {
                label += " " + name;
            }
        }
        out.labels.push_back(std::move(label));
    }
    for (const auto& e : g.edges) {
        out.edges.push_back({e.from, edge_label(e), e.to});
    }
    return out;
}

std::string dot_global_aa(const GlobalAA& aa, const DotOptions& options) {
    const DistributedAlphabet& alpha = aa.alphabet();
    if (options.view == DotView::ComposedReachable) {
        const ReachGraph g = explore(aa, options.limits);
        return render({composed_drawable(
            g, [&](const GlobalConfig& cfg) { return aa.config_name(cfg); },
            [&](const ReachGraph::Edge& e) { return alpha.letter_name(e.label); })});
    }
    std::vector<Drawable> graphs;
    for (int p : selected_processes(
             alpha.process_count(), options.process,
             [&](const std::string& n) { return alpha.find_process(n); })) {
        graphs.push_back(reachable_part(alpha.process_name(ProcessId{p}),
                                        aa.state_names()[p], aa.initial()[p],
                                        local_edges(aa, ProcessId{p})));
    }
    return render(graphs);
}

std::string dot_local_aa(const LocalAA& aa, const DotOptions& options) {
    const DistributedAlphabet& alpha = aa.alphabet();
    if (options.view == DotView::ComposedReachable) {
        const ReachGraph g = explore(aa, options.limits);
        return render({composed_drawable(
            g, [&](const GlobalConfig& cfg) { return aa.config_name(cfg); },
            [&](const ReachGraph::Edge& e) { return alpha.letter_name(e.label); })});
    }
    std::vector<Drawable> graphs;
    for (int p : selected_processes(
             alpha.process_count(), options.process,
             [&](const std::string& n) { return alpha.find_process(n); })) {
        graphs.push_back(reachable_part(alpha.process_name(ProcessId{p}),
                                        aa.state_names()[p], aa.initial()[p],
                                        local_edges(aa, ProcessId{p})));
    }
    return render(graphs);
}

std::string dot_composed(const ComposedCts& composed, const Limits& limits) {
    const ReachGraph g = composed.explore(limits);
    const Universe& u = composed.universe();
    return render({composed_drawable(
        g, [&](const GlobalConfig& cfg) { return composed.config_name(cfg); },
        [&](const ReachGraph::Edge& e) {
            return u.channel_names[e.label.v] + ":" + u.content_names[e.content];
        })});
}

std::string dot_cts(const Cts& c, const DotOptions& options) {
    if (options.process) {
        throw InputError("a lone component has no processes to select");
    }
    if (options.view == DotView::ComposedReachable) {
        return dot_composed(compose({c}), options.limits);
    }
    return render({reachable_part("component", c.state_names(), c.initial(), local_edges(c))});
}

std::string dot_cts_system(const CtsSystem& sys, const DotOptions& options) {
    if (options.view == DotView::ComposedReachable) {
        return dot_composed(ComposedCts(sys), options.limits);
    }
    std::vector<Drawable> graphs;
    for (int p : selected_processes(
             sys.process_count(), options.process,
             [&](const std::string& n) -> std::optional<ProcessId> {
                 for (int q = 0; q < sys.process_count(); ++q) {
                     if (sys.process_name(ProcessId{q}) == n) {
                         return ProcessId{q};
                     }
                 }
                 return std::nullopt;
             })) {
        const Cts& c = sys.component(ProcessId{p});
        graphs.push_back(reachable_part(sys.process_name(ProcessId{p}), c.state_names(),
                                        c.initial(), local_edges(c)));
    }
    return render(graphs);
}

std::string dot_dfa(const Dfa& d, const DotOptions& options) {
    if (options.process) {
        throw InputError("an automaton has no processes to select");
    }
    std::vector<std::tuple<int, std::string, int>> edges;
    for (int s = 0; s < d.state_count(); ++s) {
        for (int a = 0; a < d.alphabet.letter_count(); ++a) {
            if (d.delta[s][a] >= 0) {
                edges.emplace_back(s, d.alphabet.letter_name(Letter{a}), d.delta[s][a]);
            }
        }
    }
    return render(
        {reachable_part("automaton", d.state_names, d.initial, edges, d.accepting)});
}

} // namespace

std::string export_dot(const Document& doc, const DotOptions& options) {
    return std::visit(
        [&](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Dfa>) {
                return dot_dfa(m, options);
            } else if constexpr (std::is_same_v<T, GlobalAA>) {
                return dot_global_aa(m, options);
            } else if constexpr (std::is_same_v<T, LocalAA>) {
                return dot_local_aa(m, options);
            } else if constexpr (std::is_same_v<T, Cts>) {
                return dot_cts(m, options);
            } else if constexpr (std::is_same_v<T, CtsSystem>) {
                return dot_cts_system(m, options);
            } else {
                throw InputError("nothing to draw for a document of kind '" +
                                 doc.kind() + "'");
            }
        },
        doc.body);
}

} // namespace rcts
