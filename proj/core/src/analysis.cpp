#include "rcts/analysis.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <utility>

namespace rcts {

std::string verdict_name(ProcessVerdict v) {
    switch (v) {
    case ProcessVerdict::FullyListening:
        return "fully-listening";
    case ProcessVerdict::Trivializable:
        return "trivializable";
    case ProcessVerdict::NeitherDetected:
        return "neither-detected";
    }
    return "unknown";
}

bool fully_listening(const GlobalAA& aa, ProcessId p) {
    return aa.alphabet().dom_inv(p) == aa.alphabet().all_letters();
}

bool fully_listening(const LocalAA& aa, ProcessId p) {
    return aa.alphabet().dom_inv(p) == aa.alphabet().all_letters();
}

namespace {

struct TrivOutcome {
    bool ok = false;
    std::vector<LocalState> core;
    Word witness_access;
    Word witness_drive;
    std::size_t max_drive = 0;
    std::optional<GlobalConfig> stuck;
    Word stuck_access;
};

// Projects the reachable configuration graph onto one process's local moves,
// finds the bottom strongly connected components in which every listened
// letter always stays available, and checks every configuration can be
// driven into one.
TrivOutcome check_trivializable(const ReachGraph& g, const DistributedAlphabet& alpha,
                                ProcessId p) {
    std::unordered_map<LocalState, int> node_of;
    std::vector<LocalState> node_state;
    auto node_id = [&](LocalState s) {
        auto [it, added] = node_of.emplace(s, static_cast<int>(node_state.size()));
        if (added) {
            node_state.push_back(s);
        }
        return it->second;
    };
    for (const auto& cfg : g.configs) {
        node_id(cfg[p.v]);
    }
    std::vector<std::vector<std::pair<Letter, int>>> adj(node_state.size());
    for (const auto& e : g.edges) {
        if (!alpha.dom(e.label).contains(p)) {
            continue;
        }
        adj[node_id(g.configs[e.from][p.v])].emplace_back(e.label,
                                                          node_id(g.configs[e.to][p.v]));
    }
    for (auto& edges : adj) {
        std::sort(edges.begin(), edges.end(),
                  [](const auto& a, const auto& b) { return std::tie(a.first.v, a.second) < std::tie(b.first.v, b.second); });
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    // Tarjan, iteratively; components come out successors-first.
    const int n = static_cast<int>(node_state.size());
    std::vector<int> comp(n, -1);
    std::vector<int> low(n, 0);
    std::vector<int> num(n, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    int comps = 0;
    struct Frame {
        int node;
        std::size_t next_edge;
    };
    for (int root = 0; root < n; ++root) {
        if (num[root] >= 0) {
            continue;
        }
        std::vector<Frame> frames{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next_edge < adj[f.node].size()) {
                const int t = adj[f.node][f.next_edge++].second;
                if (num[t] < 0) {
                    num[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = true;
                    frames.push_back({t, 0});
                } else if (on_stack[t]) {
                    low[f.node] = std::min(low[f.node], num[t]);
                }
            } else {
                const int v = f.node;
                frames.pop_back();
                if (!frames.empty()) {
                    low[frames.back().node] = std::min(low[frames.back().node], low[v]);
                }
                if (low[v] == num[v]) {
                    while (true) {
                        const int u = stack.back();
                        stack.pop_back();
                        on_stack[u] = false;
                        comp[u] = comps;
                        if (u == v) {
                            break;
                        }
                    }
                    ++comps;
                }
            }
        }
    }

    std::vector<bool> complete(comps, true);
    for (int u = 0; u < n; ++u) {
        for (const auto& [a, t] : adj[u]) {
            if (comp[t] != comp[u]) {
                complete[comp[u]] = false;
            }
        }
    }
    const LetterSet listens = alpha.dom_inv(p);
    for (int u = 0; u < n; ++u) {
        if (!complete[comp[u]]) {
            continue;
        }
        for (Letter a : listens) {
            bool stays = false;
            for (const auto& [label, t] : adj[u]) {
                if (label == a && comp[t] == comp[u]) {
                    stays = true;
                    break;
                }
            }
            if (!stays) {
                complete[comp[u]] = false;
                break;
            }
        }
    }

    // Multi-source backward search from the configurations already in a
    // complete bottom component; via[i] remembers the forward edge that
    // shortens the drive from i.
    std::vector<std::vector<int>> rev(g.configs.size());
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        rev[g.edges[ei].to].push_back(static_cast<int>(ei));
    }
    std::vector<int> dist(g.configs.size(), -1);
    std::vector<int> via(g.configs.size(), -1);
    std::deque<int> queue;
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        if (complete[comp[node_of.at(g.configs[i][p.v])]]) {
            dist[i] = 0;
            queue.push_back(static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (int ei : rev[i]) {
            const int j = g.edges[ei].from;
            if (dist[j] < 0) {
                dist[j] = dist[i] + 1;
                via[j] = ei;
                queue.push_back(j);
            }
        }
    }

    TrivOutcome out;
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        if (dist[i] < 0) {
            out.ok = false;
            out.stuck = g.configs[i];
            out.stuck_access = g.access_word(static_cast<std::int32_t>(i));
            return out;
        }
    }
    out.ok = true;
    for (int u = 0; u < n; ++u) {
        if (complete[comp[u]]) {
            out.core.push_back(node_state[u]);
        }
    }
    std::sort(out.core.begin(), out.core.end());
    std::size_t farthest = 0;
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        if (dist[i] > dist[farthest]) {
            farthest = i;
        }
    }
    out.max_drive = static_cast<std::size_t>(dist[farthest]);
    out.witness_access = g.access_word(static_cast<std::int32_t>(farthest));
    for (int i = static_cast<int>(farthest); dist[i] > 0;) {
        const ReachGraph::Edge& e = g.edges[via[i]];
        out.witness_drive.push_back(e.label);
        i = e.to;
    }
    return out;
}

ProcessAnalysis classify(const ReachGraph& g, const DistributedAlphabet& alpha, ProcessId p) {
    ProcessAnalysis out;
    out.process = p;
    out.listens = alpha.dom_inv(p);
    out.reachable = g.configs.size();
    if (out.listens == alpha.all_letters()) {
        out.verdict = ProcessVerdict::FullyListening;
        return out;
    }
    TrivOutcome t = check_trivializable(g, alpha, p);
    if (t.ok) {
        out.verdict = ProcessVerdict::Trivializable;
        out.core = std::move(t.core);
        out.witness_access = std::move(t.witness_access);
        out.witness_drive = std::move(t.witness_drive);
        out.max_drive = t.max_drive;
    } else {
        out.verdict = ProcessVerdict::NeitherDetected;
        out.stuck = std::move(t.stuck);
        out.stuck_access = std::move(t.stuck_access);
    }
    return out;
}

void check_process(const DistributedAlphabet& alpha, ProcessId p) {
    if (p.v < 0 || p.v >= alpha.process_count()) {
        throw InputError("process id " + std::to_string(p.v) + " is out of range");
    }
}

template <typename AA>
AnalysisReport analyze_impl(const AA& aa, const Limits& limits) {
    const ReachGraph g = explore(aa, limits);
    AnalysisReport report;
    for (int p = 0; p < aa.alphabet().process_count(); ++p) {
        report.processes.push_back(classify(g, aa.alphabet(), ProcessId{p}));
    }
    return report;
}

} // namespace

bool trivializable(const GlobalAA& aa, ProcessId p, const Limits& limits) {
    check_process(aa.alphabet(), p);
    return check_trivializable(explore(aa, limits), aa.alphabet(), p).ok;
}

bool trivializable(const LocalAA& aa, ProcessId p, const Limits& limits) {
    check_process(aa.alphabet(), p);
    return check_trivializable(explore(aa, limits), aa.alphabet(), p).ok;
}

ProcessAnalysis analyze_process(const GlobalAA& aa, ProcessId p, const Limits& limits) {
    check_process(aa.alphabet(), p);
    return classify(explore(aa, limits), aa.alphabet(), p);
}

ProcessAnalysis analyze_process(const LocalAA& aa, ProcessId p, const Limits& limits) {
    check_process(aa.alphabet(), p);
    return classify(explore(aa, limits), aa.alphabet(), p);
}

AnalysisReport analyze(const GlobalAA& aa, const Limits& limits) {
    return analyze_impl(aa, limits);
}

AnalysisReport analyze(const LocalAA& aa, const Limits& limits) {
    return analyze_impl(aa, limits);
}

std::vector<std::string> MachineRef::letter_names() const {
    return std::visit(
        [](const auto* m) -> std::vector<std::string> {
            using T = std::decay_t<decltype(*m)>;
            if constexpr (std::is_same_v<T, Cts> || std::is_same_v<T, ComposedCts>) {
                return m->universe().channel_names;
            } else {
                std::vector<std::string> names;
                for (int a = 0; a < m->alphabet().letter_count(); ++a) {
                    names.push_back(m->alphabet().letter_name(Letter{a}));
                }
                return names;
            }
        },
        m_);
}

std::set<std::vector<std::string>> MachineRef::language(int k, const Limits& limits) const {
    const WordSet words = std::visit(
        [&](const auto* m) -> WordSet {
            using T = std::decay_t<decltype(*m)>;
            if constexpr (std::is_same_v<T, Cts>) {
                return cts_language_upto(*m, k, limits);
            } else if constexpr (std::is_same_v<T, ComposedCts>) {
                return m->language_upto(k, limits);
            } else {
                return language_upto(*m, k, limits);
            }
        },
        m_);
    const std::vector<std::string> names = letter_names();
    std::set<std::vector<std::string>> out;
    for (const Word& w : words) {
        std::vector<std::string> named;
        named.reserve(w.size());
        for (Letter a : w) {
            named.push_back(names[a.v]);
        }
        out.insert(std::move(named));
    }
    return out;
}

namespace {

bool word_precedes(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

} // namespace

EquivResult equiv_upto(const MachineRef& x, const MachineRef& y, int k, const Limits& limits) {
    auto nx = x.letter_names();
    auto ny = y.letter_names();
    std::sort(nx.begin(), nx.end());
    std::sort(ny.begin(), ny.end());
    const bool x_in_y = std::includes(ny.begin(), ny.end(), nx.begin(), nx.end());
    const bool y_in_x = std::includes(nx.begin(), nx.end(), ny.begin(), ny.end());
    if (!x_in_y && !y_in_x) {
        throw InputError("the machines do not share a letter vocabulary; neither alphabet "
                         "contains the other");
    }
    const auto lx = x.language(k, limits);
    const auto ly = y.language(k, limits);
    EquivResult result;
    for (const auto& w : lx) {
        if (!ly.contains(w) && (result.only_in == 0 || word_precedes(w, result.witness))) {
            result.witness = w;
            result.only_in = 1;
        }
    }
    for (const auto& w : ly) {
        if (!lx.contains(w) && (result.only_in == 0 || word_precedes(w, result.witness))) {
            result.witness = w;
            result.only_in = 2;
        }
    }
    result.equal = result.only_in == 0;
    return result;
}

namespace {

WitnessDriveReport drive_failure(WitnessDriveReport report, std::string why) {
    report.ok = false;
    report.failure = std::move(why);
    return report;
}

// One deterministic composed step; reports failure through the optional.
std::optional<GlobalConfig> unique_step(const ComposedCts& composed, const GlobalConfig& cfg,
                                        Channel c) {
    auto next = composed.channel_successors(cfg, c);
    if (next.empty()) {
        return std::nullopt;
    }
    if (next.size() > 1) {
        throw InputError("the reference system is not deterministic on channel '" +
                         composed.universe().channel_names[c.v] + "'");
    }
    return std::move(next[0].second);
}

} // namespace

WitnessDriveReport witness_drive(const GlobalAA& b, ProcessId p,
                                       const SingleSwitchSystem& ref, const Word& w,
                                       const WitnessDriveOptions& opts, const Limits& limits) {
    const DistributedAlphabet& alpha = b.alphabet();
    check_process(alpha, p);
    const Universe& u = ref.system.universe();
    WitnessDriveReport report;
    report.process = p;
    report.base = w;

    const LetterSet listens = alpha.dom_inv(p);
    if (listens == alpha.all_letters()) {
        return drive_failure(std::move(report),
                             "process '" + alpha.process_name(p) +
                                 "' listens to every channel; there is nothing to drive to");
    }

    // The channel to make current: lowest-numbered one the process skips,
    // unless the caller picked one.
    Channel target{-1};
    Letter target_letter{-1};
    if (opts.channel) {
        auto c = u.find_channel(*opts.channel);
        if (!c) {
            throw InputError("the reference system has no channel named '" + *opts.channel +
                             "'");
        }
        auto a = alpha.find_letter(*opts.channel);
        if (!a) {
            throw InputError("the machine has no letter named '" + *opts.channel + "'");
        }
        if (listens.contains(*a)) {
            throw InputError("process '" + alpha.process_name(p) + "' listens to channel '" +
                             *opts.channel + "'; pick one it skips");
        }
        target = *c;
        target_letter = *a;
    } else {
        for (int ci = 0; ci < u.channel_count(); ++ci) {
            auto a = alpha.find_letter(u.channel_names[ci]);
            if (a && !listens.contains(*a)) {
                target = Channel{ci};
                target_letter = *a;
                break;
            }
        }
        if (target.v < 0) {
            return drive_failure(std::move(report),
                                 "every channel of the reference system is one the process "
                                 "listens to");
        }
    }
    report.channel = u.channel_names[target.v];
    (void)target_letter;

    const ComposedCts composed(ref.system);
    const EquivResult pre = equiv_upto(MachineRef(b), MachineRef(composed),
                                       opts.pre_equiv_len, limits);
    if (!pre.equal) {
        report.distinguishing = pre.witness;
        return drive_failure(std::move(report),
                             "the machine and the reference system disagree on words of "
                             "length up to " +
                                 std::to_string(opts.pre_equiv_len));
    }

    const RunResult base_run = run_word(b, w);
    if (!base_run.ok()) {
        report.blocked = Word(w.begin(), w.begin() + *base_run.blocked_at + 1);
        return drive_failure(std::move(report), "the base word is not runnable in the machine");
    }
    GlobalConfig ref_cfg = composed.initial();
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto c = u.find_channel(alpha.letter_name(w[i]));
        if (!c) {
            return drive_failure(std::move(report),
                                 "letter '" + alpha.letter_name(w[i]) +
                                     "' of the base word is not a channel of the reference "
                                     "system");
        }
        auto next = unique_step(composed, ref_cfg, *c);
        if (!next) {
            report.blocked = Word(w.begin(), w.begin() + i + 1);
            return drive_failure(std::move(report),
                                 "the base word is not runnable in the reference system");
        }
        ref_cfg = std::move(*next);
    }

    // Fire the current switching channel until the target is current with an
    // empty dependence set. Each round walks one subset enumeration, so this
    // converges within a bounded number of communications.
    Word drive_machine;
    GlobalConfig machine_cfg = base_run.config;
    const std::size_t guard =
        (static_cast<std::size_t>(ref.n) + 2) * (std::size_t{1} << ref.n) * 2 + 4;
    std::size_t steps = 0;
    for (;;) {
        const SingleView view = single_shared_view(ref, ref_cfg);
        if (view.sc == target && view.dependent.empty()) {
            break;
        }
        if (++steps > guard) {
            throw InputError("the switching drive did not converge; the reference does not "
                             "behave like a switching system");
        }
        auto next = unique_step(composed, ref_cfg, view.sc);
        if (!next) {
            return drive_failure(std::move(report),
                                 "the reference system refused its own switching channel");
        }
        ref_cfg = std::move(*next);
        auto a = alpha.find_letter(u.channel_names[view.sc.v]);
        if (!a) {
            return drive_failure(std::move(report),
                                 "channel '" + u.channel_names[view.sc.v] +
                                     "' has no letter in the machine");
        }
        auto stepped = aa_step(b, machine_cfg, *a);
        if (!stepped) {
            report.drive = drive_machine;
            report.blocked = w;
            report.blocked.insert(report.blocked.end(), drive_machine.begin(),
                                  drive_machine.end());
            report.blocked.push_back(*a);
            return drive_failure(std::move(report), "the drive is not runnable in the machine");
        }
        drive_machine.push_back(*a);
        machine_cfg = std::move(*stepped);
    }
    report.drive = drive_machine;

    // Every short word over the process's own letters must stay runnable
    // from here; breadth-first, so the first failure is a shortest one.
    struct Node {
        GlobalConfig cfg;
        Word ext;
    };
    std::deque<Node> queue{{machine_cfg, {}}};
    std::size_t checked = 0;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (node.ext.size() >= static_cast<std::size_t>(opts.extension_len)) {
            continue;
        }
        for (Letter a : listens) {
            if (++checked > limits.max_explored) {
                throw ResourceError("extension check exceeded the cap of " +
                                    std::to_string(limits.max_explored));
            }
            auto stepped = aa_step(b, node.cfg, a);
            Word ext = node.ext;
            ext.push_back(a);
            if (!stepped) {
                report.extensions_checked = checked;
                report.blocked = w;
                report.blocked.insert(report.blocked.end(), drive_machine.begin(),
                                      drive_machine.end());
                report.blocked.insert(report.blocked.end(), ext.begin(), ext.end());
                return drive_failure(std::move(report),
                                     "an extension over the process's letters blocks");
            }
            queue.push_back({std::move(*stepped), std::move(ext)});
        }
    }
    report.extensions_checked = checked;
    report.ok = true;
    return report;
}

} // namespace rcts
