#include "rcts/switching.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace rcts {

Channel next_cyclic(ChannelSet D, Channel d) {
    if (!D.contains(d)) {
        return d;
    }
    const std::uint64_t above = D.raw() & ~((std::uint64_t{2} << d.v) - 1);
    if (above != 0) {
        return ChannelSet::of_raw(above).min();
    }
    return D.min();
}

Channel prev_cyclic(ChannelSet D, Channel d) {
    if (!D.contains(d)) {
        throw InputError("channel id " + std::to_string(d.v) +
                         " is not in the set it should cycle through");
    }
    const std::uint64_t below = D.raw() & ((std::uint64_t{1} << d.v) - 1);
    if (below != 0) {
        return ChannelSet::of_raw(below).max();
    }
    return D.max();
}

namespace {

// prev extended to the identity off D, matching next_cyclic.
Channel prev_ext(ChannelSet D, Channel d) {
    return D.contains(d) ? prev_cyclic(D, d) : d;
}

} // namespace

std::optional<ChannelSet> SubsetOrder::inc(ChannelSet d) const {
    auto it = index_.find(d.raw());
    if (it == index_.end()) {
        throw InputError("set is not part of this subset enumeration");
    }
    if (it->second + 1 == subsets.size()) {
        return std::nullopt;
    }
    return subsets[it->second + 1];
}

SubsetOrder make_subset_order(ChannelSet allowed, Channel sc, std::vector<ChannelSet> subsets) {
    if (allowed.contains(sc)) {
        throw InputError("the switching channel cannot be part of the enumerated subsets");
    }
    SubsetOrder order;
    order.sc = sc;
    order.allowed = allowed;
    order.subsets = std::move(subsets);
    const std::size_t expected = std::size_t{1} << allowed.size();
    if (order.subsets.size() != expected) {
        throw InputError("subset enumeration must contain every subset exactly once");
    }
    if (order.subsets.empty() || !order.subsets[0].empty()) {
        throw InputError("subset enumeration must start at the empty set");
    }
    for (std::size_t i = 0; i < order.subsets.size(); ++i) {
        if (!order.subsets[i].subset_of(allowed)) {
            throw InputError("subset enumeration leaves the allowed set");
        }
        if (!order.index_.emplace(order.subsets[i].raw(), i).second) {
            throw InputError("subset enumeration repeats a set");
        }
    }
    return order;
}

SubsetOrder size_lex_order(ChannelSet allowed, Channel sc) {
    std::vector<ChannelSet> subsets;
    for (std::uint64_t m = 0;;) {
        subsets.push_back(ChannelSet::of_raw(m));
        m = (m - allowed.raw()) & allowed.raw();
        if (m == 0) {
            break;
        }
    }
    std::sort(subsets.begin(), subsets.end(), [](ChannelSet a, ChannelSet b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        // Lexicographic on the ascending element lists.
        std::uint64_t ra = a.raw();
        std::uint64_t rb = b.raw();
        while (ra != 0 && rb != 0) {
            const int la = std::countr_zero(ra);
            const int lb = std::countr_zero(rb);
            if (la != lb) {
                return la < lb;
            }
            ra &= ra - 1;
            rb &= rb - 1;
        }
        return false;
    });
    return make_subset_order(allowed, sc, std::move(subsets));
}

namespace {

std::uint64_t pack_single(const SwitchState& s) {
    return static_cast<std::uint64_t>(s.c.v) | (static_cast<std::uint64_t>(s.sc.v) << 8) |
           (static_cast<std::uint64_t>(s.d.v) << 16) | (s.dependent.raw() << 24);
}

std::uint64_t pack_double(const TwoSwitchState& s) {
    return static_cast<std::uint64_t>(s.c.v) | (static_cast<std::uint64_t>(s.tg.v) << 8) |
           (static_cast<std::uint64_t>(s.hl.v) << 16) |
           (static_cast<std::uint64_t>(s.h.v) << 24) |
           (static_cast<std::uint64_t>(s.d.v) << 32) | (s.dependent.raw() << 40);
}

std::vector<std::string> numbered_channel_names(int count) {
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) {
        names.push_back(std::to_string(i + 1));
    }
    return names;
}

std::vector<std::string> process_names_for(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back("p" + std::to_string(i + 1));
    }
    return names;
}

std::string channel_set_text(const Universe& u, ChannelSet set) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (Channel c : set) {
        if (!first) {
            out << ",";
        }
        first = false;
        out << u.channel_names[c.v];
    }
    out << "}";
    return out.str();
}

} // namespace

std::string switch_state_name(const Universe& u, const SwitchState& s) {
    std::ostringstream out;
    out << "(c=" << u.channel_names[s.c.v] << ",sc=" << u.channel_names[s.sc.v]
        << ",D=" << channel_set_text(u, s.dependent) << ",d=" << u.channel_names[s.d.v] << ")";
    return out.str();
}

std::string two_switch_state_name(const Universe& u, const TwoSwitchState& s) {
    std::ostringstream out;
    out << "(c=" << u.channel_names[s.c.v] << ",tg=" << u.channel_names[s.tg.v]
        << ",hl=" << u.channel_names[s.hl.v] << ",h=" << u.channel_names[s.h.v]
        << ",D=" << channel_set_text(u, s.dependent) << ",d=" << u.channel_names[s.d.v] << ")";
    return out.str();
}

namespace {

// Splits "k1=v1,k2=v2,D={...},k3=v3" into pairs; commas inside braces do not
// separate fields.
std::optional<std::vector<std::pair<std::string, std::string>>> split_fields(
    const std::string& name) {
    if (name.size() < 2 || name.front() != '(' || name.back() != ')') {
        return std::nullopt;
    }
    std::vector<std::pair<std::string, std::string>> fields;
    std::string body = name.substr(1, name.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t end = pos;
        int depth = 0;
        while (end < body.size() && (depth > 0 || body[end] != ',')) {
            if (body[end] == '{') {
                ++depth;
            } else if (body[end] == '}') {
                --depth;
            }
            ++end;
        }
        const std::string field = body.substr(pos, end - pos);
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos) {
            return std::nullopt;
        }
        fields.emplace_back(field.substr(0, eq), field.substr(eq + 1));
        pos = end + 1;
        if (end == body.size()) {
            break;
        }
    }
    return fields;
}

std::optional<ChannelSet> parse_channel_set(const Universe& u, const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
        return std::nullopt;
    }
    ChannelSet set;
    const std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end = body.find(',', pos);
        if (end == std::string::npos) {
            end = body.size();
        }
        auto c = u.find_channel(body.substr(pos, end - pos));
        if (!c) {
            return std::nullopt;
        }
        set.insert(*c);
        pos = end + 1;
    }
    return set;
}

} // namespace

std::optional<SwitchState> parse_switch_state_name(const Universe& u, const std::string& name) {
    auto fields = split_fields(name);
    if (!fields || fields->size() != 4) {
        return std::nullopt;
    }
    const auto& f = *fields;
    if (f[0].first != "c" || f[1].first != "sc" || f[2].first != "D" || f[3].first != "d") {
        return std::nullopt;
    }
    auto c = u.find_channel(f[0].second);
    auto sc = u.find_channel(f[1].second);
    auto dep = parse_channel_set(u, f[2].second);
    auto d = u.find_channel(f[3].second);
    if (!c || !sc || !dep || !d) {
        return std::nullopt;
    }
    return SwitchState{*c, *sc, *dep, *d};
}

std::optional<TwoSwitchState> parse_two_switch_state_name(const Universe& u,
                                                          const std::string& name) {
    auto fields = split_fields(name);
    if (!fields || fields->size() != 6) {
        return std::nullopt;
    }
    const auto& f = *fields;
    if (f[0].first != "c" || f[1].first != "tg" || f[2].first != "hl" || f[3].first != "h" ||
        f[4].first != "D" || f[5].first != "d") {
        return std::nullopt;
    }
    auto c = u.find_channel(f[0].second);
    auto tg = u.find_channel(f[1].second);
    auto hl = u.find_channel(f[2].second);
    auto h = u.find_channel(f[3].second);
    auto dep = parse_channel_set(u, f[4].second);
    auto d = u.find_channel(f[5].second);
    if (!c || !tg || !hl || !h || !dep || !d) {
        return std::nullopt;
    }
    return TwoSwitchState{*c, *tg, *hl, *h, *dep, *d};
}

std::int32_t SingleSwitchSystem::state_index(const SwitchState& s) const {
    auto it = index_.find(pack_single(s));
    return it == index_.end() ? -1 : it->second;
}

std::int32_t DoubleSwitchSystem::state_index(const TwoSwitchState& s) const {
    auto it = index_.find(pack_double(s));
    return it == index_.end() ? -1 : it->second;
}

SingleSwitchSystem gen_single(int n, const OrderFactory& order) {
    if (n < 1 || n > 10) {
        throw InputError("process count must be between 1 and 10; the per-process state space "
                         "grows with (n+1)^3 * 2^n");
    }
    const int channels = n + 1;
    const ChannelSet all = ChannelSet::first(channels);
    Universe universe{numbered_channel_names(channels), {"t"}};

    std::vector<SubsetOrder> orders;
    for (int sc = 0; sc < channels; ++sc) {
        ChannelSet allowed = all;
        allowed.erase(Channel{sc});
        orders.push_back(order(allowed, Channel{sc}));
    }

    SingleSwitchSystem sys;
    sys.n = n;
    std::vector<std::string> state_names;
    for (int c = 0; c < channels; ++c) {
        for (int sc = 0; sc < channels; ++sc) {
            for (const ChannelSet D : orders[sc].subsets) {
                ChannelSet await = D;
                await.insert(Channel{c});
                for (Channel d : await) {
                    const SwitchState s{Channel{c}, Channel{sc}, D, d};
                    sys.index_.emplace(pack_single(s),
                                       static_cast<std::int32_t>(sys.states.size()));
                    sys.states.push_back(s);
                    state_names.push_back(switch_state_name(universe, s));
                }
            }
        }
    }

    std::vector<ChannelSet> listen;
    std::vector<CtsTransition> transitions;
    listen.reserve(sys.states.size());
    auto id_of = [&sys](const SwitchState& s) {
        const std::int32_t id = sys.state_index(s);
        if (id < 0) {
            throw InputError("generated a state outside the enumerated space");
        }
        return id;
    };
    for (std::size_t i = 0; i < sys.states.size(); ++i) {
        const SwitchState& s = sys.states[i];
        ChannelSet l;
        l.insert(s.sc);
        l.insert(s.c);
        if (s.dependent.contains(s.c)) {
            l.insert(prev_cyclic(s.dependent, s.c));
        }
        listen.push_back(l);

        const auto from = static_cast<LocalState>(i);
        // Communication on the own channel, then on its predecessor in the
        // dependence cycle. Off the cycle both collapse to a self-loop.
        const Channel pd = prev_ext(s.dependent, s.c);
        if (s.d == s.c) {
            transitions.push_back({from, 0, s.c, id_of({s.c, s.sc, s.dependent, pd})});
        }
        if (s.d == pd) {
            transitions.push_back({from, 0, pd, id_of({s.c, s.sc, s.dependent, s.c})});
        }
        // The switching channel always moves: either the next dependence set
        // is installed, or the round is over and the roles rotate.
        if (auto next_dep = orders[s.sc.v].inc(s.dependent)) {
            const Channel lead = next_dep->min();
            if (s.c == lead) {
                transitions.push_back({from, 0, s.sc, id_of({s.c, s.sc, *next_dep, s.c})});
            } else {
                transitions.push_back(
                    {from, 0, s.sc, id_of({s.c, s.sc, *next_dep, prev_ext(*next_dep, s.c)})});
            }
        } else {
            const Channel sc2 = next_cyclic(all, s.sc);
            if (s.c != sc2) {
                transitions.push_back({from, 0, s.sc, id_of({s.c, sc2, ChannelSet{}, s.c})});
            } else {
                // This process's channel becomes the switching channel; it
                // adopts the old one as its own.
                transitions.push_back({from, 0, s.sc, id_of({s.sc, sc2, ChannelSet{}, s.sc})});
            }
        }
    }

    std::vector<Cts> components;
    for (int k = 0; k < n; ++k) {
        const SwitchState init{Channel{k}, Channel{n}, ChannelSet{}, Channel{k}};
        components.emplace_back(universe, state_names, id_of(init), listen, transitions);
    }
    sys.system = CtsSystem(process_names_for(n), std::move(components));
    return sys;
}

DoubleSwitchSystem gen_double(int n, CyclePolicy policy) {
    if (n < 1 || n > 4) {
        throw InputError("process count must be between 1 and 4; the per-process state space "
                         "grows with n(n+1)(n+2)^3 * 2^(n+2)");
    }
    const int channels = n + 2;
    const ChannelSet all = ChannelSet::first(channels);
    Universe universe{numbered_channel_names(channels), {"t"}};

    DoubleSwitchSystem sys;
    sys.n = n;
    std::vector<std::string> state_names;
    for (int c = 0; c < channels; ++c) {
        for (int tg = 0; tg < channels; ++tg) {
            for (int hl = 0; hl < channels; ++hl) {
                if (hl == tg) {
                    continue;
                }
                for (int h = 0; h < channels; ++h) {
                    if (h == tg || h == hl) {
                        continue;
                    }
                    for (std::uint64_t m = 0;;) {
                        for (int d = 0; d < channels; ++d) {
                            const TwoSwitchState s{Channel{c},  Channel{tg},
                                                   Channel{hl}, Channel{h},
                                                   ChannelSet::of_raw(m), Channel{d}};
                            sys.index_.emplace(pack_double(s),
                                               static_cast<std::int32_t>(sys.states.size()));
                            sys.states.push_back(s);
                            state_names.push_back(two_switch_state_name(universe, s));
                        }
                        m = (m - all.raw()) & all.raw();
                        if (m == 0) {
                            break;
                        }
                    }
                }
            }
        }
    }

    std::vector<ChannelSet> listen;
    std::vector<CtsTransition> transitions;
    listen.reserve(sys.states.size());
    auto id_of = [&sys](const TwoSwitchState& s) {
        const std::int32_t id = sys.state_index(s);
        if (id < 0) {
            throw InputError("generated a state outside the enumerated space");
        }
        return id;
    };
    for (std::size_t i = 0; i < sys.states.size(); ++i) {
        const TwoSwitchState& s = sys.states[i];
        ChannelSet l;
        l.insert(s.tg);
        l.insert(s.hl);
        l.insert(s.c);
        if (s.dependent.contains(s.c)) {
            l.insert(prev_cyclic(s.dependent, s.c));
        }
        listen.push_back(l);

        const auto from = static_cast<LocalState>(i);
        const Channel pd = prev_ext(s.dependent, s.c);
        if (s.d == s.c) {
            transitions.push_back(
                {from, 0, s.c, id_of({s.c, s.tg, s.hl, s.h, s.dependent, pd})});
        }
        if (s.d == pd) {
            transitions.push_back(
                {from, 0, pd, id_of({s.c, s.tg, s.hl, s.h, s.dependent, s.c})});
        }
        // Toggling: the highlighted channel joins the dependence set.
        {
            ChannelSet joined = s.dependent;
            joined.insert(s.h);
            if (s.c != s.h) {
                transitions.push_back(
                    {from, 0, s.tg,
                     id_of({s.c, s.tg, s.hl, s.h, joined, prev_ext(joined, s.c)})});
            } else {
                transitions.push_back(
                    {from, 0, s.tg, id_of({s.h, s.tg, s.hl, s.h, joined, s.h})});
            }
        }
        // Highlighting: advance the highlighted channel, or rotate the roles
        // once it has walked the whole non-switching range.
        {
            ChannelSet cstar = all;
            cstar.erase(s.tg);
            cstar.erase(s.hl);
            if (s.h != cstar.max()) {
                transitions.push_back(
                    {from, 0, s.hl,
                     id_of({s.c, s.tg, s.hl, next_cyclic(cstar, s.h), s.dependent, s.d})});
            } else {
                Channel hl2 = next_cyclic(all, s.hl);
                Channel tg2;
                if (policy == CyclePolicy::Index) {
                    tg2 = next_cyclic(all, s.tg);
                } else {
                    ChannelSet without = all;
                    without.erase(hl2);
                    tg2 = next_cyclic(without, s.tg);
                }
                if (tg2 == hl2) {
                    // The skipping rotation is undefined when the toggler
                    // already sits on the new highlighter's channel; such
                    // states are unreachable from the standard start.
                    continue;
                }
                ChannelSet cstar2 = all;
                cstar2.erase(tg2);
                cstar2.erase(hl2);
                const Channel h2 = cstar2.min();
                if (s.c == tg2) {
                    transitions.push_back(
                        {from, 0, s.hl, id_of({s.tg, tg2, hl2, h2, ChannelSet{}, s.tg})});
                } else if (s.c == hl2) {
                    transitions.push_back(
                        {from, 0, s.hl, id_of({s.hl, tg2, hl2, h2, ChannelSet{}, s.hl})});
                } else {
                    transitions.push_back(
                        {from, 0, s.hl, id_of({s.c, tg2, hl2, h2, ChannelSet{}, s.c})});
                }
            }
        }
    }

    std::vector<Cts> components;
    for (int k = 0; k < n; ++k) {
        const ChannelSet cstar = ChannelSet::first(n);
        const TwoSwitchState init{Channel{k},     Channel{n}, Channel{n + 1},
                                  cstar.min(),    ChannelSet{}, Channel{k}};
        const std::int32_t init_id = sys.state_index(init);
        components.emplace_back(universe, state_names, init_id, listen, transitions);
    }
    sys.system = CtsSystem(process_names_for(n), std::move(components));
    return sys;
}

SingleView single_shared_view(const SingleSwitchSystem& sys, const GlobalConfig& cfg) {
    if (cfg.size() != static_cast<std::size_t>(sys.system.process_count())) {
        throw InputError("configuration does not match the system");
    }
    const SwitchState& first = sys.decode(cfg[0]);
    for (std::size_t p = 1; p < cfg.size(); ++p) {
        const SwitchState& s = sys.decode(cfg[p]);
        if (s.sc != first.sc || !(s.dependent == first.dependent)) {
            throw InputError("processes disagree on the switching channel or dependence set");
        }
    }
    return SingleView{first.sc, first.dependent};
}

std::vector<SingleView> switching_schedule(const SingleSwitchSystem& sys, int steps) {
    if (steps < 0) {
        throw InputError("step count must be nonnegative");
    }
    const ComposedCts composed(sys.system);
    GlobalConfig cfg = composed.initial();
    std::vector<SingleView> out{single_shared_view(sys, cfg)};
    for (int i = 0; i < steps; ++i) {
        const Channel sc = out.back().sc;
        auto next = composed.channel_successors(cfg, sc);
        if (next.size() != 1) {
            throw InputError("switching communication is not deterministic at step " +
                             std::to_string(i));
        }
        cfg = std::move(next[0].second);
        out.push_back(single_shared_view(sys, cfg));
    }
    return out;
}

std::vector<RoleCollision> role_collisions(const DoubleSwitchSystem& sys, const Limits& limits) {
    const ComposedCts composed(sys.system);
    const ReachGraph g = composed.explore(limits);
    std::vector<RoleCollision> out;
    for (std::size_t i = 0; i < g.configs.size(); ++i) {
        for (std::size_t p = 0; p < g.configs[i].size(); ++p) {
            const TwoSwitchState& s = sys.decode(g.configs[i][p]);
            if (s.c == s.tg || s.c == s.hl) {
                out.push_back({g.configs[i], g.access_word(static_cast<std::int32_t>(i)),
                               ProcessId{static_cast<std::int32_t>(p)}, s});
            }
        }
    }
    return out;
}

SingleSwitchSystem single_system_from_cts(const CtsSystem& system) {
    const int n = system.process_count();
    if (system.universe().channel_count() != n + 1) {
        throw InputError("a one-switching-channel system over n processes uses n+1 channels");
    }
    if (system.universe().content_count() != 1) {
        throw InputError("switching systems use a single message content");
    }
    SingleSwitchSystem sys;
    sys.n = n;
    const Cts& first = system.component(ProcessId{0});
    for (int p = 1; p < n; ++p) {
        if (system.component(ProcessId{p}).state_names() != first.state_names()) {
            throw InputError("switching components must share one state table");
        }
    }
    for (const auto& name : first.state_names()) {
        auto s = parse_switch_state_name(system.universe(), name);
        if (!s) {
            throw InputError("state '" + name + "' does not look like a switching state");
        }
        sys.index_.emplace(pack_single(*s), static_cast<std::int32_t>(sys.states.size()));
        sys.states.push_back(*s);
    }
    sys.system = system;
    return sys;
}

DoubleSwitchSystem double_system_from_cts(const CtsSystem& system) {
    const int n = system.process_count();
    if (system.universe().channel_count() != n + 2) {
        throw InputError("a two-switching-channel system over n processes uses n+2 channels");
    }
    if (system.universe().content_count() != 1) {
        throw InputError("switching systems use a single message content");
    }
    DoubleSwitchSystem sys;
    sys.n = n;
    const Cts& first = system.component(ProcessId{0});
    for (int p = 1; p < n; ++p) {
        if (system.component(ProcessId{p}).state_names() != first.state_names()) {
            throw InputError("switching components must share one state table");
        }
    }
    for (const auto& name : first.state_names()) {
        auto s = parse_two_switch_state_name(system.universe(), name);
        if (!s) {
            throw InputError("state '" + name + "' does not look like a switching state");
        }
        sys.index_.emplace(pack_double(*s), static_cast<std::int32_t>(sys.states.size()));
        sys.states.push_back(*s);
    }
    sys.system = system;
    return sys;
}

} // namespace rcts
