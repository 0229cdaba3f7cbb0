#include "rcts/document.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace rcts {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InputError(path + ": " + msg);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(path, "missing field '" + std::string(key) + "'");
    }
    return *it;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

const json& get_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    return j;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_string(j[i], path + "/" + std::to_string(i)));
    }
    return out;
}

std::unordered_map<std::string, int> index_names(const std::vector<std::string>& names,
                                                 const std::string& path) {
    std::unordered_map<std::string, int> map;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) {
            fail(path + "/" + std::to_string(i), "empty name");
        }
        if (!map.emplace(names[i], static_cast<int>(i)).second) {
            fail(path + "/" + std::to_string(i), "duplicate name '" + names[i] + "'");
        }
    }
    return map;
}

int resolve(const std::unordered_map<std::string, int>& map, const std::string& name,
            const std::string& path, const char* what) {
    auto it = map.find(name);
    if (it == map.end()) {
        fail(path, "unknown " + std::string(what) + " '" + name + "'");
    }
    return it->second;
}

// For name lists whose uniqueness was already checked.
std::unordered_map<std::string, int> plain_index(const std::vector<std::string>& names) {
    std::unordered_map<std::string, int> map;
    for (std::size_t i = 0; i < names.size(); ++i) {
        map.emplace(names[i], static_cast<int>(i));
    }
    return map;
}

// ---- distributed alphabets ----

DistributedAlphabet parse_alphabet(const json& j, const std::string& path) {
    get_object(j, path);
    const auto processes = string_list(field(j, path, "processes"), path + "/processes");
    const auto pidx = index_names(processes, path + "/processes");
    const json& letters = get_array(field(j, path, "letters"), path + "/letters");
    std::vector<std::string> letter_names;
    std::vector<ProcessSet> dom;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const std::string lpath = path + "/letters/" + std::to_string(i);
        letter_names.push_back(get_string(field(letters[i], lpath, "name"), lpath + "/name"));
        const auto owners = string_list(field(letters[i], lpath, "dom"), lpath + "/dom");
        ProcessSet ps;
        for (std::size_t k = 0; k < owners.size(); ++k) {
            ps.insert(ProcessId{
                resolve(pidx, owners[k], lpath + "/dom/" + std::to_string(k), "process")});
        }
        dom.push_back(ps);
    }
    try {
        return DistributedAlphabet(std::move(letter_names), processes, std::move(dom));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_alphabet(const DistributedAlphabet& alpha) {
    json letters = json::array();
    for (int a = 0; a < alpha.letter_count(); ++a) {
        json dom = json::array();
        for (ProcessId p : alpha.dom(Letter{a})) {
            dom.push_back(alpha.process_name(p));
        }
        letters.push_back({{"name", alpha.letter_name(Letter{a})}, {"dom", std::move(dom)}});
    }
    json processes = json::array();
    for (int p = 0; p < alpha.process_count(); ++p) {
        processes.push_back(alpha.process_name(ProcessId{p}));
    }
    return {{"processes", std::move(processes)}, {"letters", std::move(letters)}};
}

// ---- plain automata ----

Dfa parse_dfa(const json& j, const std::string& path) {
    DistributedAlphabet alpha =
        parse_alphabet(field(j, path, "alphabet"), path + "/alphabet");
    const auto states = string_list(field(j, path, "states"), path + "/states");
    const auto sidx = index_names(states, path + "/states");
    const LocalState initial = resolve(sidx, get_string(field(j, path, "initial"),
                                                        path + "/initial"),
                                       path + "/initial", "state");
    std::vector<std::vector<LocalState>> delta(
        states.size(), std::vector<LocalState>(alpha.letter_count(), -1));
    const json& trans = get_array(field(j, path, "transitions"), path + "/transitions");
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const std::string tpath = path + "/transitions/" + std::to_string(i);
        const int from = resolve(sidx, get_string(field(trans[i], tpath, "from"),
                                                  tpath + "/from"),
                                 tpath + "/from", "state");
        const std::string lname = get_string(field(trans[i], tpath, "letter"),
                                             tpath + "/letter");
        auto a = alpha.find_letter(lname);
        if (!a) {
            fail(tpath + "/letter", "unknown letter '" + lname + "'");
        }
        const int to = resolve(sidx, get_string(field(trans[i], tpath, "to"), tpath + "/to"),
                               tpath + "/to", "state");
        if (delta[from][a->v] != -1) {
            fail(tpath, "duplicate transition from '" + states[from] + "' on '" + lname + "'");
        }
        delta[from][a->v] = to;
    }
    std::vector<bool> accepting(states.size(), false);
    const auto marked = string_list(field(j, path, "accepting"), path + "/accepting");
    for (std::size_t i = 0; i < marked.size(); ++i) {
        accepting[resolve(sidx, marked[i], path + "/accepting/" + std::to_string(i),
                          "state")] = true;
    }
    try {
        return Dfa(std::move(alpha), states, initial, std::move(delta), std::move(accepting));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_dfa(const Dfa& d) {
    json trans = json::array();
    for (int s = 0; s < d.state_count(); ++s) {
        for (int a = 0; a < d.alphabet.letter_count(); ++a) {
            if (d.delta[s][a] >= 0) {
                trans.push_back({{"from", d.state_names[s]},
                                 {"letter", d.alphabet.letter_name(Letter{a})},
                                 {"to", d.state_names[d.delta[s][a]]}});
            }
        }
    }
    json accepting = json::array();
    for (int s = 0; s < d.state_count(); ++s) {
        if (d.accepting[s]) {
            accepting.push_back(d.state_names[s]);
        }
    }
    return {{"alphabet", serialize_alphabet(d.alphabet)},
            {"states", d.state_names},
            {"initial", d.state_names[d.initial]},
            {"transitions", std::move(trans)},
            {"accepting", std::move(accepting)}};
}

// ---- shared-action machines ----

struct StateTable {
    std::vector<std::vector<std::string>> names;
    std::vector<std::unordered_map<std::string, int>> index;
};

StateTable parse_state_table(const json& j, const std::string& path,
                             const DistributedAlphabet& alpha) {
    get_object(j, path);
    StateTable table;
    table.names.resize(alpha.process_count());
    table.index.resize(alpha.process_count());
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto p = alpha.find_process(it.key());
        if (!p) {
            fail(path, "unknown process '" + it.key() + "'");
        }
        table.names[p->v] = string_list(it.value(), path + "/" + it.key());
        table.index[p->v] = index_names(table.names[p->v], path + "/" + it.key());
    }
    for (int p = 0; p < alpha.process_count(); ++p) {
        if (table.names[p].empty()) {
            fail(path, "missing local states for process '" +
                           alpha.process_name(ProcessId{p}) + "'");
        }
    }
    return table;
}

GlobalConfig parse_config(const json& j, const std::string& path,
                          const DistributedAlphabet& alpha, const StateTable& table) {
    get_object(j, path);
    GlobalConfig cfg(alpha.process_count(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto p = alpha.find_process(it.key());
        if (!p) {
            fail(path, "unknown process '" + it.key() + "'");
        }
        cfg[p->v] = resolve(table.index[p->v], get_string(it.value(), path + "/" + it.key()),
                            path + "/" + it.key(), "state");
    }
    for (int p = 0; p < alpha.process_count(); ++p) {
        if (cfg[p] < 0) {
            fail(path, "missing entry for process '" + alpha.process_name(ProcessId{p}) + "'");
        }
    }
    return cfg;
}

json serialize_state_table(const DistributedAlphabet& alpha,
                           const std::vector<std::vector<std::string>>& names) {
    json out = json::object();
    for (int p = 0; p < alpha.process_count(); ++p) {
        out[alpha.process_name(ProcessId{p})] = names[p];
    }
    return out;
}

json serialize_config(const DistributedAlphabet& alpha,
                      const std::vector<std::vector<std::string>>& names,
                      const GlobalConfig& cfg) {
    json out = json::object();
    for (int p = 0; p < alpha.process_count(); ++p) {
        out[alpha.process_name(ProcessId{p})] = names[p][cfg[p]];
    }
    return out;
}

// The local states of exactly the participating processes, keyed by name.
GlobalAA::DomTuple parse_dom_tuple(const json& j, const std::string& path,
                                   const DistributedAlphabet& alpha, Letter a,
                                   const StateTable& table) {
    get_object(j, path);
    const ProcessSet dom = alpha.dom(a);
    if (static_cast<int>(j.size()) != dom.size()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto p = alpha.find_process(it.key());
            if (!p || !dom.contains(*p)) {
                fail(path, "process '" + it.key() + "' does not participate in letter '" +
                               alpha.letter_name(a) + "'");
            }
        }
    }
    GlobalAA::DomTuple tuple;
    for (ProcessId p : dom) {
        const std::string& pname = alpha.process_name(p);
        auto it = j.find(pname);
        if (it == j.end()) {
            fail(path, "missing entry for process '" + pname + "'");
        }
        tuple.push_back(resolve(table.index[p.v], get_string(*it, path + "/" + pname),
                                path + "/" + pname, "state"));
    }
    return tuple;
}

GlobalAA parse_global_aa(const json& j, const std::string& path) {
    DistributedAlphabet alpha =
        parse_alphabet(field(j, path, "alphabet"), path + "/alphabet");
    const StateTable table =
        parse_state_table(field(j, path, "states"), path + "/states", alpha);
    GlobalConfig initial =
        parse_config(field(j, path, "initial"), path + "/initial", alpha, table);
    std::vector<GlobalAA::DeltaMap> delta(alpha.letter_count());
    const json& rewrites = get_array(field(j, path, "rewrites"), path + "/rewrites");
    for (std::size_t i = 0; i < rewrites.size(); ++i) {
        const std::string rpath = path + "/rewrites/" + std::to_string(i);
        const std::string lname = get_string(field(rewrites[i], rpath, "letter"),
                                             rpath + "/letter");
        auto a = alpha.find_letter(lname);
        if (!a) {
            fail(rpath + "/letter", "unknown letter '" + lname + "'");
        }
        GlobalAA::DomTuple from = parse_dom_tuple(field(rewrites[i], rpath, "from"),
                                                  rpath + "/from", alpha, *a, table);
        GlobalAA::DomTuple to = parse_dom_tuple(field(rewrites[i], rpath, "to"),
                                                rpath + "/to", alpha, *a, table);
        if (!delta[a->v].emplace(std::move(from), std::move(to)).second) {
            fail(rpath, "duplicate rewrite for letter '" + lname + "'");
        }
    }
    try {
        return GlobalAA(std::move(alpha), table.names, std::move(initial), std::move(delta));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_global_aa(const GlobalAA& aa) {
    const DistributedAlphabet& alpha = aa.alphabet();
    json rewrites = json::array();
    for (int a = 0; a < alpha.letter_count(); ++a) {
        std::vector<std::pair<GlobalAA::DomTuple, GlobalAA::DomTuple>> rows(
            aa.delta(Letter{a}).begin(), aa.delta(Letter{a}).end());
        std::sort(rows.begin(), rows.end());
        for (const auto& [from, to] : rows) {
            json jf = json::object();
            json jt = json::object();
            std::size_t slot = 0;
            for (ProcessId p : alpha.dom(Letter{a})) {
                jf[alpha.process_name(p)] = aa.state_name(p, from[slot]);
                jt[alpha.process_name(p)] = aa.state_name(p, to[slot]);
                ++slot;
            }
            rewrites.push_back({{"letter", alpha.letter_name(Letter{a})},
                                {"from", std::move(jf)},
                                {"to", std::move(jt)}});
        }
    }
    return {{"alphabet", serialize_alphabet(alpha)},
            {"states", serialize_state_table(alpha, aa.state_names())},
            {"initial", serialize_config(alpha, aa.state_names(), aa.initial())},
            {"rewrites", std::move(rewrites)}};
}

LocalAA parse_local_aa(const json& j, const std::string& path) {
    DistributedAlphabet alpha =
        parse_alphabet(field(j, path, "alphabet"), path + "/alphabet");
    const StateTable table =
        parse_state_table(field(j, path, "states"), path + "/states", alpha);
    GlobalConfig initial =
        parse_config(field(j, path, "initial"), path + "/initial", alpha, table);
    std::vector<std::vector<std::vector<LocalState>>> delta(alpha.process_count());
    for (int p = 0; p < alpha.process_count(); ++p) {
        delta[p].assign(table.names[p].size(),
                        std::vector<LocalState>(alpha.letter_count(), -1));
    }
    const json& steps = get_array(field(j, path, "steps"), path + "/steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string spath = path + "/steps/" + std::to_string(i);
        const std::string pname = get_string(field(steps[i], spath, "process"),
                                             spath + "/process");
        auto p = alpha.find_process(pname);
        if (!p) {
            fail(spath + "/process", "unknown process '" + pname + "'");
        }
        const std::string lname = get_string(field(steps[i], spath, "letter"),
                                             spath + "/letter");
        auto a = alpha.find_letter(lname);
        if (!a) {
            fail(spath + "/letter", "unknown letter '" + lname + "'");
        }
        if (!alpha.dom(*a).contains(*p)) {
            fail(spath, "process '" + pname + "' does not participate in letter '" + lname +
                            "'");
        }
        const int from = resolve(table.index[p->v],
                                 get_string(field(steps[i], spath, "from"), spath + "/from"),
                                 spath + "/from", "state");
        const int to = resolve(table.index[p->v],
                               get_string(field(steps[i], spath, "to"), spath + "/to"),
                               spath + "/to", "state");
        if (delta[p->v][from][a->v] != -1) {
            fail(spath, "duplicate step for process '" + pname + "' from '" +
                            table.names[p->v][from] + "' on '" + lname + "'");
        }
        delta[p->v][from][a->v] = to;
    }
    try {
        return LocalAA(std::move(alpha), table.names, std::move(initial), std::move(delta));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_local_aa(const LocalAA& aa) {
    const DistributedAlphabet& alpha = aa.alphabet();
    json steps = json::array();
    for (int p = 0; p < alpha.process_count(); ++p) {
        for (int s = 0; s < aa.local_state_count(ProcessId{p}); ++s) {
            for (int a = 0; a < alpha.letter_count(); ++a) {
                const LocalState to = aa.delta()[p][s][a];
                if (to >= 0) {
                    steps.push_back({{"process", alpha.process_name(ProcessId{p})},
                                     {"letter", alpha.letter_name(Letter{a})},
                                     {"from", aa.state_name(ProcessId{p}, s)},
                                     {"to", aa.state_name(ProcessId{p}, to)}});
                }
            }
        }
    }
    return {{"alphabet", serialize_alphabet(alpha)},
            {"states", serialize_state_table(alpha, aa.state_names())},
            {"initial", serialize_config(alpha, aa.state_names(), aa.initial())},
            {"steps", std::move(steps)}};
}

// ---- channeled transition systems ----

Universe parse_universe(const json& j, const std::string& path) {
    get_object(j, path);
    Universe u{string_list(field(j, path, "channels"), path + "/channels"),
               string_list(field(j, path, "contents"), path + "/contents")};
    index_names(u.channel_names, path + "/channels");
    index_names(u.content_names, path + "/contents");
    return u;
}

json serialize_universe(const Universe& u) {
    return {{"channels", u.channel_names}, {"contents", u.content_names}};
}

struct ComponentBody {
    std::vector<std::string> states;
    LocalState initial = 0;
    std::vector<ChannelSet> listen;
    std::vector<CtsTransition> transitions;
};

ComponentBody parse_component_body(const json& j, const std::string& path, const Universe& u) {
    ComponentBody body;
    body.states = string_list(field(j, path, "states"), path + "/states");
    const auto sidx = index_names(body.states, path + "/states");
    const auto cidx = plain_index(u.channel_names);
    const auto tidx = plain_index(u.content_names);
    body.initial = resolve(sidx, get_string(field(j, path, "initial"), path + "/initial"),
                           path + "/initial", "state");
    body.listen.assign(body.states.size(), ChannelSet{});
    std::vector<bool> seen(body.states.size(), false);
    const json& listen = get_object(field(j, path, "listen"), path + "/listen");
    for (auto it = listen.begin(); it != listen.end(); ++it) {
        const std::string lpath = path + "/listen/" + it.key();
        const int s = resolve(sidx, it.key(), path + "/listen", "state");
        seen[s] = true;
        const auto channels = string_list(it.value(), lpath);
        for (std::size_t k = 0; k < channels.size(); ++k) {
            body.listen[s].insert(Channel{
                resolve(cidx, channels[k], lpath + "/" + std::to_string(k), "channel")});
        }
    }
    for (std::size_t s = 0; s < body.states.size(); ++s) {
        if (!seen[s]) {
            fail(path + "/listen", "missing listening set for state '" + body.states[s] + "'");
        }
    }
    const json& trans = get_array(field(j, path, "transitions"), path + "/transitions");
    for (std::size_t i = 0; i < trans.size(); ++i) {
        const std::string tpath = path + "/transitions/" + std::to_string(i);
        CtsTransition t;
        t.from = resolve(sidx, get_string(field(trans[i], tpath, "from"), tpath + "/from"),
                         tpath + "/from", "state");
        t.content = resolve(tidx,
                            get_string(field(trans[i], tpath, "content"), tpath + "/content"),
                            tpath + "/content", "content");
        t.channel = Channel{resolve(
            cidx, get_string(field(trans[i], tpath, "channel"), tpath + "/channel"),
            tpath + "/channel", "channel")};
        t.to = resolve(sidx, get_string(field(trans[i], tpath, "to"), tpath + "/to"),
                       tpath + "/to", "state");
        body.transitions.push_back(t);
    }
    return body;
}

Cts parse_cts(const json& j, const std::string& path) {
    Universe u = parse_universe(field(j, path, "universe"), path + "/universe");
    ComponentBody body = parse_component_body(j, path, u);
    try {
        return Cts(std::move(u), std::move(body.states), body.initial, std::move(body.listen),
                   std::move(body.transitions));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_component_body(const Cts& c) {
    const Universe& u = c.universe();
    json listen = json::object();
    for (int s = 0; s < c.state_count(); ++s) {
        json channels = json::array();
        for (Channel ch : c.listen(s)) {
            channels.push_back(u.channel_names[ch.v]);
        }
        listen[c.state_name(s)] = std::move(channels);
    }
    json trans = json::array();
    for (const CtsTransition& t : c.transitions()) {
        trans.push_back({{"from", c.state_name(t.from)},
                         {"content", u.content_names[t.content]},
                         {"channel", u.channel_names[t.channel.v]},
                         {"to", c.state_name(t.to)}});
    }
    return {{"states", c.state_names()},
            {"initial", c.state_name(c.initial())},
            {"listen", std::move(listen)},
            {"transitions", std::move(trans)}};
}

json serialize_cts(const Cts& c) {
    json out = serialize_component_body(c);
    out["universe"] = serialize_universe(c.universe());
    return out;
}

CtsSystem parse_cts_system(const json& j, const std::string& path) {
    Universe u = parse_universe(field(j, path, "universe"), path + "/universe");
    const json& procs = get_array(field(j, path, "processes"), path + "/processes");
    std::vector<std::string> names;
    std::vector<Cts> components;
    for (std::size_t i = 0; i < procs.size(); ++i) {
        const std::string ppath = path + "/processes/" + std::to_string(i);
        names.push_back(get_string(field(procs[i], ppath, "name"), ppath + "/name"));
        ComponentBody body = parse_component_body(procs[i], ppath, u);
        try {
            components.emplace_back(u, std::move(body.states), body.initial,
                                    std::move(body.listen), std::move(body.transitions));
        } catch (const InputError& e) {
            fail(ppath, e.what());
        }
    }
    try {
        return CtsSystem(std::move(names), std::move(components));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

json serialize_cts_system(const CtsSystem& sys) {
    json procs = json::array();
    for (int p = 0; p < sys.process_count(); ++p) {
        json entry = serialize_component_body(sys.component(ProcessId{p}));
        entry["name"] = sys.process_name(ProcessId{p});
        procs.push_back(std::move(entry));
    }
    return {{"universe", serialize_universe(sys.universe())},
            {"processes", std::move(procs)}};
}

// ---- reports ----

Report parse_report(const json& j, const std::string& path) {
    Report r;
    r.type = get_string(field(j, path, "type"), path + "/type");
    if (r.type.empty()) {
        fail(path + "/type", "empty report type");
    }
    r.payload = field(j, path, "payload").dump();
    return r;
}

json serialize_report(const Report& r) {
    json payload;
    try {
        payload = json::parse(r.payload);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("report payload is not valid JSON: ") + e.what());
    }
    return {{"type", r.type}, {"payload", std::move(payload)}};
}

} // namespace

std::string Document::kind() const {
    static const char* const names[] = {"distributed-alphabet", "dfa",        "global-aa",
                                        "local-aa",             "cts",        "cts-system",
                                        "report"};
    return names[body.index()];
}

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("/: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        fail("/", "expected an object");
    }
    const std::string kind = get_string(field(j, "/", "kind"), "/kind");
    const std::string version = get_string(field(j, "/", "version"), "/version");
    if (version != "1") {
        fail("/version", "unsupported version '" + version + "'");
    }
    const json& body = field(j, "/", "body");
    if (kind == "distributed-alphabet") {
        return Document{parse_alphabet(body, "/body")};
    }
    if (kind == "dfa") {
        return Document{parse_dfa(body, "/body")};
    }
    if (kind == "global-aa") {
        return Document{parse_global_aa(body, "/body")};
    }
    if (kind == "local-aa") {
        return Document{parse_local_aa(body, "/body")};
    }
    if (kind == "cts") {
        return Document{parse_cts(body, "/body")};
    }
    if (kind == "cts-system") {
        return Document{parse_cts_system(body, "/body")};
    }
    if (kind == "report") {
        return Document{parse_report(get_object(body, "/body"), "/body")};
    }
    fail("/kind", "unknown kind '" + kind + "'");
}

std::string serialize_document(const Document& doc) {
    const json body = std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DistributedAlphabet>) {
                return serialize_alphabet(m);
            } else if constexpr (std::is_same_v<T, Dfa>) {
                return serialize_dfa(m);
            } else if constexpr (std::is_same_v<T, GlobalAA>) {
                return serialize_global_aa(m);
            } else if constexpr (std::is_same_v<T, LocalAA>) {
                return serialize_local_aa(m);
            } else if constexpr (std::is_same_v<T, Cts>) {
                return serialize_cts(m);
            } else if constexpr (std::is_same_v<T, CtsSystem>) {
                return serialize_cts_system(m);
            } else {
                return serialize_report(m);
            }
        },
        doc.body);
    const json out = {{"kind", doc.kind()}, {"version", "1"}, {"body", body}};
    return out.dump(2) + "\n";
}

// ---- report payloads and their text twins ----

namespace {

json word_names(const DistributedAlphabet& alpha, const Word& w) {
    json out = json::array();
    for (Letter a : w) {
        out.push_back(alpha.letter_name(a));
    }
    return out;
}

std::string word_text(const DistributedAlphabet& alpha, const Word& w) {
    if (w.empty()) {
        return "(empty word)";
    }
    std::string out;
    for (Letter a : w) {
        if (!out.empty()) {
            out += " ";
        }
        out += alpha.letter_name(a);
    }
    return out;
}

std::string joined(const std::vector<std::string>& parts) {
    if (parts.empty()) {
        return "(empty word)";
    }
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) {
            out += " ";
        }
        out += part;
    }
    return out;
}

std::string config_text(const DistributedAlphabet& alpha,
                        const std::vector<std::vector<std::string>>& state_names,
                        const GlobalConfig& cfg) {
    std::string out = "(";
    for (int p = 0; p < alpha.process_count(); ++p) {
        if (p > 0) {
            out += "|";
        }
        out += state_names[p][cfg[p]];
    }
    return out + ")";
}

} // namespace

std::string analysis_payload(const DistributedAlphabet& alpha,
                             const std::vector<std::vector<std::string>>& state_names,
                             const AnalysisReport& report) {
    json procs = json::array();
    for (const ProcessAnalysis& pa : report.processes) {
        json entry;
        entry["process"] = alpha.process_name(pa.process);
        entry["verdict"] = verdict_name(pa.verdict);
        json listens = json::array();
        for (Letter a : pa.listens) {
            listens.push_back(alpha.letter_name(a));
        }
        entry["listens"] = std::move(listens);
        entry["reachable"] = pa.reachable;
        if (pa.verdict == ProcessVerdict::Trivializable) {
            json core = json::array();
            for (LocalState s : pa.core) {
                core.push_back(state_names[pa.process.v][s]);
            }
            entry["core"] = std::move(core);
            entry["max_drive"] = pa.max_drive;
            entry["witness_access"] = word_names(alpha, pa.witness_access);
            entry["witness_drive"] = word_names(alpha, pa.witness_drive);
        }
        if (pa.verdict == ProcessVerdict::NeitherDetected && pa.stuck) {
            entry["stuck"] = config_text(alpha, state_names, *pa.stuck);
            entry["stuck_access"] = word_names(alpha, pa.stuck_access);
        }
        procs.push_back(std::move(entry));
    }
    const json out = {{"processes", std::move(procs)}, {"all_good", report.all_good()}};
    return out.dump();
}

std::string analysis_text(const DistributedAlphabet& alpha,
                          const std::vector<std::vector<std::string>>& state_names,
                          const AnalysisReport& report) {
    std::ostringstream out;
    for (const ProcessAnalysis& pa : report.processes) {
        out << alpha.process_name(pa.process) << ": " << verdict_name(pa.verdict);
        switch (pa.verdict) {
        case ProcessVerdict::FullyListening:
            out << " (participates in every letter; " << pa.reachable
                << " reachable configurations)";
            break;
        case ProcessVerdict::Trivializable:
            out << " (" << pa.core.size() << (pa.core.size() == 1 ? " core state" : " core states")
                << "; worst drive " << pa.max_drive
                << (pa.max_drive == 1 ? " step" : " steps");
            if (pa.max_drive > 0) {
                out << ", e.g. \"" << word_text(alpha, pa.witness_drive) << "\" after \""
                    << word_text(alpha, pa.witness_access) << "\"";
            }
            out << ")";
            break;
        case ProcessVerdict::NeitherDetected:
            if (pa.stuck) {
                out << " (no non-blocking core reachable from "
                    << config_text(alpha, state_names, *pa.stuck) << " after \""
                    << word_text(alpha, pa.stuck_access) << "\")";
            }
            break;
        }
        out << "\n";
    }
    return out.str();
}

std::string equiv_payload(const EquivResult& result, int bound) {
    json out;
    out["bound"] = bound;
    out["equal"] = result.equal;
    if (!result.equal) {
        out["witness"] = result.witness;
        out["only_in"] = result.only_in;
    }
    return out.dump();
}

std::string equiv_text(const EquivResult& result, int bound) {
    std::ostringstream out;
    if (result.equal) {
        out << "languages agree on every word of length <= " << bound << "\n";
    } else {
        out << "languages differ: \"" << joined(result.witness) << "\" runs only in the "
            << (result.only_in == 1 ? "first" : "second") << " machine\n";
    }
    return out.str();
}

std::string witness_payload(const DistributedAlphabet& alpha,
                            const WitnessDriveReport& report) {
    json out;
    out["ok"] = report.ok;
    out["process"] = alpha.process_name(report.process);
    if (!report.channel.empty()) {
        out["channel"] = report.channel;
    }
    out["base"] = word_names(alpha, report.base);
    out["drive"] = word_names(alpha, report.drive);
    out["extensions_checked"] = report.extensions_checked;
    if (!report.ok) {
        out["failure"] = report.failure;
        if (!report.blocked.empty()) {
            out["blocked"] = word_names(alpha, report.blocked);
        }
        if (!report.distinguishing.empty()) {
            out["distinguishing"] = report.distinguishing;
        }
    }
    return out.dump();
}

std::string witness_text(const DistributedAlphabet& alpha, const WitnessDriveReport& report) {
    std::ostringstream out;
    out << "process " << alpha.process_name(report.process);
    if (report.ok) {
        out << ": drive to channel " << report.channel << " via \""
            << word_text(alpha, report.drive) << "\" succeeded; " << report.extensions_checked
            << " extensions stay runnable\n";
    } else {
        out << ": " << report.failure << "\n";
        if (!report.blocked.empty()) {
            out << "  blocked word: \"" << word_text(alpha, report.blocked) << "\"\n";
        }
        if (!report.distinguishing.empty()) {
            out << "  distinguishing word: \"" << joined(report.distinguishing) << "\"\n";
        }
    }
    return out.str();
}

std::string schedule_payload(const Universe& u, const std::vector<SingleView>& schedule) {
    json steps = json::array();
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        json dependent = json::array();
        for (Channel c : schedule[i].dependent) {
            dependent.push_back(u.channel_names[c.v]);
        }
        steps.push_back({{"comms", i},
                         {"sc", u.channel_names[schedule[i].sc.v]},
                         {"dependent", std::move(dependent)}});
    }
    const json out = {{"steps", std::move(steps)}};
    return out.dump();
}

std::string schedule_text(const Universe& u, const std::vector<SingleView>& schedule) {
    std::ostringstream out;
    out << "comms  sc  dependent\n";
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        std::string dep = "{";
        bool first = true;
        for (Channel c : schedule[i].dependent) {
            if (!first) {
                dep += ",";
            }
            first = false;
            dep += u.channel_names[c.v];
        }
        dep += "}";
        out.width(5);
        out << i << "  " << u.channel_names[schedule[i].sc.v] << "  " << dep << "\n";
    }
    return out.str();
}

} // namespace rcts
