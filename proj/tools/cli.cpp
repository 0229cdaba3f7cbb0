#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcts/alphabet.hpp"
#include "rcts/analysis.hpp"
#include "rcts/automata.hpp"
#include "rcts/cts.hpp"
#include "rcts/document.hpp"
#include "rcts/dot.hpp"
#include "rcts/error.hpp"
#include "rcts/switching.hpp"
#include "rcts/translate.hpp"

namespace rcts::cli {

namespace {

using nlohmann::json;

// The state-space cap honored by every verb; RCTS_STATE_CAP overrides the
// built-in default.
Limits env_limits() {
    Limits limits;
    const char* cap = std::getenv("RCTS_STATE_CAP");
    if (cap == nullptr) {
        return limits;
    }
    const std::string text(cap);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw InputError("RCTS_STATE_CAP must be a positive integer, got '" + text + "'");
    }
    limits.max_explored = value;
    return limits;
}

std::string read_all(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

Document load_document(const std::string& path, std::istream& in) {
    try {
        return parse_document(read_all(path, in));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

const GlobalAA& as_global_aa(const Document& doc, const std::string& path) {
    if (const auto* m = std::get_if<GlobalAA>(&doc.body)) {
        return *m;
    }
    throw InputError(path + ": expected a global-aa document, got '" + doc.kind() + "'");
}

// A lone transition system is promoted to a one-process system so every
// verb that wants a system also accepts plain cts documents.
CtsSystem as_cts_system(const Document& doc, const std::string& path) {
    if (const auto* m = std::get_if<CtsSystem>(&doc.body)) {
        return *m;
    }
    if (const auto* m = std::get_if<Cts>(&doc.body)) {
        return CtsSystem({"p1"}, {*m});
    }
    throw InputError(path + ": expected a cts-system or cts document, got '" + doc.kind() +
                     "'");
}

std::vector<std::string> split_names(const std::string& text) {
    std::istringstream stream(text);
    std::vector<std::string> names;
    std::string name;
    while (stream >> name) {
        names.push_back(name);
    }
    return names;
}

Word letter_word(const DistributedAlphabet& alpha, const std::string& text) {
    Word w;
    for (const std::string& name : split_names(text)) {
        const auto a = alpha.find_letter(name);
        if (!a) {
            throw InputError("unknown letter '" + name + "'");
        }
        w.push_back(*a);
    }
    return w;
}

Word channel_word(const Universe& u, const std::string& text) {
    Word w;
    for (const std::string& name : split_names(text)) {
        const auto c = u.find_channel(name);
        if (!c) {
            throw InputError("unknown channel '" + name + "'");
        }
        w.push_back(*c);
    }
    return w;
}

// Wraps any runnable document kind for by-name language queries. The
// composed product of a cts/cts-system lives in `scratch` so the returned
// view stays valid as long as the caller keeps both objects around.
MachineRef make_ref(const Document& doc, std::optional<ComposedCts>& scratch,
                    const std::string& path) {
    if (const auto* m = std::get_if<GlobalAA>(&doc.body)) {
        return MachineRef(*m);
    }
    if (const auto* m = std::get_if<LocalAA>(&doc.body)) {
        return MachineRef(*m);
    }
    if (const auto* m = std::get_if<Cts>(&doc.body)) {
        scratch.emplace(compose({*m}));
        return MachineRef(*scratch);
    }
    if (const auto* m = std::get_if<CtsSystem>(&doc.body)) {
        scratch.emplace(*m);
        return MachineRef(*scratch);
    }
    throw InputError(path + ": a '" + doc.kind() + "' document is not a runnable machine");
}

void emit_report(std::ostream& out, const std::string& type, const json& payload) {
    out << serialize_document(Document{Report{type, payload.dump()}});
}

json word_json(const DistributedAlphabet& alpha, const Word& w) {
    json names = json::array();
    for (Letter a : w) {
        names.push_back(alpha.letter_name(a));
    }
    return names;
}

struct GenArgs {
    int n = 0;
    std::string order = "size-lex";
    std::string cycle = "index";
};

struct TranslateArgs {
    std::string mode;
    std::string input = "-";
    bool resolve_lex = false;
    std::size_t full_product_cap = TranslateOptions{}.full_product_cap;
    std::string executor;
    std::vector<std::string> listen;
};

int do_translate(const TranslateArgs& args, const Limits& limits, std::istream& in,
                 std::ostream& out) {
    const Document doc = load_document(args.input, in);
    TranslateOptions options;
    options.full_product_cap = args.full_product_cap;
    options.limits = limits;
    const NondetPolicy policy =
        args.resolve_lex ? NondetPolicy::LexSmallest : NondetPolicy::Reject;

    const bool wants_executor = args.mode == "cts-to-aa-executor";
    if (!args.executor.empty() && !wants_executor) {
        throw InputError("--executor only applies to cts-to-aa-executor");
    }
    if (!args.listen.empty() && !wants_executor) {
        throw InputError("--listen only applies to cts-to-aa-executor");
    }

    const Document result = [&]() -> Document {
        if (args.mode == "aa-to-cts") {
            return Document{aa_to_cts(as_global_aa(doc, args.input))};
        }
        if (args.mode == "laa-to-cts") {
            const auto* m = std::get_if<LocalAA>(&doc.body);
            if (m == nullptr) {
                throw InputError(args.input + ": expected a local-aa document, got '" +
                                 doc.kind() + "'");
            }
            return Document{laa_to_cts(*m)};
        }
        if (args.mode == "cts-to-aa") {
            return Document{cts_to_aa(as_cts_system(doc, args.input), policy, options)};
        }
        if (args.mode == "cts-to-laa") {
            return Document{cts_to_laa(as_cts_system(doc, args.input))};
        }
        const CtsSystem& sys = as_cts_system(doc, args.input);
        if (args.executor.empty()) {
            throw InputError("cts-to-aa-executor requires --executor");
        }
        ExecutorChoice choice;
        choice.listen_sets.assign(sys.process_count(), ChannelSet{});
        choice.executor = ProcessId{-1};
        const auto find_process = [&](const std::string& name) -> ProcessId {
            for (int p = 0; p < sys.process_count(); ++p) {
                if (sys.process_name(ProcessId{p}) == name) {
                    return ProcessId{p};
                }
            }
            throw InputError("unknown process '" + name + "'");
        };
        choice.executor = find_process(args.executor);
        for (const std::string& entry : args.listen) {
            const auto eq = entry.find('=');
            if (eq == std::string::npos) {
                throw InputError("--listen expects PROCESS=CH1,CH2,..., got '" + entry + "'");
            }
            const ProcessId p = find_process(entry.substr(0, eq));
            ChannelSet set;
            std::istringstream channels(entry.substr(eq + 1));
            std::string name;
            while (std::getline(channels, name, ',')) {
                if (name.empty()) {
                    continue;
                }
                const auto c = sys.universe().find_channel(name);
                if (!c) {
                    throw InputError("unknown channel '" + name + "'");
                }
                set.insert(*c);
            }
            choice.listen_sets[p.v] = set;
        }
        return Document{cts_to_aa_executor(sys, choice, policy, options)};
    }();
    out << serialize_document(result);
    return 0;
}

struct RunArgs {
    std::string input = "-";
    std::string word;
    bool as_json = false;
};

int do_run(const RunArgs& args, std::istream& in, std::ostream& out) {
    const Document doc = load_document(args.input, in);

    // Letter words drive the automata kinds directly.
    const auto report_aa = [&](const auto& machine) {
        const DistributedAlphabet& alpha = machine.alphabet();
        const Word w = letter_word(alpha, args.word);
        const RunResult result = run_word(machine, w);
        if (args.as_json) {
            json payload{{"ok", result.ok()}, {"word", word_json(alpha, w)}};
            payload["config"] = machine.config_name(result.config);
            if (result.blocked_at) {
                payload["blocked_at"] = *result.blocked_at;
                payload["blocked_on"] = alpha.letter_name(w[*result.blocked_at]);
            }
            emit_report(out, "run", payload);
        } else if (result.ok()) {
            out << "ran to " << machine.config_name(result.config) << "\n";
        } else {
            out << "blocked at index " << *result.blocked_at << " on letter '"
                << alpha.letter_name(w[*result.blocked_at]) << "' in "
                << machine.config_name(result.config) << "\n";
        }
        return result.ok() ? 0 : 1;
    };

    // Channel words drive the composed product existentially.
    const auto report_composed = [&](const ComposedCts& composed) {
        const Universe& u = composed.universe();
        const Word w = channel_word(u, args.word);
        const RunResultCts result = run_channel_word(composed, w);
        if (args.as_json) {
            json payload{{"ok", result.ok()}};
            json word_names = json::array();
            for (Letter c : w) {
                word_names.push_back(u.channel_names[c.v]);
            }
            payload["word"] = word_names;
            json configs = json::array();
            for (const GlobalConfig& cfg : result.configs) {
                configs.push_back(composed.config_name(cfg));
            }
            payload["configs"] = configs;
            if (result.blocked_at) {
                payload["blocked_at"] = *result.blocked_at;
                payload["blocked_on"] = u.channel_names[w[*result.blocked_at].v];
            }
            emit_report(out, "run", payload);
        } else if (result.ok()) {
            out << "ran; " << result.configs.size() << " possible end configuration"
                << (result.configs.size() == 1 ? "" : "s") << "\n";
            for (const GlobalConfig& cfg : result.configs) {
                out << "  " << composed.config_name(cfg) << "\n";
            }
        } else {
            out << "blocked at index " << *result.blocked_at << " on channel '"
                << u.channel_names[w[*result.blocked_at].v] << "'\n";
        }
        return result.ok() ? 0 : 1;
    };

    if (const auto* m = std::get_if<GlobalAA>(&doc.body)) {
        return report_aa(*m);
    }
    if (const auto* m = std::get_if<LocalAA>(&doc.body)) {
        return report_aa(*m);
    }
    if (const auto* m = std::get_if<Cts>(&doc.body)) {
        return report_composed(compose({*m}));
    }
    if (const auto* m = std::get_if<CtsSystem>(&doc.body)) {
        return report_composed(ComposedCts(*m));
    }
    throw InputError(args.input + ": a '" + doc.kind() + "' document is not a runnable machine");
}

} // namespace

int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"workbench for asynchronous automata and channeled transition systems"};
    app.name("rcts");
    app.require_subcommand(1);

    int rc = 0;
    Limits limits;

    // gen: emit one of the switching-channel families as a cts-system.
    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a switching-channel system");
    gen->require_subcommand(1);
    CLI::App* gen_single_cmd =
        gen->add_subcommand("single", "one switching channel over n processes");
    gen_single_cmd->add_option("--n", gen_args.n, "number of processes")->required();
    gen_single_cmd
        ->add_option("--order", gen_args.order, "dependence-set walk order")
        ->check(CLI::IsMember({"size-lex"}))
        ->capture_default_str();
    gen_single_cmd->callback([&] {
        const SingleSwitchSystem sys = gen_single(gen_args.n);
        out << serialize_document(Document{sys.system});
    });
    CLI::App* gen_double_cmd =
        gen->add_subcommand("double", "toggler and highlighter channels over n processes");
    gen_double_cmd->add_option("--n", gen_args.n, "number of processes")->required();
    gen_double_cmd
        ->add_option("--cycle", gen_args.cycle, "role rotation policy")
        ->check(CLI::IsMember({"index", "disjoint"}))
        ->capture_default_str();
    gen_double_cmd->callback([&] {
        const CyclePolicy policy =
            gen_args.cycle == "disjoint" ? CyclePolicy::Disjoint : CyclePolicy::Index;
        const DoubleSwitchSystem sys = gen_double(gen_args.n, policy);
        out << serialize_document(Document{sys.system});
    });

    // compose: materialize the reachable synchronous product as one cts.
    std::string compose_input = "-";
    CLI::App* compose_cmd =
        app.add_subcommand("compose", "reachable synchronous product as a single cts");
    compose_cmd->add_option("input", compose_input, "cts or cts-system document, - for stdin");
    compose_cmd->callback([&] {
        const Document doc = load_document(compose_input, in);
        const ComposedCts composed(as_cts_system(doc, compose_input));
        out << serialize_document(Document{composed_to_cts(composed, limits)});
    });

    // translate: the four directions plus the executor variant.
    TranslateArgs translate_args;
    CLI::App* translate_cmd =
        app.add_subcommand("translate", "convert between automata and cts systems");
    translate_cmd->add_option("mode", translate_args.mode, "translation direction")
        ->required()
        ->check(CLI::IsMember(
            {"aa-to-cts", "laa-to-cts", "cts-to-aa", "cts-to-laa", "cts-to-aa-executor"}));
    translate_cmd->add_option("input", translate_args.input, "input document, - for stdin");
    translate_cmd->add_flag("--resolve-lex", translate_args.resolve_lex,
                            "resolve nondeterministic channels by least (content, successor)");
    translate_cmd->add_option("--full-product-cap", translate_args.full_product_cap,
                              "state-product size beyond which only the reachable part is "
                              "tabulated");
    translate_cmd->add_option("--executor", translate_args.executor,
                              "process that tracks the whole composition");
    translate_cmd
        ->add_option("--listen", translate_args.listen,
                     "PROCESS=CH1,CH2 listening set for a non-executor (repeatable)")
        ->type_size(1)
        ->allow_extra_args(false);
    translate_cmd->callback([&] { rc = do_translate(translate_args, limits, in, out); });

    // run: drive one word and report where it ends or blocks.
    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "run a word on a machine");
    run_cmd->add_option("input", run_args.input, "machine document, - for stdin");
    run_cmd->add_option("--word", run_args.word,
                        "space-separated letter names (channel names for cts kinds)");
    run_cmd->add_flag("--json", run_args.as_json, "emit a report document");
    run_cmd->callback([&] { rc = do_run(run_args, in, out); });

    // lang: enumerate the bounded language.
    std::string lang_input = "-";
    int lang_max_len = 0;
    bool lang_json = false;
    CLI::App* lang_cmd = app.add_subcommand("lang", "list all runnable words up to a length");
    lang_cmd->add_option("input", lang_input, "machine document, - for stdin");
    lang_cmd->add_option("--max-len", lang_max_len, "maximum word length")->required();
    lang_cmd->add_flag("--json", lang_json, "emit a report document");
    lang_cmd->callback([&] {
        const Document doc = load_document(lang_input, in);
        std::optional<ComposedCts> scratch;
        const MachineRef ref = make_ref(doc, scratch, lang_input);
        const std::set<std::vector<std::string>> words = ref.language(lang_max_len, limits);
        if (lang_json) {
            json list = json::array();
            for (const auto& w : words) {
                list.push_back(w);
            }
            emit_report(out, "language",
                        json{{"max_len", lang_max_len}, {"count", words.size()},
                             {"words", list}});
        } else {
            for (const auto& w : words) {
                if (w.empty()) {
                    out << "(empty word)\n";
                    continue;
                }
                for (std::size_t i = 0; i < w.size(); ++i) {
                    out << (i ? " " : "") << w[i];
                }
                out << "\n";
            }
            err << words.size() << " words of length <= " << lang_max_len << "\n";
        }
    });

    // equiv: compare two bounded languages.
    std::string equiv_a;
    std::string equiv_b;
    int equiv_max_len = 0;
    bool equiv_json = false;
    CLI::App* equiv_cmd =
        app.add_subcommand("equiv", "compare the bounded languages of two machines");
    equiv_cmd->add_option("first", equiv_a, "first machine document")->required();
    equiv_cmd->add_option("second", equiv_b, "second machine document")->required();
    equiv_cmd->add_option("--max-len", equiv_max_len, "maximum word length")->required();
    equiv_cmd->add_flag("--json", equiv_json, "emit a report document");
    equiv_cmd->callback([&] {
        const Document doc_a = load_document(equiv_a, in);
        const Document doc_b = load_document(equiv_b, in);
        std::optional<ComposedCts> scratch_a;
        std::optional<ComposedCts> scratch_b;
        const MachineRef ref_a = make_ref(doc_a, scratch_a, equiv_a);
        const MachineRef ref_b = make_ref(doc_b, scratch_b, equiv_b);
        const EquivResult result = equiv_upto(ref_a, ref_b, equiv_max_len, limits);
        if (equiv_json) {
            out << serialize_document(
                Document{Report{"equivalence", equiv_payload(result, equiv_max_len)}});
        } else {
            out << equiv_text(result, equiv_max_len);
        }
        rc = result.equal ? 0 : 1;
    });

    // analyze: classify each process as fully-listening or trivializable.
    std::string analyze_input = "-";
    std::string analyze_process_name;
    bool analyze_json = false;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "classify processes of an asynchronous automaton");
    analyze_cmd->add_option("input", analyze_input, "global-aa or local-aa document");
    analyze_cmd->add_option("--process", analyze_process_name, "restrict to one process");
    analyze_cmd->add_flag("--json", analyze_json, "emit a report document");
    analyze_cmd->callback([&] {
        const Document doc = load_document(analyze_input, in);
        const auto run_analysis = [&](const auto& machine) {
            const DistributedAlphabet& alpha = machine.alphabet();
            AnalysisReport report;
            if (analyze_process_name.empty()) {
                report = analyze(machine, limits);
            } else {
                const auto p = alpha.find_process(analyze_process_name);
                if (!p) {
                    throw InputError("unknown process '" + analyze_process_name + "'");
                }
                report.processes.push_back(analyze_process(machine, *p, limits));
            }
            if (analyze_json) {
                out << serialize_document(Document{Report{
                    "analysis", analysis_payload(alpha, machine.state_names(), report)}});
            } else {
                out << analysis_text(alpha, machine.state_names(), report);
            }
            rc = report.all_good() ? 0 : 1;
        };
        if (const auto* m = std::get_if<GlobalAA>(&doc.body)) {
            run_analysis(*m);
        } else if (const auto* m = std::get_if<LocalAA>(&doc.body)) {
            run_analysis(*m);
        } else {
            throw InputError(analyze_input + ": expected a global-aa or local-aa document, got '" +
                             doc.kind() + "'");
        }
    });

    // witness: mechanized non-blocking drive against a reference system.
    std::string witness_input = "-";
    std::string witness_ref;
    std::string witness_process;
    std::string witness_word;
    WitnessDriveOptions witness_opts;
    std::string witness_channel;
    bool witness_json = false;
    CLI::App* witness_cmd = app.add_subcommand(
        "witness", "drive a process of an automaton to a skipped channel and extend");
    witness_cmd->add_option("input", witness_input, "global-aa document");
    witness_cmd->add_option("--ref", witness_ref, "single-switching cts-system document")
        ->required();
    witness_cmd->add_option("--process", witness_process, "process to check")->required();
    witness_cmd->add_option("--word", witness_word, "starting word, space-separated letters");
    witness_cmd->add_option("--channel", witness_channel, "channel to drive to");
    witness_cmd->add_option("--pre-equiv-len", witness_opts.pre_equiv_len,
                            "language agreement pre-check bound")
        ->capture_default_str();
    witness_cmd->add_option("--extension-len", witness_opts.extension_len,
                            "extension length bound")
        ->capture_default_str();
    witness_cmd->add_flag("--json", witness_json, "emit a report document");
    witness_cmd->callback([&] {
        const Document doc = load_document(witness_input, in);
        const GlobalAA& machine = as_global_aa(doc, witness_input);
        const Document ref_doc = load_document(witness_ref, in);
        const SingleSwitchSystem ref = single_system_from_cts(as_cts_system(ref_doc, witness_ref));
        const DistributedAlphabet& alpha = machine.alphabet();
        const auto p = alpha.find_process(witness_process);
        if (!p) {
            throw InputError("unknown process '" + witness_process + "'");
        }
        if (!witness_channel.empty()) {
            witness_opts.channel = witness_channel;
        }
        const Word w = letter_word(alpha, witness_word);
        const WitnessDriveReport report =
            witness_drive(machine, *p, ref, w, witness_opts, limits);
        if (witness_json) {
            out << serialize_document(
                Document{Report{"witness-drive", witness_payload(alpha, report)}});
        } else {
            out << witness_text(alpha, report);
        }
        rc = report.ok ? 0 : 1;
    });

    // schedule: snapshot the (sc, D) view after each switching communication.
    std::string schedule_input = "-";
    int schedule_steps = 0;
    bool schedule_json = false;
    CLI::App* schedule_cmd = app.add_subcommand(
        "schedule", "walk the switching channel and print the shared (sc, D) views");
    schedule_cmd->add_option("input", schedule_input, "single-switching cts-system document");
    schedule_cmd->add_option("--steps", schedule_steps, "number of switching communications")
        ->required();
    schedule_cmd->add_flag("--json", schedule_json, "emit a report document");
    schedule_cmd->callback([&] {
        const Document doc = load_document(schedule_input, in);
        const SingleSwitchSystem sys = single_system_from_cts(as_cts_system(doc, schedule_input));
        const std::vector<SingleView> views = switching_schedule(sys, schedule_steps);
        if (schedule_json) {
            out << serialize_document(Document{
                Report{"schedule", schedule_payload(sys.system.universe(), views)}});
        } else {
            out << schedule_text(sys.system.universe(), views);
        }
    });

    // export: deterministic DOT text.
    std::string export_input = "-";
    std::string export_view = "component";
    std::string export_process;
    CLI::App* export_cmd = app.add_subcommand("export", "render a document as DOT");
    export_cmd->add_option("input", export_input, "machine document, - for stdin");
    export_cmd->add_option("--view", export_view, "what to draw")
        ->check(CLI::IsMember({"component", "composed-reachable"}))
        ->capture_default_str();
    export_cmd->add_option("--process", export_process, "restrict component view to one process");
    export_cmd->callback([&] {
        const Document doc = load_document(export_input, in);
        DotOptions options;
        options.view = export_view == "composed-reachable" ? DotView::ComposedReachable
                                                           : DotView::Component;
        if (!export_process.empty()) {
            options.process = export_process;
        }
        options.limits = limits;
        out << export_dot(doc, options);
    });

    // validate: parse-and-check one or more documents.
    std::vector<std::string> validate_inputs;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse documents and report their kinds");
    validate_cmd->add_option("input", validate_inputs, "documents, - for stdin");
    validate_cmd->callback([&] {
        if (validate_inputs.empty()) {
            validate_inputs.push_back("-");
        }
        for (const std::string& path : validate_inputs) {
            const Document doc = load_document(path, in);
            out << path << ": valid " << doc.kind() << " document\n";
        }
    });

    try {
        limits = env_limits();
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}

} // namespace rcts::cli
