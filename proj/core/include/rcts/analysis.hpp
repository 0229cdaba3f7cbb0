#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rcts/automata.hpp"
#include "rcts/cts.hpp"
#include "rcts/switching.hpp"
#include "rcts/types.hpp"

namespace rcts {

// Per-process classification. A process either listens to every letter, or
// from every reachable configuration it can be driven into a set of local
// states where it never again refuses a letter it listens to, or neither
// could be established on the reachable fragment.
enum class ProcessVerdict {
    FullyListening,
    Trivializable,
    NeitherDetected,
};

std::string verdict_name(ProcessVerdict v);

struct ProcessAnalysis {
    ProcessId process{-1};
    ProcessVerdict verdict = ProcessVerdict::NeitherDetected;
    LetterSet listens;          // letters the process participates in
    std::size_t reachable = 0;  // configurations explored

    // Trivializable evidence: local states forming complete bottom strongly
    // connected components, and the worst-case drive into them.
    std::vector<LocalState> core;
    Word witness_access;  // discovery word of a farthest configuration
    Word witness_drive;   // word driving it into the core
    std::size_t max_drive = 0;

    // Counter-evidence: a reachable configuration from which the core is
    // unreachable.
    std::optional<GlobalConfig> stuck;
    Word stuck_access;
};

struct AnalysisReport {
    std::vector<ProcessAnalysis> processes;

    bool all_good() const {
        for (const auto& p : processes) {
            if (p.verdict == ProcessVerdict::NeitherDetected) {
                return false;
            }
        }
        return true;
    }
};

bool fully_listening(const GlobalAA& aa, ProcessId p);
bool fully_listening(const LocalAA& aa, ProcessId p);

// The bottom-component condition alone, independent of the listening set:
// whether every reachable configuration has a runnable continuation after
// which the process sits in a complete bottom strongly connected component
// of its local move graph.
bool trivializable(const GlobalAA& aa, ProcessId p, const Limits& limits = {});
bool trivializable(const LocalAA& aa, ProcessId p, const Limits& limits = {});

ProcessAnalysis analyze_process(const GlobalAA& aa, ProcessId p, const Limits& limits = {});
ProcessAnalysis analyze_process(const LocalAA& aa, ProcessId p, const Limits& limits = {});

AnalysisReport analyze(const GlobalAA& aa, const Limits& limits = {});
AnalysisReport analyze(const LocalAA& aa, const Limits& limits = {});

// Non-owning view of anything with a bounded word language, for language
// comparison across machine kinds. Words are compared by letter name, so
// the machines only need compatible naming, not identical id layouts.
class MachineRef {
public:
    MachineRef(const GlobalAA& m) : m_(&m) {}
    MachineRef(const LocalAA& m) : m_(&m) {}
    MachineRef(const Cts& m) : m_(&m) {}
    MachineRef(const ComposedCts& m) : m_(&m) {}

    std::vector<std::string> letter_names() const;
    // Runnable words of length <= k, as name sequences.
    std::set<std::vector<std::string>> language(int k, const Limits& limits = {}) const;

private:
    std::variant<const GlobalAA*, const LocalAA*, const Cts*, const ComposedCts*> m_;
};

struct EquivResult {
    bool equal = true;
    // A shortest distinguishing word (ties broken lexicographically), and
    // which machine runs it: 1 for the first, 2 for the second.
    std::vector<std::string> witness;
    int only_in = 0;
};

// Compares the length-bounded languages. One machine's letter-name set must
// contain the other's; letters only one side knows may simply never occur.
EquivResult equiv_upto(const MachineRef& x, const MachineRef& y, int k,
                       const Limits& limits = {});

struct WitnessDriveOptions {
    int pre_equiv_len = 5;   // bound for the language agreement pre-check
    int extension_len = 4;   // bound on the listened-letter extensions
    // Channel to drive to, by name; defaults to the lowest-numbered channel
    // the process does not listen to.
    std::optional<std::string> channel;
};

struct WitnessDriveReport {
    bool ok = false;
    std::string failure;  // empty on success
    ProcessId process{-1};
    std::string channel;  // the channel driven to
    Word base;            // the given word, in machine letters
    Word drive;           // the computed continuation, in machine letters
    std::size_t extensions_checked = 0;
    // Shortest unrunnable base*drive*extension prefix, when one exists.
    Word blocked;
    // Language mismatch found by the pre-check, when one exists.
    std::vector<std::string> distinguishing;
};

// Mechanizes the non-blocking argument for a process that skips a channel c:
// drives the reference system's switching communications until c is current
// with an empty dependence set, replays that drive on the machine, and then
// checks that every short word over the process's own letters stays
// runnable there.
WitnessDriveReport witness_drive(const GlobalAA& b, ProcessId p,
                                       const SingleSwitchSystem& ref, const Word& w,
                                       const WitnessDriveOptions& opts = {},
                                       const Limits& limits = {});

} // namespace rcts
