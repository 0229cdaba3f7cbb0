#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcts/error.hpp"
#include "rcts/types.hpp"

namespace rcts {

// An alphabet where every letter is owned by a nonempty set of processes.
// Two letters are independent when their process sets are disjoint.
class DistributedAlphabet {
public:
    DistributedAlphabet(std::vector<std::string> letter_names,
                        std::vector<std::string> process_names,
                        std::vector<ProcessSet> dom);

    int letter_count() const { return static_cast<int>(letter_names_.size()); }
    int process_count() const { return static_cast<int>(process_names_.size()); }

    ProcessSet dom(Letter a) const;
    LetterSet dom_inv(ProcessId p) const;
    bool independent(Letter a, Letter b) const;

    const std::string& letter_name(Letter a) const;
    const std::string& process_name(ProcessId p) const;
    std::optional<Letter> find_letter(std::string_view name) const;
    std::optional<ProcessId> find_process(std::string_view name) const;

    LetterSet all_letters() const { return LetterSet::first(letter_count()); }
    ProcessSet all_processes() const { return ProcessSet::first(process_count()); }

    bool operator==(const DistributedAlphabet&) const = default;

private:
    std::vector<std::string> letter_names_;
    std::vector<std::string> process_names_;
    std::vector<ProcessSet> dom_;
    std::vector<LetterSet> dom_inv_;
};

void check_word(const DistributedAlphabet& alpha, const Word& w);

// The lexicographically least word reachable from `u` by swapping adjacent
// independent letters. Two words are equivalent under such swaps exactly
// when their normal forms coincide.
Word lex_normal_form(const DistributedAlphabet& alpha, const Word& u);

bool trace_equivalent(const DistributedAlphabet& alpha, const Word& u, const Word& v);

// All words reachable from `u` by swapping adjacent independent letters.
// Guarded: |u| > max_len raises ResourceError (class sizes grow factorially).
WordSet trace_class(const DistributedAlphabet& alpha, const Word& u, std::size_t max_len = 8);

// Deterministic, possibly partial automaton over a distributed alphabet.
struct Dfa {
    Dfa(DistributedAlphabet alphabet,
        std::vector<std::string> state_names,
        LocalState initial,
        std::vector<std::vector<LocalState>> delta, // [state][letter], -1 = undefined
        std::vector<bool> accepting);

    DistributedAlphabet alphabet;
    std::vector<std::string> state_names;
    LocalState initial;
    std::vector<std::vector<LocalState>> delta;
    std::vector<bool> accepting;

    int state_count() const { return static_cast<int>(state_names.size()); }
};

std::optional<LocalState> dfa_step(const Dfa& dfa, LocalState q, Letter a);
std::optional<LocalState> dfa_run(const Dfa& dfa, const Word& w);
bool dfa_accepts(const Dfa& dfa, const Word& w);

struct IDiamondViolation {
    LocalState state;
    Letter a;
    Letter b;
};

// Checks that independent letters commute: from every state, a then b is
// defined iff b then a is, and both land in the same state. Returns the
// first violation in (state, a, b) order, or nullopt if none.
std::optional<IDiamondViolation> is_i_diamond(const Dfa& dfa);

} // namespace rcts
