#include "rcts/alphabet.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace rcts {

namespace {

void check_unique_nonempty(const std::vector<std::string>& names, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) {
            throw InputError(std::string(what) + " name must not be empty");
        }
        if (!seen.insert(n).second) {
            throw InputError(std::string(what) + " name '" + n + "' is not unique");
        }
    }
}

} // namespace

DistributedAlphabet::DistributedAlphabet(std::vector<std::string> letter_names,
                                         std::vector<std::string> process_names,
                                         std::vector<ProcessSet> dom)
    : letter_names_(std::move(letter_names)),
      process_names_(std::move(process_names)),
      dom_(std::move(dom)) {
    if (letter_names_.empty()) {
        throw InputError("alphabet needs at least one letter");
    }
    if (process_names_.empty()) {
        throw InputError("alphabet needs at least one process");
    }
    if (letter_names_.size() > IdSet<Letter>::max_elements ||
        process_names_.size() > IdSet<ProcessId>::max_elements) {
        throw InputError("alphabet exceeds the supported size of 64 letters/processes");
    }
    check_unique_nonempty(letter_names_, "letter");
    check_unique_nonempty(process_names_, "process");
    if (dom_.size() != letter_names_.size()) {
        throw InputError("dom must assign a process set to every letter");
    }
    const ProcessSet all = all_processes();
    for (std::size_t i = 0; i < dom_.size(); ++i) {
        if (dom_[i].empty()) {
            throw InputError("letter '" + letter_names_[i] + "' has an empty process set");
        }
        if (!dom_[i].subset_of(all)) {
            throw InputError("letter '" + letter_names_[i] + "' names an unknown process");
        }
    }
    dom_inv_.assign(process_names_.size(), LetterSet{});
    for (std::size_t i = 0; i < dom_.size(); ++i) {
        for (ProcessId p : dom_[i]) {
            dom_inv_[p.v].insert(Letter{static_cast<std::int32_t>(i)});
        }
    }
}

ProcessSet DistributedAlphabet::dom(Letter a) const {
    if (a.v < 0 || a.v >= letter_count()) {
        throw InputError("unknown letter id " + std::to_string(a.v));
    }
    return dom_[a.v];
}

LetterSet DistributedAlphabet::dom_inv(ProcessId p) const {
    if (p.v < 0 || p.v >= process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return dom_inv_[p.v];
}

bool DistributedAlphabet::independent(Letter a, Letter b) const {
    return !dom(a).intersects(dom(b));
}

const std::string& DistributedAlphabet::letter_name(Letter a) const {
    if (a.v < 0 || a.v >= letter_count()) {
        throw InputError("unknown letter id " + std::to_string(a.v));
    }
    return letter_names_[a.v];
}

const std::string& DistributedAlphabet::process_name(ProcessId p) const {
    if (p.v < 0 || p.v >= process_count()) {
        throw InputError("unknown process id " + std::to_string(p.v));
    }
    return process_names_[p.v];
}

std::optional<Letter> DistributedAlphabet::find_letter(std::string_view name) const {
    for (std::size_t i = 0; i < letter_names_.size(); ++i) {
        if (letter_names_[i] == name) {
            return Letter{static_cast<std::int32_t>(i)};
        }
    }
    return std::nullopt;
}

std::optional<ProcessId> DistributedAlphabet::find_process(std::string_view name) const {
    for (std::size_t i = 0; i < process_names_.size(); ++i) {
        if (process_names_[i] == name) {
            return ProcessId{static_cast<std::int32_t>(i)};
        }
    }
    return std::nullopt;
}

void check_word(const DistributedAlphabet& alpha, const Word& w) {
    for (Letter a : w) {
        if (a.v < 0 || a.v >= alpha.letter_count()) {
            throw InputError("word contains unknown letter id " + std::to_string(a.v));
        }
    }
}

Word lex_normal_form(const DistributedAlphabet& alpha, const Word& u) {
    check_word(alpha, u);
    Word rest = u;
    Word out;
    out.reserve(u.size());
    while (!rest.empty()) {
        // A position is extractable when everything before it is independent
        // of it; among those, the smallest letter is next in the normal form.
        // Two occurrences of one letter are never both extractable (a letter
        // depends on itself), so the choice is unambiguous.
        std::size_t best = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            bool extractable = true;
            for (std::size_t j = 0; j < i; ++j) {
                if (!alpha.independent(rest[j], rest[i])) {
                    extractable = false;
                    break;
                }
            }
            if (extractable && (best == rest.size() || rest[i] < rest[best])) {
                best = i;
            }
        }
        out.push_back(rest[best]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

bool trace_equivalent(const DistributedAlphabet& alpha, const Word& u, const Word& v) {
    if (u.size() != v.size()) {
        check_word(alpha, u);
        check_word(alpha, v);
        return false;
    }
    return lex_normal_form(alpha, u) == lex_normal_form(alpha, v);
}

WordSet trace_class(const DistributedAlphabet& alpha, const Word& u, std::size_t max_len) {
    check_word(alpha, u);
    if (u.size() > max_len) {
        std::ostringstream msg;
        msg << "trace class enumeration limited to words of length " << max_len
            << ", got length " << u.size();
        throw ResourceError(msg.str());
    }
    WordSet seen{u};
    std::deque<Word> todo{u};
    while (!todo.empty()) {
        Word w = std::move(todo.front());
        todo.pop_front();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (alpha.independent(w[i], w[i + 1])) {
                Word swapped = w;
                std::swap(swapped[i], swapped[i + 1]);
                if (seen.insert(swapped).second) {
                    todo.push_back(swapped);
                }
            }
        }
    }
    return seen;
}

Dfa::Dfa(DistributedAlphabet alphabet_in,
         std::vector<std::string> state_names_in,
         LocalState initial_in,
         std::vector<std::vector<LocalState>> delta_in,
         std::vector<bool> accepting_in)
    : alphabet(std::move(alphabet_in)),
      state_names(std::move(state_names_in)),
      initial(initial_in),
      delta(std::move(delta_in)),
      accepting(std::move(accepting_in)) {
    if (state_names.empty()) {
        throw InputError("automaton needs at least one state");
    }
    {
        std::unordered_set<std::string> seen;
        for (const auto& name : state_names) {
            if (name.empty() || !seen.insert(name).second) {
                throw InputError("state names must be unique and nonempty");
            }
        }
    }
    if (initial < 0 || initial >= state_count()) {
        throw InputError("initial state out of range");
    }
    if (delta.size() != state_names.size() || accepting.size() != state_names.size()) {
        throw InputError("delta and accepting must cover every state");
    }
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != alphabet.letter_count()) {
            throw InputError("delta rows must cover every letter");
        }
        for (LocalState t : row) {
            if (t < -1 || t >= state_count()) {
                throw InputError("delta target out of range");
            }
        }
    }
}

std::optional<LocalState> dfa_step(const Dfa& dfa, LocalState q, Letter a) {
    if (q < 0 || q >= dfa.state_count()) {
        throw InputError("state out of range");
    }
    if (a.v < 0 || a.v >= dfa.alphabet.letter_count()) {
        throw InputError("unknown letter id " + std::to_string(a.v));
    }
    LocalState t = dfa.delta[q][a.v];
    if (t < 0) {
        return std::nullopt;
    }
    return t;
}

std::optional<LocalState> dfa_run(const Dfa& dfa, const Word& w) {
    LocalState q = dfa.initial;
    for (Letter a : w) {
        auto next = dfa_step(dfa, q, a);
        if (!next) {
            return std::nullopt;
        }
        q = *next;
    }
    return q;
}

bool dfa_accepts(const Dfa& dfa, const Word& w) {
    auto q = dfa_run(dfa, w);
    return q && dfa.accepting[*q];
}

std::optional<IDiamondViolation> is_i_diamond(const Dfa& dfa) {
    const int letters = dfa.alphabet.letter_count();
    for (LocalState q = 0; q < dfa.state_count(); ++q) {
        for (int i = 0; i < letters; ++i) {
            for (int j = i + 1; j < letters; ++j) {
                Letter a{i};
                Letter b{j};
                if (!dfa.alphabet.independent(a, b)) {
                    continue;
                }
                auto via_a = dfa_step(dfa, q, a);
                auto ab = via_a ? dfa_step(dfa, *via_a, b) : std::nullopt;
                auto via_b = dfa_step(dfa, q, b);
                auto ba = via_b ? dfa_step(dfa, *via_b, a) : std::nullopt;
                if (ab != ba) {
                    return IDiamondViolation{q, a, b};
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace rcts
