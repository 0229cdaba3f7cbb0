#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rcts/alphabet.hpp"
#include "rcts/analysis.hpp"
#include "rcts/automata.hpp"
#include "rcts/cts.hpp"
#include "rcts/switching.hpp"

namespace rcts {

// Tool output that is data rather than a machine: a type tag plus canonical
// JSON text.
struct Report {
    std::string type;
    std::string payload;
};

// One interchange file: {"kind": ..., "version": "1", "body": ...} with all
// cross-references by name.
struct Document {
    std::variant<DistributedAlphabet, Dfa, GlobalAA, LocalAA, Cts, CtsSystem, Report> body;

    std::string kind() const;
};

// Parses and validates; error messages carry the JSON path of the offending
// field, and every name reference is resolved or rejected.
Document parse_document(const std::string& text);

// Canonical form: sorted object keys, transitions and rewrites in a fixed
// order, two-space indentation, trailing newline. Serializing a parse of the
// output reproduces it byte for byte.
std::string serialize_document(const Document& doc);

// Report payloads (canonical JSON text) and their human-readable twins.
std::string analysis_payload(const DistributedAlphabet& alpha,
                             const std::vector<std::vector<std::string>>& state_names,
                             const AnalysisReport& report);
std::string analysis_text(const DistributedAlphabet& alpha,
                          const std::vector<std::vector<std::string>>& state_names,
                          const AnalysisReport& report);
std::string equiv_payload(const EquivResult& result, int bound);
std::string equiv_text(const EquivResult& result, int bound);
std::string witness_payload(const DistributedAlphabet& alpha, const WitnessDriveReport& report);
std::string witness_text(const DistributedAlphabet& alpha, const WitnessDriveReport& report);
std::string schedule_payload(const Universe& u, const std::vector<SingleView>& schedule);
std::string schedule_text(const Universe& u, const std::vector<SingleView>& schedule);

} // namespace rcts
