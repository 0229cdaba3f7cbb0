#pragma once

#include <optional>
#include <string>

#include "rcts/document.hpp"

namespace rcts {

enum class DotView {
    Component,         // per-process local graphs, restricted to locally reachable states
    ComposedReachable, // the reachable global graph, each node marked with its enabled labels
};

struct DotOptions {
    DotView view = DotView::Component;
    // Component view of a multi-process machine: draw only this process.
    std::optional<std::string> process;
    Limits limits;
};

// Deterministic DOT text for a machine-kind document; byte-identical across
// runs for identical inputs.
std::string export_dot(const Document& doc, const DotOptions& options = {});

} // namespace rcts
