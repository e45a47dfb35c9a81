#pragma once

#include "qml/structure.hpp"

#include <string>
#include <string_view>

namespace qml {

struct LoadOptions {
    /// Skip validate() after completing R_Q.
    bool no_validate = false;
};

/// Reads {"worlds": k, "rq": [[i,j],...], "rm": [[i,l],...],
/// "valuation": {"p": [w,...], ...}}.  R_Q is completed to a reflexive
/// symmetric relation before validation.  Throws MalformedInput for bad
/// JSON, missing keys or out-of-range indices, and for structures that fail
/// validate() unless disabled.
[[nodiscard]] QuantumModalStructure load_model(std::string_view json_text, LoadOptions options = {});
[[nodiscard]] QuantumModalStructure load_model_file(const std::string& path, LoadOptions options = {});

/// Inverse of load_model.  Pairs are listed in row-major order, including
/// the reflexive and both symmetric R_Q pairs.
[[nodiscard]] std::string dump_model(const QuantumModalStructure& s);

/// Graphviz rendering: R_Q as undirected edges (loops omitted), R_M as
/// directed edges, atoms true at a world in its label.
[[nodiscard]] std::string to_dot(const QuantumModalStructure& s);

} // namespace qml
