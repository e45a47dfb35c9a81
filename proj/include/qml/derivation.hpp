#pragma once

#include "qml/rules.hpp"
#include "qml/sequent.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qml {

/// Proof tree; children are the premises of `rule`, in schema order.
struct Derivation {
    Rule rule;
    Sequent conclusion;
    std::vector<Derivation> premises;

    [[nodiscard]] std::size_t node_count() const;
    /// Rules used, in pre-order.
    [[nodiscard]] std::vector<Rule> rules() const;

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// Re-verifies every node against the rule schemas, without using the
/// saturation engine.  WKN nodes must extend their premise on either side;
/// MEM leaves may carry any antecedent; every other node's conclusion must
/// be among rule_conclusions() of its children.  Malformed trees yield
/// false, never an exception.
[[nodiscard]] bool check_derivation(const Derivation& d);

/// One node per line, "RULE: Gamma |- Delta", children two spaces deeper
/// than their parent.
[[nodiscard]] std::string render_derivation(const Derivation& d);

/// Inverse of render_derivation.  Throws ParseError (position = byte offset
/// of the offending line).
[[nodiscard]] Derivation parse_derivation(std::string_view text);

} // namespace qml
