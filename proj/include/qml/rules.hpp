#pragma once

#include "qml/formula.hpp"
#include "qml/sequent.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qml {

enum class Rule { Ax, Mem, Wkn, Cut, AndL1, AndL2, AndR, NegL, NegR, NegNegL, NegNegR, K };

/// "AX", "MEM", "WKN", "CUT", "AND_L1", ..., "K".
[[nodiscard]] std::string_view rule_name(Rule rule);
[[nodiscard]] std::optional<Rule> rule_from_name(std::string_view name);
[[nodiscard]] int rule_arity(Rule rule);

struct RuleInstance {
    Rule rule;
    std::vector<Sequent> premises;
    Sequent conclusion;
    /// Formulas instantiating the schema letters (alpha, beta, ...).
    std::vector<Formula> principal;
};

/// Every instance of `rule` with exactly these premises whose conclusion
/// stays inside `universe`.
///
/// Sides are sets, so a schema context may or may not already hold the
/// principal formula; both readings are produced.  Two restrictions keep
/// the output finite and small: WKN adds a single formula, and MEM is
/// produced with an empty antecedent only.
///
/// Throws std::invalid_argument on an arity mismatch and OutsideUniverse
/// if a premise mentions a formula not in the universe.
[[nodiscard]] std::vector<RuleInstance> rule_conclusions(Rule rule, std::span<const Sequent> premises,
                                                         const FormulaSet& universe);

} // namespace qml
