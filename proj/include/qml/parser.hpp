#pragma once

#include "qml/formula.hpp"
#include "qml/sequent.hpp"

#include <string_view>

namespace qml {

// Concrete syntax, loosest binding first:
//
//   sequent  := formulas? "|-" formulas?
//   formulas := formula ("," formula)*
//   formula  := conj ("|" conj)*
//   conj     := unary ("&" unary)*
//   unary    := ("~" | "!" | "[]" | "<>") unary | atom | "(" formula ")"
//   atom     := [a-z][a-z0-9_]*
//
// "|" and "<>" are desugared on the fly; the AST never contains them.
// Both throw ParseError carrying the byte offset of the offending token.

[[nodiscard]] Formula parse(std::string_view text);
[[nodiscard]] Sequent parse_sequent(std::string_view text);

} // namespace qml
