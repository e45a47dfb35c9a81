#pragma once

#include "qml/formula.hpp"

#include <compare>
#include <string>

namespace qml {

/// Gamma |- Delta with both sides as sets.
struct Sequent {
    FormulaSet antecedent;
    FormulaSet succedent;

    friend bool operator==(const Sequent&, const Sequent&) = default;
    friend auto operator<=>(const Sequent& a, const Sequent& b)
    {
        if (auto c = a.antecedent <=> b.antecedent; c != 0)
            return c;
        return a.succedent <=> b.succedent;
    }
};

/// Both sides componentwise included.
[[nodiscard]] bool is_weakening_of(const Sequent& bigger, const Sequent& smaller);

[[nodiscard]] FormulaSet formulas_of(const Sequent& seq);
[[nodiscard]] std::set<std::string> atoms_of(const Sequent& seq);

/// "p, q |- r"; an empty side renders as nothing ("|- p", "p |-", "|-").
[[nodiscard]] std::string render(const Sequent& seq);

} // namespace qml
