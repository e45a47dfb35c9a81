#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qml {

// Declaration order is the constructor order used by enumerate_formula.
enum class Connective : std::uint8_t { Atom, Not, Box, And };

/// Immutable formula over atoms, conjunction, negation and necessity.
///
/// Disjunction and possibility are not constructors; `disjunction` and
/// `diamond` build their desugared forms.  Copies share structure.
class Formula {
public:
    static Formula atom(std::string name);
    static Formula negation(Formula inner);
    static Formula box(Formula inner);
    static Formula conjunction(Formula left, Formula right);

    // a | b  ==  ~(~a & ~b)
    static Formula disjunction(const Formula& left, const Formula& right);
    // <>a  ==  ~[]~a
    static Formula diamond(const Formula& inner);

    [[nodiscard]] Connective connective() const;
    [[nodiscard]] bool is_atom() const { return connective() == Connective::Atom; }
    [[nodiscard]] bool is_negation() const { return connective() == Connective::Not; }
    [[nodiscard]] bool is_box() const { return connective() == Connective::Box; }
    [[nodiscard]] bool is_conjunction() const { return connective() == Connective::And; }

    // Preconditions: name() on atoms, inner() on Not/Box, left()/right() on And.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Formula& inner() const;
    [[nodiscard]] const Formula& left() const;
    [[nodiscard]] const Formula& right() const;

    /// Number of AST nodes.
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::size_t hash() const;

    friend bool operator==(const Formula& a, const Formula& b);
    /// Size first, then connective, then atom name / children left to right.
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_{std::move(node)} {}

    std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

[[nodiscard]] std::string render(const Formula& f);

/// All subformulas including f itself.
[[nodiscard]] FormulaSet subformulas(const Formula& f);
[[nodiscard]] std::set<std::string> atoms_of(const Formula& f);
[[nodiscard]] std::set<std::string> atoms_of(const FormulaSet& fs);
[[nodiscard]] bool contains_box(const Formula& f);

/// Smallest superset closed under subformulas and under ~p for atomic p.
[[nodiscard]] FormulaSet admissible_closure(const FormulaSet& seed);
[[nodiscard]] bool is_admissible(const FormulaSet& fs);

/// Number of distinct formulas with exactly `size` nodes over `atom_count`
/// atoms.  Saturates at UINT64_MAX.
[[nodiscard]] std::uint64_t formula_count(std::size_t atom_count, std::size_t size);

/// Canonical numbering of all formulas over `atoms`: by size, then by
/// connective (Atom < Not < Box < And), then by the ranks of the children
/// (for And: left size, left rank, right rank).  Index 0 is atoms[0].
[[nodiscard]] Formula enumerate_formula(std::span<const std::string> atoms, std::uint64_t index);

} // namespace qml

template <>
struct std::hash<qml::Formula> {
    std::size_t operator()(const qml::Formula& f) const noexcept { return f.hash(); }
};
