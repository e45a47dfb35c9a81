#pragma once

#include "qml/formula.hpp"
#include "qml/sequent.hpp"
#include "qml/structure.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qml {

/// The subformula DAG of a batch of formulas, evaluated bottom-up to the
/// world set of each node.
///
///   atom p   -> rho(p)
///   a & b    -> sat(a) & sat(b)
///   ~a       -> sat(a)^perp
///   []a      -> { i | rm(i) is a subset of sat(a) }
class CompiledFormulas {
public:
    explicit CompiledFormulas(std::span<const Formula> roots);

    /// Atoms occurring in the roots, sorted.  evaluate() takes their values
    /// in this order.
    [[nodiscard]] const std::vector<std::string>& atoms() const { return atoms_; }
    [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
    [[nodiscard]] std::size_t index_of(const Formula& f) const;

    void evaluate(int world_count, const std::vector<WorldSet>& rq_rows, const std::vector<WorldSet>& rm_rows,
                  std::span<const WorldSet> atom_values);
    void evaluate(const QuantumModalStructure& s);

    [[nodiscard]] WorldSet sat(std::size_t node) const { return sat_[node]; }
    [[nodiscard]] WorldSet sat(const Formula& f) const { return sat_[index_of(f)]; }

private:
    struct Node {
        Connective connective;
        std::size_t a = 0;  // atom slot, or first child
        std::size_t b = 0;
    };

    std::size_t add(const Formula& f);

    std::vector<Node> nodes_;
    std::unordered_map<Formula, std::size_t> index_;
    std::vector<std::string> atoms_;
    std::vector<WorldSet> sat_;
    std::vector<WorldSet> scratch_values_;
};

/// How "Gamma |= Delta" is read in a single structure.
enum class Reading {
    /// At every world, satisfying all of Gamma implies satisfying some of Delta.
    Pointwise,
    /// Some single member of Delta follows from Gamma at every world.
    Literal,
};

/// i |= f.  Throws MalformedInput for an out-of-range world.
[[nodiscard]] bool eval(const QuantumModalStructure& s, int world, const Formula& f);
[[nodiscard]] WorldSet sat_set(const QuantumModalStructure& s, const Formula& f);

/// Worlds satisfying every antecedent formula and no succedent formula.
[[nodiscard]] WorldSet failing_worlds(const QuantumModalStructure& s, const Sequent& seq);
[[nodiscard]] bool holds_at(const QuantumModalStructure& s, int world, const Sequent& seq);
[[nodiscard]] bool holds_in(const QuantumModalStructure& s, const Sequent& seq,
                            Reading reading = Reading::Pointwise);
/// Least world where the sequent fails pointwise.
[[nodiscard]] std::optional<int> find_failing_world(const QuantumModalStructure& s, const Sequent& seq);

} // namespace qml
