#pragma once

#include "qml/structure.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qml {

struct EnumerationOptions {
    /// Yield one representative per isomorphism class: the structure whose
    /// encoding is least over all k! world permutations.
    bool dedup = false;
    /// When false R_M is held at the empty relation.  Sound for refuting
    /// box-free formulas, whose truth does not depend on R_M.
    bool vary_rm = true;
};

/// Stream of every valid structure with `world_count` worlds whose
/// valuation is defined on exactly `atoms`.
///
/// Order (outermost first): R_Q as reflexive-symmetric relations counting
/// up over the upper-triangle bits (pair (i,j), i<j, in row-major order is
/// bit b); R_M column by column, each column a union of R_Q components
/// (column 0 varies fastest); atom valuations over closed_sets(), first
/// atom varying fastest.
///
/// Usage: `while (e.next()) use(e.current());`.  The row/value accessors
/// avoid building a QuantumModalStructure in hot loops.
class StructureEnumerator {
public:
    StructureEnumerator(int world_count, std::vector<std::string> atoms, EnumerationOptions options = {});

    bool next();

    [[nodiscard]] int world_count() const { return k_; }
    [[nodiscard]] const std::vector<std::string>& atoms() const { return atoms_; }
    [[nodiscard]] const std::vector<WorldSet>& rq_rows() const { return rq_; }
    [[nodiscard]] const std::vector<WorldSet>& rm_rows() const { return rm_; }
    /// Parallel to atoms().
    [[nodiscard]] const std::vector<WorldSet>& atom_values() const { return values_; }
    [[nodiscard]] QuantumModalStructure current() const;

private:
    bool advance();
    bool load_rq(std::uint64_t mask);
    void rebuild_rm();
    bool is_canonical() const;

    int k_;
    std::vector<std::string> atoms_;
    EnumerationOptions options_;

    std::vector<std::pair<int, int>> pairs_;
    std::uint64_t rq_mask_ = 0;
    std::uint64_t rq_limit_;
    bool started_ = false;
    bool done_ = false;

    std::vector<WorldSet> rq_;
    std::vector<WorldSet> components_;
    std::vector<WorldSet> closed_;

    std::vector<std::uint64_t> rm_digits_;  // per target column, bitmask over components
    std::vector<WorldSet> rm_;
    std::vector<std::size_t> value_digits_;  // per atom, index into closed_
    std::vector<WorldSet> values_;

    std::vector<std::vector<int>> permutations_;
};

/// Materialise the whole stream.
[[nodiscard]] std::vector<QuantumModalStructure> enumerate_structures(
    int world_count, const std::vector<std::string>& atoms, EnumerationOptions options = {});

/// Closed-form size of the non-deduplicated stream:
/// sum over R_Q of 2^(components * k) * |closed_sets|^atom_count.
[[nodiscard]] std::uint64_t structure_count(int world_count, std::size_t atom_count);

/// Every reflexive symmetric relation on k worlds, in enumeration order.
[[nodiscard]] std::vector<std::vector<WorldSet>> reflexive_symmetric_relations(int world_count);

/// Encoding compared lexicographically for isomorphism canonicalisation.
[[nodiscard]] std::vector<std::uint64_t> structure_encoding(const std::vector<WorldSet>& rq,
                                                            const std::vector<WorldSet>& rm,
                                                            const std::vector<WorldSet>& values);

/// Bijection on worlds preserving R_Q, R_M and every atom's valuation.
[[nodiscard]] bool isomorphic(const QuantumModalStructure& a, const QuantumModalStructure& b);

} // namespace qml
