#pragma once

#include "qml/formula.hpp"
#include "qml/structure.hpp"

#include <string>
#include <vector>

namespace qml {

/// Truth values of the members of sigma (in set order) at one world.
using TruthProfile = std::vector<bool>;

[[nodiscard]] std::vector<TruthProfile> truth_profiles(const QuantumModalStructure& s, const FormulaSet& sigma);

/// Quotient of `source` by agreement on every member of `sigma`.
struct Collapse {
    QuantumModalStructure source;
    FormulaSet sigma;
    /// Source world -> class index.  Classes are numbered by least member.
    std::vector<int> class_of;
    QuantumModalStructure result;
};

/// Builds the collapse:
///   R_Q*([i],[j]) iff some i' ~ i, j' ~ j have R_Q(i',j')
///   R_M*([i],[l]) iff for every []a in sigma, i |= []a implies l |= a
///   rho*(p)       = { [i] | i in rho(p) } for atoms p in sigma
/// Throws NotAdmissible unless sigma equals its admissible closure.
[[nodiscard]] Collapse collapse(const QuantumModalStructure& s, const FormulaSet& sigma);

struct CollapseReport {
    bool validates = false;
    bool size_bound = false;
    bool truth_preserved = false;
    std::vector<std::string> problems;

    [[nodiscard]] bool ok() const { return validates && size_bound && truth_preserved; }
};

/// Checks the collapse on this instance: the result is a quantum modal
/// structure, has at most 2^|sigma| worlds, and [i] |= a iff i |= a for all
/// a in sigma and all source worlds i.
[[nodiscard]] CollapseReport verify_collapse(const Collapse& c);

} // namespace qml
