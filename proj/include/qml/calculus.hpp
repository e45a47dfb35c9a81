#pragma once

#include "qml/derivation.hpp"
#include "qml/formula.hpp"
#include "qml/rules.hpp"
#include "qml/sequent.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

namespace qml {

inline constexpr std::size_t kMaxUniverse = 64;

/// Forward saturation of the calculus inside a finite formula universe.
///
/// Only the subsumption-minimal derivable sequents are stored; a sequent is
/// derivable iff some stored member is included in it side by side, which
/// is exactly closure under WKN.  Sequents are processed first in, first
/// out (given-clause loop), and each accepted sequent keeps the rule step
/// that first produced it, so derivations can be rebuilt afterwards.
///
/// Seeds are the AX instances a |- a and the MEM instances |- []a, ~[]a.
class DerivableSet {
public:
    /// Throws std::invalid_argument if the universe is not closed under
    /// subformulas or holds more than kMaxUniverse formulas.
    explicit DerivableSet(FormulaSet universe);

    /// Processes at most `max_steps` queued sequents.  Returns fixpoint().
    /// `should_stop` is polled between steps.  Also returns early, right
    /// after the accepting step, once the target (if any) is derivable.
    bool run(std::size_t max_steps, const std::function<bool()>& should_stop = {});

    /// Sequent whose derivability ends run().  Throws OutsideUniverse.
    void set_target(const Sequent& target);
    [[nodiscard]] bool target_reached() const { return target_reached_; }

    [[nodiscard]] bool fixpoint() const { return queue_.empty(); }
    [[nodiscard]] std::size_t steps() const { return steps_; }
    [[nodiscard]] const FormulaSet& universe() const { return universe_; }

    /// Current antichain, in acceptance order.
    [[nodiscard]] std::vector<Sequent> minimal() const;
    [[nodiscard]] std::size_t minimal_count() const;

    /// Throws OutsideUniverse for a formula outside the universe.
    [[nodiscard]] bool contains(const Sequent& seq) const;

    /// Rebuilds a proof tree, inserting WKN nodes wherever a rule used a
    /// weakening of a stored sequent.  Throws NotDerivable.
    [[nodiscard]] Derivation extract_derivation(const Sequent& seq) const;

private:
    struct Key {
        std::uint64_t ante = 0;
        std::uint64_t succ = 0;
        friend bool operator==(const Key&, const Key&) = default;
        friend auto operator<=>(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept { return k.ante * 0x9e3779b97f4a7c15ULL ^ k.succ; }
    };
    struct Step {
        Rule rule;
        Key conclusion;
        std::vector<Key> sources;   // stored sequents the step started from
        std::vector<Key> premises;  // the rule's premises (weakenings of sources)
    };

    static bool subsumes(const Key& small, const Key& big)
    {
        return (small.ante & ~big.ante) == 0 && (small.succ & ~big.succ) == 0;
    }

    [[nodiscard]] bool subsumed(const Key& k) const;
    [[nodiscard]] Key key_of(const Sequent& seq) const;
    [[nodiscard]] Sequent sequent_of(const Key& k) const;
    [[nodiscard]] Derivation build(const Key& k) const;

    void push(Rule rule, Key conclusion, std::vector<Key> sources, std::vector<Key> premises);
    void push(Rule rule, Key conclusion, const Key& source) { push(rule, conclusion, {source}, {source}); }
    void accept(Step step);
    void apply_unary(const Key& s);
    void apply_binary(const Key& left, const Key& right);
    [[nodiscard]] int negation_of(int f) const { return negation_[f]; }
    [[nodiscard]] std::uint64_t mapped(std::uint64_t mask, const std::vector<int>& image, bool& ok) const;

    FormulaSet universe_;
    std::vector<Formula> formulas_;
    std::map<Formula, int> index_;
    std::vector<int> negation_;         // index of ~f, or -1
    std::vector<int> double_negation_;  // index of ~~f, or -1
    std::vector<int> box_;              // index of []f, or -1
    struct Conjunction {
        int self, left, right;
    };
    std::vector<Conjunction> conjunctions_;

    std::deque<Step> queue_;
    std::unordered_set<Key, KeyHash> queued_;
    std::vector<Key> minimal_;
    std::vector<bool> live_;
    std::map<Key, Step> provenance_;
    std::size_t steps_ = 0;
    std::optional<Key> target_;
    bool target_reached_ = false;
};

/// Runs saturation to fixpoint or until `step_limit` steps.
[[nodiscard]] DerivableSet saturate(const FormulaSet& universe, std::size_t step_limit);

/// Proof-search universes for a goal.  Stage 0 is the admissible closure
/// of the goal's formulas.  Each later stage adds the next
/// `formulas_per_stage` formulas of the canonical numbering over the goal's
/// atoms that are not yet present, then ~[]a for every []a present.  Every
/// stage is closed under subformulas and contains the previous one.
[[nodiscard]] std::vector<FormulaSet> universe_stages(const Sequent& goal, int max_stage,
                                                      std::size_t formulas_per_stage = 2);

} // namespace qml
