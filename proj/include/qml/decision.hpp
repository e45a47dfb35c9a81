#pragma once

#include "qml/calculus.hpp"
#include "qml/derivation.hpp"
#include "qml/enumerate.hpp"
#include "qml/semantics.hpp"
#include "qml/sequent.hpp"
#include "qml/structure.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qml {

struct Budgets {
    int max_stage = 2;
    int max_worlds = 4;
    /// Saturation steps per universe stage.
    std::size_t step_limit = 200000;
    /// Zero means no wall-clock limit.
    std::chrono::milliseconds wall_clock{0};
    std::size_t formulas_per_stage = 2;
};

struct DecideOptions {
    bool dedup = false;
    /// Refute each succedent member separately (one countermodel each).
    bool literal_delta = false;
    /// Run the two searches on their own threads; otherwise alternate them
    /// on the calling thread.
    bool threaded = true;
};

/// A structure and a world at which `refuted` fails pointwise.
struct Countermodel {
    QuantumModalStructure structure;
    int world = 0;
    Sequent refuted;
};

struct Theorem {
    Derivation derivation;
    int stage = 0;
};

struct NonTheorem {
    /// One entry under the pointwise reading; one per succedent formula
    /// under the literal reading.
    std::vector<Countermodel> countermodels;
};

struct Unknown {
    int stages_tried = 0;
    int max_worlds_tried = 0;
    bool timed_out = false;
    std::string note;
};

struct Verdict {
    std::variant<Theorem, NonTheorem, Unknown> outcome;
    /// 2^|admissible closure|, reported for single-formula goals only.
    std::optional<std::uint64_t> fmp_bound;
    /// Model search was exhaustive up to a world count covering the bound.
    bool valid_by_fmp_bound = false;

    [[nodiscard]] bool is_theorem() const { return std::holds_alternative<Theorem>(outcome); }
    [[nodiscard]] bool is_non_theorem() const { return std::holds_alternative<NonTheorem>(outcome); }
    [[nodiscard]] bool is_unknown() const { return std::holds_alternative<Unknown>(outcome); }
};

/// Countermodel search, one world count at a time, resumable in chunks.
class ModelSearch {
public:
    ModelSearch(Sequent goal, int max_worlds, bool dedup);

    /// Examines up to `chunk` structures.  Returns true once finished
    /// (found or exhausted).
    bool step(std::size_t chunk);

    [[nodiscard]] bool done() const { return done_; }
    [[nodiscard]] const std::optional<Countermodel>& found() const { return found_; }
    /// Largest world count whose structures were all examined.
    [[nodiscard]] int exhausted_up_to() const { return exhausted_up_to_; }
    [[nodiscard]] std::uint64_t structures_checked() const { return checked_; }

private:
    Sequent goal_;
    int max_worlds_;
    EnumerationOptions options_;
    std::vector<Formula> roots_;
    CompiledFormulas compiled_;
    std::vector<std::size_t> antecedent_;
    std::vector<std::size_t> succedent_;
    int k_ = 0;
    std::unique_ptr<StructureEnumerator> enumerator_;
    std::optional<Countermodel> found_;
    int exhausted_up_to_ = 0;
    std::uint64_t checked_ = 0;
    bool done_ = false;
};

/// Derivation search over the growing universe stages, resumable in chunks.
class ProofSearch {
public:
    ProofSearch(Sequent goal, const Budgets& budgets);

    /// Runs up to `chunk` saturation steps.  Returns true once finished.
    bool step(std::size_t chunk, const std::function<bool()>& should_stop = {});

    [[nodiscard]] bool done() const { return done_; }
    [[nodiscard]] const std::optional<Theorem>& found() const { return found_; }
    /// Universe stages opened so far.
    [[nodiscard]] int stages_tried() const { return stages_opened_; }

private:
    void open_stage();

    Sequent goal_;
    Budgets budgets_;
    std::vector<FormulaSet> stages_;
    int stage_ = -1;
    int stages_opened_ = 0;
    std::optional<DerivableSet> current_;
    std::size_t stage_steps_ = 0;
    std::optional<Theorem> found_;
    bool done_ = false;
};

/// First countermodel in enumeration order with at most `max_worlds`
/// worlds, at the least failing world.
[[nodiscard]] std::optional<Countermodel> refute(const Sequent& seq, int max_worlds, bool dedup = false);

/// One countermodel for each `Gamma |- d`, d in Delta; nothing unless all
/// are found.  An empty Delta falls back to the pointwise refutation.
[[nodiscard]] std::optional<std::vector<Countermodel>> refute_literal(const Sequent& seq, int max_worlds,
                                                                       bool dedup = false);

/// First derivation found over universe stages 0..max_stage.
[[nodiscard]] std::optional<Theorem> prove(const Sequent& seq, const Budgets& budgets);

/// 2^|admissible_closure(Gamma u Delta)|, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t fmp_bound(const Sequent& seq);

/// Runs proof and model search side by side until one succeeds.  Every
/// returned witness has been re-checked independently.
[[nodiscard]] Verdict decide(const Sequent& seq, const Budgets& budgets = {}, const DecideOptions& options = {});

/// Independent re-check of a countermodel.
[[nodiscard]] bool verify_countermodel(const Countermodel& cm);

} // namespace qml
