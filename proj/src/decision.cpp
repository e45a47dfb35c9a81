#include "qml/decision.hpp"

#include "qml/errors.hpp"

#include <limits>
#include <stdexcept>
#include <stop_token>
#include <thread>

namespace qml {

namespace {

constexpr std::size_t kModelChunk = 512;
constexpr std::size_t kProofChunk = 64;

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(std::chrono::milliseconds limit)
        : active_{limit.count() > 0}, at_{Clock::now() + limit} {}

    [[nodiscard]] bool expired() const { return active_ && Clock::now() >= at_; }

private:
    bool active_;
    Clock::time_point at_;
};

std::vector<Formula> roots_of(const Sequent& seq)
{
    const auto all = formulas_of(seq);
    return {all.begin(), all.end()};
}

bool sequent_has_box(const Sequent& seq)
{
    for (const auto& f : formulas_of(seq)) {
        if (contains_box(f))
            return true;
    }
    return false;
}

void run_model_search(ModelSearch& search, const Deadline& deadline)
{
    while (!search.step(kModelChunk) && !deadline.expired()) {
    }
}

void run_proof_search(ProofSearch& search, const Deadline& deadline)
{
    auto stop = [&] { return deadline.expired(); };
    while (!search.step(kProofChunk, stop) && !deadline.expired()) {
    }
}

Theorem checked(Theorem t, const Sequent& goal)
{
    if (t.derivation.conclusion != goal || !check_derivation(t.derivation))
        throw std::logic_error{"proof search produced a derivation that does not check"};
    return t;
}

Countermodel checked(Countermodel cm)
{
    if (!verify_countermodel(cm))
        throw std::logic_error{"model search produced a countermodel that does not check"};
    return cm;
}

} // namespace

ModelSearch::ModelSearch(Sequent goal, int max_worlds, bool dedup)
    : goal_{std::move(goal)},
      max_worlds_{max_worlds},
      options_{dedup, sequent_has_box(goal_)},
      roots_{roots_of(goal_)},
      compiled_{roots_}
{
    if (max_worlds < 0)
        throw std::invalid_argument{"max_worlds must be non-negative"};
    for (const auto& f : goal_.antecedent)
        antecedent_.push_back(compiled_.index_of(f));
    for (const auto& f : goal_.succedent)
        succedent_.push_back(compiled_.index_of(f));
}

bool ModelSearch::step(std::size_t chunk)
{
    while (!done_ && chunk > 0) {
        if (!enumerator_) {
            if (k_ >= max_worlds_) {
                done_ = true;
                break;
            }
            ++k_;
            enumerator_ = std::make_unique<StructureEnumerator>(k_, compiled_.atoms(), options_);
        }
        auto& e = *enumerator_;
        if (!e.next()) {
            exhausted_up_to_ = k_;
            enumerator_.reset();
            continue;
        }
        --chunk;
        ++checked_;
        compiled_.evaluate(k_, e.rq_rows(), e.rm_rows(), e.atom_values());
        WorldSet failing = WorldSet::all(k_);
        for (auto node : antecedent_)
            failing &= compiled_.sat(node);
        for (auto node : succedent_)
            failing = failing - compiled_.sat(node);
        if (!failing.empty()) {
            found_ = Countermodel{e.current(), failing.first(), goal_};
            done_ = true;
        }
    }
    return done_;
}

ProofSearch::ProofSearch(Sequent goal, const Budgets& budgets)
    : goal_{std::move(goal)},
      budgets_{budgets},
      stages_{universe_stages(goal_, budgets.max_stage, budgets.formulas_per_stage)}
{
}

void ProofSearch::open_stage()
{
    ++stage_;
    ++stages_opened_;
    stage_steps_ = 0;
    current_.reset();
    if (stages_[stage_].size() > kMaxUniverse)
        return;  // too large for the bitmask engine; counts as exhausted
    current_.emplace(stages_[stage_]);
    current_->set_target(goal_);
}

bool ProofSearch::step(std::size_t chunk, const std::function<bool()>& should_stop)
{
    while (!done_ && chunk > 0) {
        if (!current_) {
            if (stage_ + 1 >= static_cast<int>(stages_.size())) {
                done_ = true;
                break;
            }
            open_stage();
            continue;
        }
        if (!current_->target_reached()) {
            const std::size_t allowance = std::min(chunk, budgets_.step_limit - stage_steps_);
            const std::size_t before = current_->steps();
            current_->run(allowance, should_stop);
            const std::size_t used = current_->steps() - before;
            stage_steps_ += used;
            chunk -= std::min(used, chunk);
            if (used == 0 && !current_->target_reached() && !current_->fixpoint() &&
                stage_steps_ < budgets_.step_limit)
                break;  // stopped from outside
        }
        if (current_->target_reached()) {
            found_ = Theorem{current_->extract_derivation(goal_), stage_};
            done_ = true;
        } else if (current_->fixpoint() || stage_steps_ >= budgets_.step_limit) {
            current_.reset();
        }
    }
    return done_;
}

std::optional<Countermodel> refute(const Sequent& seq, int max_worlds, bool dedup)
{
    ModelSearch search{seq, max_worlds, dedup};
    search.step(std::numeric_limits<std::size_t>::max());
    return search.found();
}

std::optional<std::vector<Countermodel>> refute_literal(const Sequent& seq, int max_worlds, bool dedup)
{
    if (seq.succedent.empty()) {
        auto cm = refute(seq, max_worlds, dedup);
        if (!cm)
            return std::nullopt;
        return std::vector<Countermodel>{std::move(*cm)};
    }
    std::vector<Countermodel> out;
    for (const auto& delta : seq.succedent) {
        auto cm = refute(Sequent{seq.antecedent, {delta}}, max_worlds, dedup);
        if (!cm)
            return std::nullopt;
        out.push_back(std::move(*cm));
    }
    return out;
}

std::optional<Theorem> prove(const Sequent& seq, const Budgets& budgets)
{
    ProofSearch search{seq, budgets};
    search.step(std::numeric_limits<std::size_t>::max());
    return search.found();
}

std::uint64_t fmp_bound(const Sequent& seq)
{
    const std::size_t n = admissible_closure(formulas_of(seq)).size();
    if (n >= 64)
        return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << n;
}

bool verify_countermodel(const Countermodel& cm)
{
    const auto& s = cm.structure;
    if (cm.world < 0 || cm.world >= s.world_count() || !is_valid(s))
        return false;
    return !holds_at(s, cm.world, cm.refuted);
}

namespace {

Verdict decide_literal(const Sequent& seq, const Budgets& budgets, const DecideOptions& options,
                       const Deadline& deadline)
{
    std::vector<Sequent> parts;
    if (seq.succedent.empty())
        parts.push_back(seq);
    for (const auto& delta : seq.succedent)
        parts.push_back(Sequent{seq.antecedent, {delta}});

    Verdict v;
    int exhausted_up_to = budgets.max_worlds;
    std::vector<Countermodel> found;
    for (const auto& part : parts) {
        ModelSearch search{part, budgets.max_worlds, options.dedup};
        run_model_search(search, deadline);
        if (!search.found()) {
            exhausted_up_to = search.exhausted_up_to();
            break;
        }
        found.push_back(checked(*search.found()));
    }
    if (found.size() == parts.size()) {
        v.outcome = NonTheorem{std::move(found)};
        return v;
    }

    ProofSearch proof{seq, budgets};
    run_proof_search(proof, deadline);
    if (proof.found()) {
        v.outcome = checked(*proof.found(), seq);
        return v;
    }
    v.outcome = Unknown{proof.stages_tried(), exhausted_up_to, deadline.expired(),
                        "no literal refutation and no derivation within budget"};
    return v;
}

} // namespace

Verdict decide(const Sequent& seq, const Budgets& budgets, const DecideOptions& options)
{
    const Deadline deadline{budgets.wall_clock};
    const bool single_formula = seq.antecedent.empty() && seq.succedent.size() == 1;

    Verdict v;
    if (options.literal_delta) {
        v = decide_literal(seq, budgets, options, deadline);
    } else {
        ModelSearch models{seq, budgets.max_worlds, options.dedup};
        ProofSearch proofs{seq, budgets};

        if (options.threaded) {
            std::stop_source winner;
            auto stopped = [&] { return winner.stop_requested() || deadline.expired(); };
            {
                std::jthread model_task{[&] {
                    while (!stopped() && !models.step(kModelChunk)) {
                    }
                    if (models.found())
                        winner.request_stop();
                }};
                std::jthread proof_task{[&] {
                    while (!stopped() && !proofs.step(kProofChunk, stopped)) {
                    }
                    if (proofs.found())
                        winner.request_stop();
                }};
            }
        } else {
            while (!deadline.expired() && !(models.done() && proofs.done())) {
                if (models.step(kModelChunk) && models.found())
                    break;
                if (proofs.step(kProofChunk, [&] { return deadline.expired(); }) && proofs.found())
                    break;
            }
        }

        if (models.found() && proofs.found())
            throw std::logic_error{"both a derivation and a countermodel were found for " + render(seq)};
        if (proofs.found()) {
            v.outcome = checked(*proofs.found(), seq);
        } else if (models.found()) {
            v.outcome = NonTheorem{{checked(*models.found())}};
        } else {
            Unknown u{proofs.stages_tried(), models.exhausted_up_to(), deadline.expired(),
                      "no derivation and no countermodel within budget"};
            if (single_formula && models.done() &&
                fmp_bound(seq) <= static_cast<std::uint64_t>(models.exhausted_up_to())) {
                v.valid_by_fmp_bound = true;
                u.note = "valid by FMP bound; no derivation within budget";
            }
            v.outcome = std::move(u);
        }
    }
    if (single_formula)
        v.fmp_bound = fmp_bound(seq);
    return v;
}

} // namespace qml
