#include "qml/calculus.hpp"

#include "qml/errors.hpp"

#include <bit>
#include <stdexcept>

namespace qml {

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

template <typename F>
void for_each_bit(std::uint64_t mask, F&& f)
{
    for (; mask != 0; mask &= mask - 1)
        f(std::countr_zero(mask));
}

} // namespace

DerivableSet::DerivableSet(FormulaSet universe) : universe_{std::move(universe)}
{
    if (universe_.size() > kMaxUniverse)
        throw std::invalid_argument{"universe holds " + std::to_string(universe_.size()) + " formulas, limit is " +
                                    std::to_string(kMaxUniverse)};
    for (const auto& f : universe_) {
        for (const auto& g : subformulas(f)) {
            if (!universe_.contains(g))
                throw std::invalid_argument{"universe is not closed under subformulas: missing " + render(g)};
        }
    }

    formulas_.assign(universe_.begin(), universe_.end());
    for (int i = 0; i < static_cast<int>(formulas_.size()); ++i)
        index_.emplace(formulas_[i], i);
    auto lookup = [&](const Formula& f) {
        auto it = index_.find(f);
        return it == index_.end() ? -1 : it->second;
    };
    for (const auto& f : formulas_) {
        negation_.push_back(lookup(Formula::negation(f)));
        double_negation_.push_back(lookup(Formula::negation(Formula::negation(f))));
        box_.push_back(lookup(Formula::box(f)));
        if (f.is_conjunction())
            conjunctions_.push_back({lookup(f), lookup(f.left()), lookup(f.right())});
    }

    for (int a = 0; a < static_cast<int>(formulas_.size()); ++a)
        push(Rule::Ax, Key{bit(a), bit(a)}, {}, {});
    for (int a = 0; a < static_cast<int>(formulas_.size()); ++a) {
        if (formulas_[a].is_box() && negation_[a] >= 0)
            push(Rule::Mem, Key{0, bit(a) | bit(negation_[a])}, {}, {});
    }
}

void DerivableSet::push(Rule rule, Key conclusion, std::vector<Key> sources, std::vector<Key> premises)
{
    if (!queued_.insert(conclusion).second)
        return;
    queue_.push_back(Step{rule, conclusion, std::move(sources), std::move(premises)});
}

bool DerivableSet::subsumed(const Key& k) const
{
    for (std::size_t i = 0; i < minimal_.size(); ++i) {
        if (live_[i] && subsumes(minimal_[i], k))
            return true;
    }
    return false;
}

bool DerivableSet::run(std::size_t max_steps, const std::function<bool()>& should_stop)
{
    std::size_t budget = max_steps;
    while (!queue_.empty() && budget > 0 && !target_reached_) {
        if (should_stop && should_stop())
            break;
        --budget;
        ++steps_;
        Step step = std::move(queue_.front());
        queue_.pop_front();
        if (subsumed(step.conclusion))
            continue;
        accept(std::move(step));
    }
    return fixpoint();
}

void DerivableSet::accept(Step step)
{
    const Key k = step.conclusion;
    for (std::size_t i = 0; i < minimal_.size(); ++i) {
        if (live_[i] && subsumes(k, minimal_[i]))
            live_[i] = false;
    }
    if (target_ && subsumes(k, *target_))
        target_reached_ = true;
    provenance_.emplace(k, std::move(step));
    minimal_.push_back(k);
    live_.push_back(true);

    apply_unary(k);
    const std::size_t count = minimal_.size();
    for (std::size_t i = 0; i < count; ++i) {
        if (!live_[i])
            continue;
        apply_binary(k, minimal_[i]);
        if (minimal_[i] != k)
            apply_binary(minimal_[i], k);
    }
}

std::uint64_t DerivableSet::mapped(std::uint64_t mask, const std::vector<int>& image, bool& ok) const
{
    std::uint64_t out = 0;
    ok = true;
    for_each_bit(mask, [&](int f) {
        if (image[f] < 0)
            ok = false;
        else
            out |= bit(image[f]);
    });
    return out;
}

void DerivableSet::apply_unary(const Key& s)
{
    const auto [gamma, delta] = s;

    // a, G |- D  =>  a&b, G |- D   (and the b variant)
    for (const auto& c : conjunctions_) {
        if (gamma & bit(c.left))
            push(Rule::AndL1, Key{(gamma & ~bit(c.left)) | bit(c.self), delta}, s);
        if (gamma & bit(c.right))
            push(Rule::AndL2, Key{(gamma & ~bit(c.right)) | bit(c.self), delta}, s);
    }

    // G |- D, a  =>  ~a, G |- D
    for_each_bit(delta, [&](int a) {
        if (negation_[a] >= 0)
            push(Rule::NegL, Key{gamma | bit(negation_[a]), delta & ~bit(a)}, s);
    });

    // a |- D  =>  ~D |- ~a.  An empty antecedent weakens to any a.
    bool negatable = false;
    const std::uint64_t negated_delta = mapped(delta, negation_, negatable);
    if (negatable) {
        if (std::popcount(gamma) == 1) {
            const int a = std::countr_zero(gamma);
            if (negation_[a] >= 0)
                push(Rule::NegR, Key{negated_delta, bit(negation_[a])}, s);
        } else if (gamma == 0) {
            for (int a = 0; a < static_cast<int>(formulas_.size()); ++a) {
                if (negation_[a] >= 0)
                    push(Rule::NegR, Key{negated_delta, bit(negation_[a])}, {s}, {Key{bit(a), delta}});
            }
        }
    }

    for_each_bit(gamma, [&](int a) {
        if (double_negation_[a] >= 0)
            push(Rule::NegNegL, Key{(gamma & ~bit(a)) | bit(double_negation_[a]), delta}, s);
    });
    for_each_bit(delta, [&](int a) {
        if (double_negation_[a] >= 0)
            push(Rule::NegNegR, Key{gamma, (delta & ~bit(a)) | bit(double_negation_[a])}, s);
    });

    // G |- a  =>  []G |- []a.  An empty succedent weakens to any a.
    bool boxable = false;
    const std::uint64_t boxed_gamma = mapped(gamma, box_, boxable);
    if (boxable) {
        if (std::popcount(delta) == 1) {
            const int a = std::countr_zero(delta);
            if (box_[a] >= 0)
                push(Rule::K, Key{boxed_gamma, bit(box_[a])}, s);
        } else if (delta == 0) {
            for (int a = 0; a < static_cast<int>(formulas_.size()); ++a) {
                if (box_[a] >= 0)
                    push(Rule::K, Key{boxed_gamma, bit(box_[a])}, {s}, {Key{gamma, bit(a)}});
            }
        }
    }
}

void DerivableSet::apply_binary(const Key& left, const Key& right)
{
    // G |- D, a    G |- D, b  =>  G |- D, a&b, with both premises weakened
    // to the shared context.
    for (const auto& c : conjunctions_) {
        if ((left.succ & bit(c.left)) && (right.succ & bit(c.right))) {
            const std::uint64_t gamma = left.ante | right.ante;
            const std::uint64_t delta = (left.succ & ~bit(c.left)) | (right.succ & ~bit(c.right));
            push(Rule::AndR, Key{gamma, delta | bit(c.self)}, {left, right},
                 {Key{gamma, delta | bit(c.left)}, Key{gamma, delta | bit(c.right)}});
        }
    }

    // G1 |- D1, a    a, G2 |- D2  =>  G1, G2 |- D1, D2
    for_each_bit(left.succ & right.ante, [&](int a) {
        push(Rule::Cut, Key{left.ante | (right.ante & ~bit(a)), (left.succ & ~bit(a)) | right.succ},
             {left, right}, {left, right});
    });
}

std::vector<Sequent> DerivableSet::minimal() const
{
    std::vector<Sequent> out;
    for (std::size_t i = 0; i < minimal_.size(); ++i) {
        if (live_[i])
            out.push_back(sequent_of(minimal_[i]));
    }
    return out;
}

std::size_t DerivableSet::minimal_count() const
{
    std::size_t n = 0;
    for (bool b : live_)
        n += b ? 1 : 0;
    return n;
}

DerivableSet::Key DerivableSet::key_of(const Sequent& seq) const
{
    auto mask = [&](const FormulaSet& side) {
        std::uint64_t out = 0;
        for (const auto& f : side) {
            auto it = index_.find(f);
            if (it == index_.end())
                throw OutsideUniverse{"formula " + render(f) + " is outside the universe"};
            out |= bit(it->second);
        }
        return out;
    };
    return Key{mask(seq.antecedent), mask(seq.succedent)};
}

Sequent DerivableSet::sequent_of(const Key& k) const
{
    Sequent out;
    for_each_bit(k.ante, [&](int f) { out.antecedent.insert(formulas_[f]); });
    for_each_bit(k.succ, [&](int f) { out.succedent.insert(formulas_[f]); });
    return out;
}

void DerivableSet::set_target(const Sequent& target)
{
    target_ = key_of(target);
    target_reached_ = subsumed(*target_);
}

bool DerivableSet::contains(const Sequent& seq) const { return subsumed(key_of(seq)); }

Derivation DerivableSet::build(const Key& k) const
{
    const Step& step = provenance_.at(k);
    Derivation d{step.rule, sequent_of(k), {}};
    for (std::size_t i = 0; i < step.sources.size(); ++i) {
        Derivation child = build(step.sources[i]);
        if (step.premises[i] != step.sources[i])
            child = Derivation{Rule::Wkn, sequent_of(step.premises[i]), {std::move(child)}};
        d.premises.push_back(std::move(child));
    }
    return d;
}

Derivation DerivableSet::extract_derivation(const Sequent& seq) const
{
    const Key goal = key_of(seq);
    for (std::size_t i = 0; i < minimal_.size(); ++i) {
        if (live_[i] && subsumes(minimal_[i], goal)) {
            Derivation d = build(minimal_[i]);
            if (minimal_[i] != goal)
                d = Derivation{Rule::Wkn, seq, {std::move(d)}};
            return d;
        }
    }
    throw NotDerivable{"sequent " + render(seq) + " is not derivable in this universe"};
}

DerivableSet saturate(const FormulaSet& universe, std::size_t step_limit)
{
    DerivableSet ds{universe};
    ds.run(step_limit);
    return ds;
}

std::vector<FormulaSet> universe_stages(const Sequent& goal, int max_stage, std::size_t formulas_per_stage)
{
    std::vector<FormulaSet> out;
    FormulaSet current = admissible_closure(formulas_of(goal));
    out.push_back(current);

    const auto atom_set = atoms_of(goal);
    const std::vector<std::string> atoms{atom_set.begin(), atom_set.end()};
    std::uint64_t cursor = 0;
    for (int stage = 1; stage <= max_stage; ++stage) {
        if (!atoms.empty()) {
            std::size_t added = 0;
            while (added < formulas_per_stage) {
                if (current.insert(enumerate_formula(atoms, cursor++)).second)
                    ++added;
            }
        }
        std::vector<Formula> negated_boxes;
        for (const auto& f : current) {
            if (f.is_box())
                negated_boxes.push_back(Formula::negation(f));
        }
        current.insert(negated_boxes.begin(), negated_boxes.end());
        out.push_back(current);
    }
    return out;
}

} // namespace qml
