#include "qml/rules.hpp"

#include "qml/errors.hpp"

#include <array>
#include <set>
#include <stdexcept>
#include <string>

namespace qml {

namespace {

struct RuleInfo {
    Rule rule;
    std::string_view name;
    int arity;
};

constexpr std::array<RuleInfo, 12> kRules{{
    {Rule::Ax, "AX", 0},
    {Rule::Mem, "MEM", 0},
    {Rule::Wkn, "WKN", 1},
    {Rule::Cut, "CUT", 2},
    {Rule::AndL1, "AND_L1", 1},
    {Rule::AndL2, "AND_L2", 1},
    {Rule::AndR, "AND_R", 2},
    {Rule::NegL, "NEG_L", 1},
    {Rule::NegR, "NEG_R", 1},
    {Rule::NegNegL, "NEG_NEG_L", 1},
    {Rule::NegNegR, "NEG_NEG_R", 1},
    {Rule::K, "K", 1},
}};

FormulaSet with(FormulaSet s, const Formula& f)
{
    s.insert(f);
    return s;
}

FormulaSet without(FormulaSet s, const Formula& f)
{
    s.erase(f);
    return s;
}

// The contexts C with C + {f} == side: side minus f, and side itself when
// it already holds f.
std::vector<FormulaSet> contexts(const FormulaSet& side, const Formula& f)
{
    if (!side.contains(f))
        return {};
    return {without(side, f), side};
}

FormulaSet united(const FormulaSet& a, const FormulaSet& b)
{
    FormulaSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

class Collector {
public:
    Collector(Rule rule, std::span<const Sequent> premises) : rule_{rule}, premises_{premises} {}

    void add(Sequent conclusion, std::vector<Formula> principal)
    {
        if (seen_.emplace(conclusion, principal).second)
            out_.push_back({rule_, {premises_.begin(), premises_.end()}, std::move(conclusion), std::move(principal)});
    }

    std::vector<RuleInstance> take() { return std::move(out_); }

private:
    Rule rule_;
    std::span<const Sequent> premises_;
    std::set<std::pair<Sequent, std::vector<Formula>>> seen_;
    std::vector<RuleInstance> out_;
};

} // namespace

std::string_view rule_name(Rule rule)
{
    for (const auto& info : kRules) {
        if (info.rule == rule)
            return info.name;
    }
    return "?";
}

std::optional<Rule> rule_from_name(std::string_view name)
{
    for (const auto& info : kRules) {
        if (info.name == name)
            return info.rule;
    }
    return std::nullopt;
}

int rule_arity(Rule rule)
{
    for (const auto& info : kRules) {
        if (info.rule == rule)
            return info.arity;
    }
    return -1;
}

std::vector<RuleInstance> rule_conclusions(Rule rule, std::span<const Sequent> premises,
                                           const FormulaSet& universe)
{
    if (static_cast<int>(premises.size()) != rule_arity(rule))
        throw std::invalid_argument{std::string{rule_name(rule)} + " takes " + std::to_string(rule_arity(rule)) +
                                    " premises, got " + std::to_string(premises.size())};
    for (const auto& p : premises) {
        for (const auto& f : formulas_of(p)) {
            if (!universe.contains(f))
                throw OutsideUniverse{"premise formula " + render(f) + " is outside the universe"};
        }
    }

    auto in_universe = [&](const Formula& f) { return universe.contains(f); };
    Collector out{rule, premises};

    switch (rule) {
    case Rule::Ax:
        for (const auto& a : universe)
            out.add({{a}, {a}}, {a});
        break;

    case Rule::Mem:
        for (const auto& f : universe) {
            if (f.is_box() && in_universe(Formula::negation(f)))
                out.add({{}, {f, Formula::negation(f)}}, {f.inner()});
        }
        break;

    case Rule::Wkn: {
        const Sequent& p = premises[0];
        for (const auto& f : universe) {
            if (!p.antecedent.contains(f))
                out.add({with(p.antecedent, f), p.succedent}, {f});
            if (!p.succedent.contains(f))
                out.add({p.antecedent, with(p.succedent, f)}, {f});
        }
        break;
    }

    case Rule::Cut: {
        // Gamma1 |- Delta1, a    a, Gamma2 |- Delta2  =>  Gamma1, Gamma2 |- Delta1, Delta2
        const Sequent& left = premises[0];
        const Sequent& right = premises[1];
        for (const auto& a : left.succedent) {
            for (const auto& delta1 : contexts(left.succedent, a))
                for (const auto& gamma2 : contexts(right.antecedent, a))
                    out.add({united(left.antecedent, gamma2), united(delta1, right.succedent)}, {a});
        }
        break;
    }

    case Rule::AndL1:
    case Rule::AndL2: {
        const Sequent& p = premises[0];
        for (const auto& c : universe) {
            if (!c.is_conjunction())
                continue;
            const Formula& a = rule == Rule::AndL1 ? c.left() : c.right();
            for (const auto& gamma : contexts(p.antecedent, a))
                out.add({with(gamma, c), p.succedent}, {c.left(), c.right()});
        }
        break;
    }

    case Rule::AndR: {
        const Sequent& left = premises[0];
        const Sequent& right = premises[1];
        if (left.antecedent != right.antecedent)
            break;
        for (const auto& c : universe) {
            if (!c.is_conjunction())
                continue;
            for (const auto& d1 : contexts(left.succedent, c.left()))
                for (const auto& d2 : contexts(right.succedent, c.right()))
                    if (d1 == d2)
                        out.add({left.antecedent, with(d1, c)}, {c.left(), c.right()});
        }
        break;
    }

    case Rule::NegL: {
        const Sequent& p = premises[0];
        for (const auto& a : p.succedent) {
            const Formula na = Formula::negation(a);
            if (!in_universe(na))
                continue;
            for (const auto& delta : contexts(p.succedent, a))
                out.add({with(p.antecedent, na), delta}, {a});
        }
        break;
    }

    case Rule::NegR: {
        // a |- Delta  =>  ~Delta |- ~a
        const Sequent& p = premises[0];
        if (p.antecedent.size() != 1)
            break;
        const Formula& a = *p.antecedent.begin();
        FormulaSet negated;
        bool ok = in_universe(Formula::negation(a));
        for (const auto& d : p.succedent) {
            negated.insert(Formula::negation(d));
            ok = ok && in_universe(Formula::negation(d));
        }
        if (ok)
            out.add({negated, {Formula::negation(a)}}, {a});
        break;
    }

    case Rule::NegNegL: {
        const Sequent& p = premises[0];
        for (const auto& a : p.antecedent) {
            const Formula nna = Formula::negation(Formula::negation(a));
            if (!in_universe(nna))
                continue;
            for (const auto& gamma : contexts(p.antecedent, a))
                out.add({with(gamma, nna), p.succedent}, {a});
        }
        break;
    }

    case Rule::NegNegR: {
        const Sequent& p = premises[0];
        for (const auto& a : p.succedent) {
            const Formula nna = Formula::negation(Formula::negation(a));
            if (!in_universe(nna))
                continue;
            for (const auto& delta : contexts(p.succedent, a))
                out.add({p.antecedent, with(delta, nna)}, {a});
        }
        break;
    }

    case Rule::K: {
        // Gamma |- a  =>  []Gamma |- []a
        const Sequent& p = premises[0];
        if (p.succedent.size() != 1)
            break;
        const Formula& a = *p.succedent.begin();
        FormulaSet boxed;
        bool ok = in_universe(Formula::box(a));
        for (const auto& g : p.antecedent) {
            boxed.insert(Formula::box(g));
            ok = ok && in_universe(Formula::box(g));
        }
        if (ok)
            out.add({boxed, {Formula::box(a)}}, {a});
        break;
    }
    }
    return out.take();
}

} // namespace qml
