#include "qml/semantics.hpp"

#include "qml/errors.hpp"

#include <algorithm>
#include <set>

namespace qml {

CompiledFormulas::CompiledFormulas(std::span<const Formula> roots)
{
    std::set<std::string> names;
    for (const auto& f : roots)
        names.merge(atoms_of(f));
    atoms_.assign(names.begin(), names.end());
    for (const auto& f : roots)
        add(f);
    sat_.resize(nodes_.size());
    scratch_values_.resize(atoms_.size());
}

std::size_t CompiledFormulas::add(const Formula& f)
{
    if (auto it = index_.find(f); it != index_.end())
        return it->second;
    Node node{f.connective()};
    switch (f.connective()) {
    case Connective::Atom:
        node.a = static_cast<std::size_t>(
            std::lower_bound(atoms_.begin(), atoms_.end(), f.name()) - atoms_.begin());
        break;
    case Connective::Not:
    case Connective::Box:
        node.a = add(f.inner());
        break;
    case Connective::And:
        node.a = add(f.left());
        node.b = add(f.right());
        break;
    }
    nodes_.push_back(node);
    index_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
}

std::size_t CompiledFormulas::index_of(const Formula& f) const
{
    auto it = index_.find(f);
    if (it == index_.end())
        throw std::out_of_range{"formula " + render(f) + " was not compiled"};
    return it->second;
}

void CompiledFormulas::evaluate(int world_count, const std::vector<WorldSet>& rq_rows,
                                const std::vector<WorldSet>& rm_rows, std::span<const WorldSet> atom_values)
{
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        const Node& node = nodes_[n];
        switch (node.connective) {
        case Connective::Atom:
            sat_[n] = atom_values[node.a];
            break;
        case Connective::And:
            sat_[n] = sat_[node.a] & sat_[node.b];
            break;
        case Connective::Not:
            sat_[n] = ortho_complement(sat_[node.a], world_count, rq_rows);
            break;
        case Connective::Box: {
            WorldSet out;
            const WorldSet inner = sat_[node.a];
            for (int i = 0; i < world_count; ++i) {
                if (rm_rows[i].subset_of(inner))
                    out.insert(i);
            }
            sat_[n] = out;
            break;
        }
        }
    }
}

void CompiledFormulas::evaluate(const QuantumModalStructure& s)
{
    for (std::size_t a = 0; a < atoms_.size(); ++a)
        scratch_values_[a] = s.valuation(atoms_[a]);
    evaluate(s.world_count(), s.rq_rows(), s.rm_rows(), scratch_values_);
}

WorldSet sat_set(const QuantumModalStructure& s, const Formula& f)
{
    CompiledFormulas compiled{std::span{&f, 1}};
    compiled.evaluate(s);
    return compiled.sat(f);
}

bool eval(const QuantumModalStructure& s, int world, const Formula& f)
{
    if (world < 0 || world >= s.world_count())
        throw MalformedInput{"world " + std::to_string(world) + " out of range"};
    return sat_set(s, f).contains(world);
}

WorldSet failing_worlds(const QuantumModalStructure& s, const Sequent& seq)
{
    const auto all = formulas_of(seq);
    const std::vector<Formula> roots{all.begin(), all.end()};
    CompiledFormulas compiled{roots};
    compiled.evaluate(s);
    WorldSet antecedent = s.worlds();
    for (const auto& f : seq.antecedent)
        antecedent &= compiled.sat(f);
    WorldSet succedent;
    for (const auto& f : seq.succedent)
        succedent |= compiled.sat(f);
    return antecedent - succedent;
}

bool holds_at(const QuantumModalStructure& s, int world, const Sequent& seq)
{
    if (world < 0 || world >= s.world_count())
        throw MalformedInput{"world " + std::to_string(world) + " out of range"};
    return !failing_worlds(s, seq).contains(world);
}

bool holds_in(const QuantumModalStructure& s, const Sequent& seq, Reading reading)
{
    if (reading == Reading::Pointwise)
        return failing_worlds(s, seq).empty();
    for (const auto& delta : seq.succedent) {
        if (failing_worlds(s, Sequent{seq.antecedent, {delta}}).empty())
            return true;
    }
    return false;
}

std::optional<int> find_failing_world(const QuantumModalStructure& s, const Sequent& seq)
{
    const int w = failing_worlds(s, seq).first();
    return w < 0 ? std::nullopt : std::optional<int>{w};
}

} // namespace qml
