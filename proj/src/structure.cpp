#include "qml/structure.hpp"

#include "qml/errors.hpp"

#include <algorithm>
#include <set>

namespace qml {

WorldSet::WorldSet(std::initializer_list<int> worlds)
{
    for (int w : worlds)
        insert(w);
}

std::vector<int> WorldSet::members() const
{
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(std::countr_zero(b));
    return out;
}

std::string to_string(WorldSet ws)
{
    std::string out = "{";
    for (int w : ws.members()) {
        if (out.size() > 1)
            out += ',';
        out += std::to_string(w);
    }
    return out + "}";
}

QuantumModalStructure::QuantumModalStructure(int world_count) : world_count_{world_count}
{
    if (world_count < 1 || world_count > kMaxWorlds)
        throw MalformedInput{"world count must be in 1.." + std::to_string(kMaxWorlds) + ", got " +
                             std::to_string(world_count)};
    rq_.resize(static_cast<std::size_t>(world_count));
    rm_.resize(static_cast<std::size_t>(world_count));
}

int QuantumModalStructure::check(int w) const
{
    if (w < 0 || w >= world_count_)
        throw MalformedInput{"world " + std::to_string(w) + " out of range 0.." +
                             std::to_string(world_count_ - 1)};
    return w;
}

WorldSet QuantumModalStructure::check(WorldSet ws) const
{
    if (!ws.subset_of(worlds()))
        throw MalformedInput{"world set " + to_string(ws) + " exceeds " + std::to_string(world_count_) +
                             " worlds"};
    return ws;
}

void QuantumModalStructure::set_rq(int i, int j, bool value)
{
    auto& row = rq_[check(i)];
    value ? row.insert(check(j)) : row.erase(check(j));
}

void QuantumModalStructure::set_rm(int i, int l, bool value)
{
    auto& row = rm_[check(i)];
    value ? row.insert(check(l)) : row.erase(check(l));
}

void QuantumModalStructure::set_rq_row(int i, WorldSet row) { rq_[check(i)] = check(row); }
void QuantumModalStructure::set_rm_row(int i, WorldSet row) { rm_[check(i)] = check(row); }

void QuantumModalStructure::complete_rq()
{
    for (int i = 0; i < world_count_; ++i) {
        rq_[i].insert(i);
        for (int j : rq_[i].members())
            rq_[j].insert(i);
    }
}

WorldSet QuantumModalStructure::valuation(const std::string& atom) const
{
    auto it = valuation_.find(atom);
    return it == valuation_.end() ? WorldSet{} : it->second;
}

void QuantumModalStructure::set_valuation(const std::string& atom, WorldSet worlds)
{
    valuation_[atom] = check(worlds);
}

std::string Violation::describe() const
{
    switch (condition) {
    case Condition::Reflexivity:
        return "reflexivity at " + std::to_string(witness[0]);
    case Condition::Symmetry:
        return "symmetry at (" + std::to_string(witness[0]) + "," + std::to_string(witness[1]) + ")";
    case Condition::Forcing:
        return "forcing at (" + std::to_string(witness[0]) + "," + std::to_string(witness[1]) +
               ") via neighbor " + std::to_string(witness[2]);
    case Condition::Closedness:
        return "valuation of " + atom + " not R_Q-closed";
    }
    return {};
}

std::vector<Violation> validate(const QuantumModalStructure& s)
{
    std::vector<Violation> out;
    const int k = s.world_count();

    for (int i = 0; i < k; ++i) {
        if (!s.rq(i, i)) {
            out.push_back({Condition::Reflexivity, {i}, {}});
            break;
        }
    }

    [&] {
        for (int i = 0; i < k; ++i)
            for (int j : s.rq_neighbors(i).members())
                if (!s.rq(j, i)) {
                    out.push_back({Condition::Symmetry, {i, j}, {}});
                    return;
                }
    }();

    [&] {
        for (int i = 0; i < k; ++i)
            for (int l : s.rm_successors(i).members())
                for (int j : s.rq_neighbors(i).members())
                    if (!s.rm(j, l)) {
                        out.push_back({Condition::Forcing, {i, l, j}, {}});
                        return;
                    }
    }();

    for (const auto& [atom, value] : s.valuations()) {
        if (!is_closed(value, s))
            out.push_back({Condition::Closedness, {}, atom});
    }
    return out;
}

WorldSet ortho_complement(WorldSet x, int world_count, const std::vector<WorldSet>& rq_rows)
{
    WorldSet out;
    for (int j = 0; j < world_count; ++j) {
        if (!rq_rows[j].intersects(x))
            out.insert(j);
    }
    return out;
}

WorldSet ortho_complement(WorldSet x, const QuantumModalStructure& s)
{
    return ortho_complement(x, s.world_count(), s.rq_rows());
}

WorldSet ortho_closure(WorldSet x, const QuantumModalStructure& s)
{
    return ortho_complement(ortho_complement(x, s), s);
}

bool is_closed(WorldSet x, const QuantumModalStructure& s) { return ortho_closure(x, s) == x; }

std::vector<WorldSet> closed_sets(int world_count, const std::vector<WorldSet>& rq_rows)
{
    // Closed sets are exactly the complements Y^perp, and Y^perp is the
    // intersection of the {y}^perp, so intersecting out from W reaches all.
    std::set<WorldSet> found{WorldSet::all(world_count)};
    for (int y = 0; y < world_count; ++y) {
        const WorldSet perp = ortho_complement(WorldSet{y}, world_count, rq_rows);
        std::vector<WorldSet> next;
        for (WorldSet x : found)
            next.push_back(x & perp);
        found.insert(next.begin(), next.end());
    }
    return {found.begin(), found.end()};
}

std::vector<WorldSet> closed_sets(const QuantumModalStructure& s)
{
    return closed_sets(s.world_count(), s.rq_rows());
}

std::vector<WorldSet> rq_components(int world_count, const std::vector<WorldSet>& rq_rows)
{
    std::vector<WorldSet> out;
    WorldSet seen;
    for (int start = 0; start < world_count; ++start) {
        if (seen.contains(start))
            continue;
        WorldSet component{start};
        WorldSet frontier = component;
        while (!frontier.empty()) {
            WorldSet grown;
            for (int w : frontier.members())
                grown |= rq_rows[w];
            frontier = grown - component;
            component |= grown;
        }
        seen |= component;
        out.push_back(component);
    }
    return out;
}

} // namespace qml
