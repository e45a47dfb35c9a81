#include "qml/enumerate.hpp"

#include "qml/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace qml {

namespace {

constexpr int kMaxEnumeratedWorlds = 11;  // k(k-1)/2 upper-triangle bits must fit in 64

std::vector<std::pair<int, int>> upper_pairs(int k)
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            out.emplace_back(i, j);
    return out;
}

std::vector<WorldSet> rq_from_mask(int k, const std::vector<std::pair<int, int>>& pairs, std::uint64_t mask)
{
    std::vector<WorldSet> rows(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        rows[i].insert(i);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        if ((mask >> b) & 1U) {
            rows[pairs[b].first].insert(pairs[b].second);
            rows[pairs[b].second].insert(pairs[b].first);
        }
    }
    return rows;
}

WorldSet permute_set(WorldSet ws, const std::vector<int>& perm)
{
    WorldSet out;
    for (int w : ws.members())
        out.insert(perm[w]);
    return out;
}

std::vector<WorldSet> permute_rows(const std::vector<WorldSet>& rows, const std::vector<int>& perm)
{
    std::vector<WorldSet> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out[perm[i]] = permute_set(rows[i], perm);
    return out;
}

std::vector<std::vector<int>> all_permutations(int k)
{
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    if (a == 0 || b == 0)
        return 0;
    return a > max / b ? max : a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t out = 1;
    while (exp-- > 0)
        out = sat_mul(out, base);
    return out;
}

} // namespace

StructureEnumerator::StructureEnumerator(int world_count, std::vector<std::string> atoms,
                                         EnumerationOptions options)
    : k_{world_count}, atoms_{std::move(atoms)}, options_{options}
{
    if (world_count < 1 || world_count > kMaxEnumeratedWorlds)
        throw MalformedInput{"enumeration supports 1.." + std::to_string(kMaxEnumeratedWorlds) +
                             " worlds, got " + std::to_string(world_count)};
    pairs_ = upper_pairs(k_);
    rq_limit_ = std::uint64_t{1} << pairs_.size();
    if (options_.dedup)
        permutations_ = all_permutations(k_);
}

bool StructureEnumerator::next()
{
    while (advance()) {
        if (!options_.dedup || is_canonical())
            return true;
    }
    return false;
}

bool StructureEnumerator::load_rq(std::uint64_t mask)
{
    rq_ = rq_from_mask(k_, pairs_, mask);
    components_ = rq_components(k_, rq_);
    closed_ = closed_sets(k_, rq_);
    rm_digits_.assign(static_cast<std::size_t>(k_), 0);
    rebuild_rm();
    value_digits_.assign(atoms_.size(), 0);
    values_.assign(atoms_.size(), closed_.front());
    return true;
}

void StructureEnumerator::rebuild_rm()
{
    rm_.assign(static_cast<std::size_t>(k_), WorldSet{});
    for (int l = 0; l < k_; ++l) {
        for (std::size_t c = 0; c < components_.size(); ++c) {
            if ((rm_digits_[l] >> c) & 1U) {
                for (int i : components_[c].members())
                    rm_[i].insert(l);
            }
        }
    }
}

bool StructureEnumerator::advance()
{
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
        return load_rq(0);
    }
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
        if (++value_digits_[a] < closed_.size()) {
            values_[a] = closed_[value_digits_[a]];
            return true;
        }
        value_digits_[a] = 0;
        values_[a] = closed_.front();
    }
    if (options_.vary_rm) {
        const std::uint64_t column_options = std::uint64_t{1} << components_.size();
        for (int l = 0; l < k_; ++l) {
            if (++rm_digits_[l] < column_options) {
                rebuild_rm();
                return true;
            }
            rm_digits_[l] = 0;
        }
    }
    if (++rq_mask_ >= rq_limit_) {
        done_ = true;
        return false;
    }
    return load_rq(rq_mask_);
}

bool StructureEnumerator::is_canonical() const
{
    const auto own = structure_encoding(rq_, rm_, values_);
    std::vector<WorldSet> values(values_.size());
    for (const auto& perm : permutations_) {
        for (std::size_t a = 0; a < values_.size(); ++a)
            values[a] = permute_set(values_[a], perm);
        if (structure_encoding(permute_rows(rq_, perm), permute_rows(rm_, perm), values) < own)
            return false;
    }
    return true;
}

QuantumModalStructure StructureEnumerator::current() const
{
    QuantumModalStructure s{k_};
    for (int i = 0; i < k_; ++i) {
        s.set_rq_row(i, rq_[i]);
        s.set_rm_row(i, rm_[i]);
    }
    for (std::size_t a = 0; a < atoms_.size(); ++a)
        s.set_valuation(atoms_[a], values_[a]);
    return s;
}

std::vector<QuantumModalStructure> enumerate_structures(int world_count, const std::vector<std::string>& atoms,
                                                        EnumerationOptions options)
{
    std::vector<QuantumModalStructure> out;
    StructureEnumerator e{world_count, atoms, options};
    while (e.next())
        out.push_back(e.current());
    return out;
}

std::vector<std::vector<WorldSet>> reflexive_symmetric_relations(int world_count)
{
    if (world_count < 1 || world_count > kMaxEnumeratedWorlds)
        throw MalformedInput{"unsupported world count " + std::to_string(world_count)};
    const auto pairs = upper_pairs(world_count);
    std::vector<std::vector<WorldSet>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask)
        out.push_back(rq_from_mask(world_count, pairs, mask));
    return out;
}

std::uint64_t structure_count(int world_count, std::size_t atom_count)
{
    std::uint64_t total = 0;
    for (const auto& rq : reflexive_symmetric_relations(world_count)) {
        const auto components = rq_components(world_count, rq).size();
        const auto closed = closed_sets(world_count, rq).size();
        const std::uint64_t term = sat_mul(sat_pow(2, components * static_cast<std::size_t>(world_count)),
                                           sat_pow(closed, atom_count));
        total = (total > std::numeric_limits<std::uint64_t>::max() - term)
                    ? std::numeric_limits<std::uint64_t>::max()
                    : total + term;
    }
    return total;
}

std::vector<std::uint64_t> structure_encoding(const std::vector<WorldSet>& rq, const std::vector<WorldSet>& rm,
                                              const std::vector<WorldSet>& values)
{
    std::vector<std::uint64_t> out;
    out.reserve(rq.size() + rm.size() + values.size());
    for (auto row : rq)
        out.push_back(row.bits());
    for (auto row : rm)
        out.push_back(row.bits());
    for (auto v : values)
        out.push_back(v.bits());
    return out;
}

bool isomorphic(const QuantumModalStructure& a, const QuantumModalStructure& b)
{
    if (a.world_count() != b.world_count())
        return false;
    std::set<std::string> atoms;
    for (const auto& [name, value] : a.valuations())
        atoms.insert(name);
    for (const auto& [name, value] : b.valuations())
        atoms.insert(name);

    std::vector<WorldSet> a_values, b_values;
    for (const auto& name : atoms) {
        a_values.push_back(a.valuation(name));
        b_values.push_back(b.valuation(name));
    }
    const auto target = structure_encoding(b.rq_rows(), b.rm_rows(), b_values);
    std::vector<WorldSet> permuted(a_values.size());
    for (const auto& perm : all_permutations(a.world_count())) {
        for (std::size_t i = 0; i < a_values.size(); ++i)
            permuted[i] = permute_set(a_values[i], perm);
        if (structure_encoding(permute_rows(a.rq_rows(), perm), permute_rows(a.rm_rows(), perm), permuted) ==
            target)
            return true;
    }
    return false;
}

} // namespace qml
