#include "qml/formula.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace qml {

struct Formula::Node {
    Connective connective;
    std::string name;
    std::vector<Formula> children;
    std::size_t size;
    std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value)
{
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Formula Formula::atom(std::string name)
{
    const std::size_t h = mix(0, std::hash<std::string>{}(name));
    return Formula{std::make_shared<const Node>(Node{Connective::Atom, std::move(name), {}, 1, h})};
}

Formula Formula::negation(Formula inner)
{
    const std::size_t s = inner.size() + 1;
    const std::size_t h = mix(1, inner.hash());
    return Formula{std::make_shared<const Node>(Node{Connective::Not, {}, {std::move(inner)}, s, h})};
}

Formula Formula::box(Formula inner)
{
    const std::size_t s = inner.size() + 1;
    const std::size_t h = mix(2, inner.hash());
    return Formula{std::make_shared<const Node>(Node{Connective::Box, {}, {std::move(inner)}, s, h})};
}

Formula Formula::conjunction(Formula left, Formula right)
{
    const std::size_t s = left.size() + right.size() + 1;
    const std::size_t h = mix(mix(3, left.hash()), right.hash());
    return Formula{std::make_shared<const Node>(
        Node{Connective::And, {}, {std::move(left), std::move(right)}, s, h})};
}

Formula Formula::disjunction(const Formula& left, const Formula& right)
{
    return negation(conjunction(negation(left), negation(right)));
}

Formula Formula::diamond(const Formula& inner)
{
    return negation(box(negation(inner)));
}

Connective Formula::connective() const { return node_->connective; }

const std::string& Formula::name() const
{
    assert(is_atom());
    return node_->name;
}

const Formula& Formula::inner() const
{
    assert(is_negation() || is_box());
    return node_->children[0];
}

const Formula& Formula::left() const
{
    assert(is_conjunction());
    return node_->children[0];
}

const Formula& Formula::right() const
{
    assert(is_conjunction());
    return node_->children[1];
}

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash())
        return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (auto c = a.size() <=> b.size(); c != 0)
        return c;
    if (auto c = a.connective() <=> b.connective(); c != 0)
        return c;
    if (a.is_atom())
        return a.name() <=> b.name();
    for (std::size_t i = 0; i < a.node_->children.size(); ++i) {
        if (auto c = a.node_->children[i] <=> b.node_->children[i]; c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

namespace {

bool needs_parens_as_operand(const Formula& f) { return f.is_conjunction(); }

void render_into(const Formula& f, std::string& out)
{
    switch (f.connective()) {
    case Connective::Atom:
        out += f.name();
        break;
    case Connective::Not:
    case Connective::Box:
        out += f.is_negation() ? "~" : "[]";
        if (needs_parens_as_operand(f.inner())) {
            out += '(';
            render_into(f.inner(), out);
            out += ')';
        } else {
            render_into(f.inner(), out);
        }
        break;
    case Connective::And:
        // '&' is left-associative, so only a right conjunct needs brackets.
        render_into(f.left(), out);
        out += " & ";
        if (f.right().is_conjunction()) {
            out += '(';
            render_into(f.right(), out);
            out += ')';
        } else {
            render_into(f.right(), out);
        }
        break;
    }
}

void collect_subformulas(const Formula& f, FormulaSet& out)
{
    if (!out.insert(f).second)
        return;
    switch (f.connective()) {
    case Connective::Atom:
        break;
    case Connective::Not:
    case Connective::Box:
        collect_subformulas(f.inner(), out);
        break;
    case Connective::And:
        collect_subformulas(f.left(), out);
        collect_subformulas(f.right(), out);
        break;
    }
}

} // namespace

std::string render(const Formula& f)
{
    std::string out;
    render_into(f, out);
    return out;
}

FormulaSet subformulas(const Formula& f)
{
    FormulaSet out;
    collect_subformulas(f, out);
    return out;
}

std::set<std::string> atoms_of(const Formula& f)
{
    std::set<std::string> out;
    for (const auto& g : subformulas(f)) {
        if (g.is_atom())
            out.insert(g.name());
    }
    return out;
}

std::set<std::string> atoms_of(const FormulaSet& fs)
{
    std::set<std::string> out;
    for (const auto& f : fs)
        out.merge(atoms_of(f));
    return out;
}

bool contains_box(const Formula& f)
{
    switch (f.connective()) {
    case Connective::Atom:
        return false;
    case Connective::Box:
        return true;
    case Connective::Not:
        return contains_box(f.inner());
    case Connective::And:
        return contains_box(f.left()) || contains_box(f.right());
    }
    return false;
}

FormulaSet admissible_closure(const FormulaSet& seed)
{
    FormulaSet out;
    for (const auto& f : seed)
        collect_subformulas(f, out);
    std::vector<Formula> negated_atoms;
    for (const auto& f : out) {
        if (f.is_atom())
            negated_atoms.push_back(Formula::negation(f));
    }
    out.insert(negated_atoms.begin(), negated_atoms.end());
    return out;
}

bool is_admissible(const FormulaSet& fs)
{
    for (const auto& f : fs) {
        switch (f.connective()) {
        case Connective::Atom:
            if (!fs.contains(Formula::negation(f)))
                return false;
            break;
        case Connective::Not:
        case Connective::Box:
            if (!fs.contains(f.inner()))
                return false;
            break;
        case Connective::And:
            if (!fs.contains(f.left()) || !fs.contains(f.right()))
                return false;
            break;
        }
    }
    return true;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    return (a > kSaturated - b) ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    return (a > kSaturated / b) ? kSaturated : a * b;
}

// counts[n] = number of formulas with n nodes; grown on demand.
class CountTable {
public:
    explicit CountTable(std::size_t atom_count) : counts_{0, atom_count} {}

    std::uint64_t at(std::size_t size)
    {
        while (counts_.size() <= size) {
            const std::size_t n = counts_.size();
            std::uint64_t total = sat_mul(2, counts_[n - 1]);
            for (std::size_t left = 1; left + 1 < n; ++left)
                total = sat_add(total, sat_mul(counts_[left], counts_[n - 1 - left]));
            counts_.push_back(total);
        }
        return counts_[size];
    }

private:
    std::vector<std::uint64_t> counts_;
};

Formula unrank(std::span<const std::string> atoms, CountTable& table, std::size_t size,
               std::uint64_t rank)
{
    if (size == 1)
        return Formula::atom(atoms[rank]);
    const std::uint64_t unary = table.at(size - 1);
    if (rank < unary)
        return Formula::negation(unrank(atoms, table, size - 1, rank));
    rank -= unary;
    if (rank < unary)
        return Formula::box(unrank(atoms, table, size - 1, rank));
    rank -= unary;
    for (std::size_t left = 1; left + 1 < size; ++left) {
        const std::size_t right = size - 1 - left;
        const std::uint64_t right_count = table.at(right);
        const std::uint64_t block = sat_mul(table.at(left), right_count);
        if (rank < block) {
            return Formula::conjunction(unrank(atoms, table, left, rank / right_count),
                                        unrank(atoms, table, right, rank % right_count));
        }
        rank -= block;
    }
    throw std::logic_error{"enumerate_formula: rank out of range"};
}

} // namespace

std::uint64_t formula_count(std::size_t atom_count, std::size_t size)
{
    if (size == 0)
        return 0;
    CountTable table{atom_count};
    return table.at(size);
}

Formula enumerate_formula(std::span<const std::string> atoms, std::uint64_t index)
{
    if (atoms.empty())
        throw std::invalid_argument{"enumerate_formula: atom list is empty"};
    CountTable table{atoms.size()};
    std::size_t size = 1;
    while (index >= table.at(size)) {
        index -= table.at(size);
        ++size;
    }
    return unrank(atoms, table, size, index);
}

} // namespace qml
