#include "qml/derivation.hpp"

#include "qml/errors.hpp"
#include "qml/parser.hpp"

#include <algorithm>
#include <functional>

namespace qml {

std::size_t Derivation::node_count() const
{
    std::size_t n = 1;
    for (const auto& p : premises)
        n += p.node_count();
    return n;
}

std::vector<Rule> Derivation::rules() const
{
    std::vector<Rule> out{rule};
    for (const auto& p : premises) {
        auto sub = p.rules();
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

namespace {

bool is_mem_instance(const Sequent& s)
{
    if (s.succedent.size() != 2)
        return false;
    // FormulaSet order puts []a before ~[]a (smaller first).
    const Formula& box = *s.succedent.begin();
    const Formula& neg = *std::next(s.succedent.begin());
    return box.is_box() && neg == Formula::negation(box);
}

bool check_node(const Derivation& d)
{
    if (static_cast<int>(d.premises.size()) != rule_arity(d.rule))
        return false;
    switch (d.rule) {
    case Rule::Wkn:
        return is_weakening_of(d.conclusion, d.premises[0].conclusion);
    case Rule::Mem:
        return is_mem_instance(d.conclusion);
    default:
        break;
    }

    FormulaSet universe = formulas_of(d.conclusion);
    std::vector<Sequent> premises;
    for (const auto& p : d.premises) {
        premises.push_back(p.conclusion);
        auto fs = formulas_of(p.conclusion);
        universe.insert(fs.begin(), fs.end());
    }
    const auto instances = rule_conclusions(d.rule, premises, universe);
    return std::any_of(instances.begin(), instances.end(),
                       [&](const RuleInstance& inst) { return inst.conclusion == d.conclusion; });
}

bool check_tree(const Derivation& d)
{
    if (!check_node(d))
        return false;
    return std::all_of(d.premises.begin(), d.premises.end(), check_tree);
}

void render_into(const Derivation& d, int depth, std::string& out)
{
    out.append(static_cast<std::size_t>(2 * depth), ' ');
    out += rule_name(d.rule);
    out += ": ";
    out += render(d.conclusion);
    out += '\n';
    for (const auto& p : d.premises)
        render_into(p, depth + 1, out);
}

} // namespace

bool check_derivation(const Derivation& d)
{
    try {
        return check_tree(d);
    } catch (const std::exception&) {
        return false;
    }
}

std::string render_derivation(const Derivation& d)
{
    std::string out;
    render_into(d, 0, out);
    return out;
}

Derivation parse_derivation(std::string_view text)
{
    struct Line {
        int depth;
        Derivation node;
    };
    std::vector<Line> lines;
    std::size_t offset = 0;
    while (offset < text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(offset, end - offset);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.find_first_not_of(' ') != std::string_view::npos) {
            const std::size_t indent = line.find_first_not_of(' ');
            if (indent % 2 != 0)
                throw ParseError{"indentation must be a multiple of two spaces", offset};
            const std::size_t colon = line.find(':', indent);
            if (colon == std::string_view::npos)
                throw ParseError{"expected 'RULE: sequent'", offset + indent};
            const auto rule = rule_from_name(line.substr(indent, colon - indent));
            if (!rule)
                throw ParseError{"unknown rule '" + std::string{line.substr(indent, colon - indent)} + "'",
                                 offset + indent};
            Sequent conclusion;
            try {
                conclusion = parse_sequent(line.substr(colon + 1));
            } catch (const ParseError& e) {
                throw ParseError{e.message(), offset + colon + 1 + e.position()};
            }
            lines.push_back({static_cast<int>(indent / 2), Derivation{*rule, std::move(conclusion), {}}});
        }
        offset = end + 1;
    }
    if (lines.empty())
        throw ParseError{"empty derivation", 0};
    if (lines.front().depth != 0)
        throw ParseError{"root must not be indented", 0};

    // Rebuild the tree from the pre-order listing.
    std::size_t next = 0;
    std::function<Derivation(int)> build = [&](int depth) {
        Derivation node = std::move(lines[next].node);
        ++next;
        while (next < lines.size() && lines[next].depth > depth) {
            if (lines[next].depth != depth + 1)
                throw ParseError{"child indented more than one level below its parent", 0};
            node.premises.push_back(build(depth + 1));
        }
        return node;
    };
    Derivation root = build(0);
    if (next != lines.size())
        throw ParseError{"more than one root", 0};
    return root;
}

} // namespace qml
