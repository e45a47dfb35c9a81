#include "qml/sequent.hpp"

namespace qml {

bool is_weakening_of(const Sequent& bigger, const Sequent& smaller)
{
    auto includes = [](const FormulaSet& big, const FormulaSet& small) {
        for (const auto& f : small) {
            if (!big.contains(f))
                return false;
        }
        return true;
    };
    return includes(bigger.antecedent, smaller.antecedent) &&
           includes(bigger.succedent, smaller.succedent);
}

FormulaSet formulas_of(const Sequent& seq)
{
    FormulaSet out = seq.antecedent;
    out.insert(seq.succedent.begin(), seq.succedent.end());
    return out;
}

std::set<std::string> atoms_of(const Sequent& seq) { return atoms_of(formulas_of(seq)); }

std::string render(const Sequent& seq)
{
    auto side = [](const FormulaSet& fs) {
        std::string out;
        for (const auto& f : fs) {
            if (!out.empty())
                out += ", ";
            out += render(f);
        }
        return out;
    };
    std::string out = side(seq.antecedent);
    if (!out.empty())
        out += ' ';
    out += "|-";
    if (!seq.succedent.empty())
        out += ' ' + side(seq.succedent);
    return out;
}

} // namespace qml
