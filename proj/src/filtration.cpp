#include "qml/filtration.hpp"

#include "qml/errors.hpp"
#include "qml/semantics.hpp"

#include <map>
#include <stdexcept>

namespace qml {

namespace {

std::vector<std::size_t> sigma_indices(const CompiledFormulas& compiled, const FormulaSet& sigma)
{
    std::vector<std::size_t> out;
    out.reserve(sigma.size());
    for (const auto& f : sigma)
        out.push_back(compiled.index_of(f));
    return out;
}

} // namespace

std::vector<TruthProfile> truth_profiles(const QuantumModalStructure& s, const FormulaSet& sigma)
{
    const std::vector<Formula> roots{sigma.begin(), sigma.end()};
    CompiledFormulas compiled{roots};
    compiled.evaluate(s);
    const auto indices = sigma_indices(compiled, sigma);

    std::vector<TruthProfile> out(static_cast<std::size_t>(s.world_count()));
    for (int i = 0; i < s.world_count(); ++i) {
        out[i].reserve(indices.size());
        for (std::size_t n : indices)
            out[i].push_back(compiled.sat(n).contains(i));
    }
    return out;
}

Collapse collapse(const QuantumModalStructure& s, const FormulaSet& sigma)
{
    if (!is_admissible(sigma))
        throw NotAdmissible{"collapse requires an admissible formula set"};

    const std::vector<Formula> roots{sigma.begin(), sigma.end()};
    CompiledFormulas compiled{roots};
    compiled.evaluate(s);

    const auto profiles = truth_profiles(s, sigma);
    std::map<TruthProfile, int> class_index;
    std::vector<int> class_of(static_cast<std::size_t>(s.world_count()));
    std::vector<int> representative;
    for (int i = 0; i < s.world_count(); ++i) {
        auto [it, inserted] = class_index.emplace(profiles[i], static_cast<int>(representative.size()));
        if (inserted)
            representative.push_back(i);
        class_of[i] = it->second;
    }
    const int classes = static_cast<int>(representative.size());
    QuantumModalStructure result{classes};

    for (int i = 0; i < s.world_count(); ++i)
        for (int j : s.rq_neighbors(i).members())
            result.set_rq(class_of[i], class_of[j]);

    // R_M* is read off the representative's box profile.  Every member of a
    // class must agree on it, which is checked rather than assumed.
    std::vector<std::pair<std::size_t, std::size_t>> boxes;  // ([]a, a)
    for (const auto& f : sigma) {
        if (f.is_box())
            boxes.emplace_back(compiled.index_of(f), compiled.index_of(f.inner()));
    }
    for (int i = 0; i < s.world_count(); ++i) {
        for (auto [box, inner] : boxes) {
            if (compiled.sat(box).contains(i) != compiled.sat(box).contains(representative[class_of[i]]))
                throw std::logic_error{"collapse: class members disagree on a boxed formula"};
        }
    }
    for (int ci = 0; ci < classes; ++ci) {
        const int i = representative[ci];
        for (int cl = 0; cl < classes; ++cl) {
            const int l = representative[cl];
            bool related = true;
            for (auto [box, inner] : boxes) {
                if (compiled.sat(box).contains(i) && !compiled.sat(inner).contains(l)) {
                    related = false;
                    break;
                }
            }
            if (related)
                result.set_rm(ci, cl);
        }
    }

    for (const auto& f : sigma) {
        if (!f.is_atom())
            continue;
        WorldSet value;
        for (int i : s.valuation(f.name()).members())
            value.insert(class_of[i]);
        result.set_valuation(f.name(), value);
    }

    return Collapse{s, sigma, std::move(class_of), std::move(result)};
}

CollapseReport verify_collapse(const Collapse& c)
{
    CollapseReport report;

    const auto violations = validate(c.result);
    report.validates = violations.empty();
    for (const auto& v : violations)
        report.problems.push_back("result: " + v.describe());

    const std::size_t n = c.sigma.size();
    report.size_bound = n >= 63 || static_cast<std::uint64_t>(c.result.world_count()) <= (std::uint64_t{1} << n);
    if (!report.size_bound)
        report.problems.push_back("result has " + std::to_string(c.result.world_count()) + " worlds, above 2^" +
                                  std::to_string(n));

    const std::vector<Formula> roots{c.sigma.begin(), c.sigma.end()};
    CompiledFormulas source{roots};
    CompiledFormulas quotient{roots};
    source.evaluate(c.source);
    quotient.evaluate(c.result);
    report.truth_preserved = true;
    for (const auto& f : c.sigma) {
        for (int i = 0; i < c.source.world_count(); ++i) {
            if (source.sat(f).contains(i) != quotient.sat(f).contains(c.class_of[i])) {
                report.truth_preserved = false;
                report.problems.push_back("truth of " + render(f) + " differs at world " + std::to_string(i));
            }
        }
    }
    return report;
}

} // namespace qml
