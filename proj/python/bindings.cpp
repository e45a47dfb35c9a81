#include "qml/decision.hpp"
#include "qml/errors.hpp"
#include "qml/filtration.hpp"
#include "qml/model_io.hpp"
#include "qml/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qml;

namespace {

std::vector<int> members(WorldSet ws) { return ws.members(); }

WorldSet to_world_set(const std::vector<int>& worlds)
{
    WorldSet ws;
    for (int w : worlds) {
        if (w < 0 || w >= kMaxWorlds)
            throw MalformedInput{"world " + std::to_string(w) + " out of range"};
        ws.insert(w);
    }
    return ws;
}

std::vector<std::pair<int, int>> pairs(const std::vector<WorldSet>& rows)
{
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j : rows[i].members())
            out.emplace_back(static_cast<int>(i), j);
    }
    return out;
}

py::dict countermodel_dict(const Countermodel& cm)
{
    py::dict d;
    d["model"] = dump_model(cm.structure);
    d["world"] = cm.world;
    d["refuted"] = render(cm.refuted);
    return d;
}

py::dict verdict_dict(const Verdict& v)
{
    py::dict d;
    if (const auto* t = std::get_if<Theorem>(&v.outcome)) {
        d["verdict"] = "theorem";
        d["derivation"] = render_derivation(t->derivation);
        d["stage"] = t->stage;
    } else if (const auto* n = std::get_if<NonTheorem>(&v.outcome)) {
        d["verdict"] = "non-theorem";
        py::list cms;
        for (const auto& cm : n->countermodels)
            cms.append(countermodel_dict(cm));
        d["countermodels"] = cms;
    } else {
        const auto& u = std::get<Unknown>(v.outcome);
        d["verdict"] = "unknown";
        d["stages_tried"] = u.stages_tried;
        d["max_worlds_tried"] = u.max_worlds_tried;
        d["timed_out"] = u.timed_out;
        d["note"] = u.note;
    }
    d["fmp_bound"] = v.fmp_bound ? py::cast(*v.fmp_bound) : py::none();
    d["valid_by_fmp_bound"] = v.valid_by_fmp_bound;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Quantum modal logic: parsing, model checking, filtration, proof search";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<MalformedInput>(m, "MalformedInput", PyExc_ValueError);
    py::register_exception<NotAdmissible>(m, "NotAdmissible", PyExc_ValueError);
    py::register_exception<OutsideUniverse>(m, "OutsideUniverse", PyExc_ValueError);
    py::register_exception<NotDerivable>(m, "NotDerivable", PyExc_RuntimeError);

    py::class_<Formula>(m, "Formula")
        .def_property_readonly("size", &Formula::size)
        .def_property_readonly("is_atom", &Formula::is_atom)
        .def("__str__", [](const Formula& f) { return render(f); })
        .def("__repr__", [](const Formula& f) { return "Formula('" + render(f) + "')"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__lt__", [](const Formula& a, const Formula& b) { return a < b; })
        .def("__hash__", &Formula::hash);

    py::class_<Sequent>(m, "Sequent")
        .def_readonly("antecedent", &Sequent::antecedent)
        .def_readonly("succedent", &Sequent::succedent)
        .def("__str__", [](const Sequent& s) { return render(s); })
        .def("__eq__", [](const Sequent& a, const Sequent& b) { return a == b; });

    m.def("parse", &parse, py::arg("text"));
    m.def("parse_sequent", &parse_sequent, py::arg("text"));
    m.def("render", [](const Formula& f) { return render(f); });
    m.def("admissible_closure", [](const std::vector<Formula>& seed) {
        return admissible_closure(FormulaSet{seed.begin(), seed.end()});
    });
    m.def("enumerate_formula", [](const std::vector<std::string>& atoms, std::uint64_t index) {
        if (atoms.empty())
            throw std::invalid_argument{"atoms must be non-empty"};
        return enumerate_formula(atoms, index);
    });

    py::class_<QuantumModalStructure>(m, "Structure")
        .def(py::init<int>(), py::arg("worlds"))
        .def_property_readonly("world_count", &QuantumModalStructure::world_count)
        .def_property_readonly("rq", [](const QuantumModalStructure& s) { return pairs(s.rq_rows()); })
        .def_property_readonly("rm", [](const QuantumModalStructure& s) { return pairs(s.rm_rows()); })
        .def("set_rq", &QuantumModalStructure::set_rq, py::arg("i"), py::arg("j"), py::arg("value") = true)
        .def("set_rm", &QuantumModalStructure::set_rm, py::arg("i"), py::arg("l"), py::arg("value") = true)
        .def("complete_rq", &QuantumModalStructure::complete_rq)
        .def("valuation", [](const QuantumModalStructure& s, const std::string& a) { return members(s.valuation(a)); })
        .def("set_valuation", [](QuantumModalStructure& s, const std::string& a, const std::vector<int>& worlds) {
            s.set_valuation(a, to_world_set(worlds));
        })
        .def("__eq__", [](const QuantumModalStructure& a, const QuantumModalStructure& b) { return a == b; });

    m.def("validate", [](const QuantumModalStructure& s) {
        std::vector<std::string> out;
        for (const auto& v : validate(s))
            out.push_back(v.describe());
        return out;
    });
    m.def("ortho_complement", [](const std::vector<int>& x, const QuantumModalStructure& s) {
        return members(ortho_complement(to_world_set(x), s));
    });
    m.def("ortho_closure", [](const std::vector<int>& x, const QuantumModalStructure& s) {
        return members(ortho_closure(to_world_set(x), s));
    });
    m.def("closed_sets", [](const QuantumModalStructure& s) {
        std::vector<std::vector<int>> out;
        for (auto ws : closed_sets(s))
            out.push_back(ws.members());
        return out;
    });
    m.def("enumerate_structures", [](int k, const std::vector<std::string>& atoms, bool dedup) {
        return enumerate_structures(k, atoms, {dedup, true});
    }, py::arg("worlds"), py::arg("atoms"), py::arg("dedup") = false);

    m.def("eval", &eval, py::arg("structure"), py::arg("world"), py::arg("formula"));
    m.def("sat_set", [](const QuantumModalStructure& s, const Formula& f) { return members(sat_set(s, f)); });
    m.def("holds_at", &holds_at);
    m.def("holds_in", [](const QuantumModalStructure& s, const Sequent& seq, bool literal) {
        return holds_in(s, seq, literal ? Reading::Literal : Reading::Pointwise);
    }, py::arg("structure"), py::arg("sequent"), py::arg("literal") = false);
    m.def("find_failing_world", &find_failing_world);

    m.def("load_model", [](const std::string& text, bool no_validate) {
        return load_model(text, {no_validate});
    }, py::arg("text"), py::arg("no_validate") = false);
    m.def("dump_model", &dump_model);
    m.def("to_dot", &to_dot);

    m.def("collapse", [](const QuantumModalStructure& s, const std::vector<Formula>& sigma) {
        const Collapse c = collapse(s, FormulaSet{sigma.begin(), sigma.end()});
        const CollapseReport r = verify_collapse(c);
        py::dict d;
        d["class_of"] = c.class_of;
        d["result"] = c.result;
        d["validates"] = r.validates;
        d["size_bound"] = r.size_bound;
        d["truth_preserved"] = r.truth_preserved;
        return d;
    });

    m.def("saturate", [](const std::vector<Formula>& universe, std::size_t step_limit) {
        const DerivableSet ds = saturate(FormulaSet{universe.begin(), universe.end()}, step_limit);
        py::dict d;
        d["fixpoint"] = ds.fixpoint();
        d["minimal"] = ds.minimal();
        return d;
    }, py::arg("universe"), py::arg("step_limit") = 200000);
    m.def("check_derivation", [](const std::string& text) { return check_derivation(parse_derivation(text)); });

    m.def("prove", [](const Sequent& seq, int stage) -> std::optional<std::string> {
        Budgets b;
        b.max_stage = stage;
        auto found = prove(seq, b);
        if (!found)
            return std::nullopt;
        return render_derivation(found->derivation);
    }, py::arg("sequent"), py::arg("stage") = 2);
    m.def("refute", [](const Sequent& seq, int max_worlds, bool dedup) -> py::object {
        auto cm = refute(seq, max_worlds, dedup);
        if (!cm)
            return py::none();
        return countermodel_dict(*cm);
    }, py::arg("sequent"), py::arg("max_worlds") = 4, py::arg("dedup") = false);
    m.def("fmp_bound", &fmp_bound);
    m.def("decide", [](const Sequent& seq, int max_worlds, int max_stage, bool literal_delta, bool dedup,
                       bool threaded) {
        Budgets b;
        b.max_worlds = max_worlds;
        b.max_stage = max_stage;
        DecideOptions o;
        o.literal_delta = literal_delta;
        o.dedup = dedup;
        o.threaded = threaded;
        Verdict v;
        {
            py::gil_scoped_release release;
            v = decide(seq, b, o);
        }
        return verdict_dict(v);
    }, py::arg("sequent"), py::arg("max_worlds") = 4, py::arg("max_stage") = 2, py::arg("literal_delta") = false,
       py::arg("dedup") = false, py::arg("threaded") = true);
}
