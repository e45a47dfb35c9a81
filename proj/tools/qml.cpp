// qml: command-line front end.
//
//   qml decide "SEQ" [--max-worlds K] [--max-stage T] [--literal-delta] [--dedup]
//   qml check-model FILE --sequent "SEQ"
//   qml filtrate FILE --formula "F" [--verify] [--output PATH]
//   qml prove "SEQ" --stage T
//   qml refute "SEQ" --max-worlds K
//   qml enumerate K --atoms p,q [--dedup]
//
// Exit codes: decide 0 theorem / 1 non-theorem / 2 unknown; 3 on bad input.

#include "qml/decision.hpp"
#include "qml/errors.hpp"
#include "qml/filtration.hpp"
#include "qml/model_io.hpp"
#include "qml/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace qml;

constexpr int kInputError = 3;

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out{path};
    if (!out)
        throw MalformedInput{"cannot write " + path};
    out << text;
}

void print_countermodel(const Countermodel& cm)
{
    std::cout << "refuted: " << render(cm.refuted) << '\n';
    std::cout << "world: " << cm.world << '\n';
    std::cout << "model: " << dump_model(cm.structure) << '\n';
}

struct DecideArgs {
    std::string sequent;
    int max_worlds = 4;
    int max_stage = 2;
    std::size_t step_limit = Budgets{}.step_limit;
    long timeout_ms = 0;
    bool literal_delta = false;
    bool dedup = false;
    bool single_thread = false;
    std::string witness;
    std::string dot;
};

int run_decide(const DecideArgs& a)
{
    const Sequent seq = parse_sequent(a.sequent);
    Budgets budgets;
    budgets.max_worlds = a.max_worlds;
    budgets.max_stage = a.max_stage;
    budgets.step_limit = a.step_limit;
    budgets.wall_clock = std::chrono::milliseconds{a.timeout_ms};
    DecideOptions options;
    options.dedup = a.dedup;
    options.literal_delta = a.literal_delta;
    options.threaded = !a.single_thread;

    const Verdict v = decide(seq, budgets, options);
    int code = 2;
    if (const auto* t = std::get_if<Theorem>(&v.outcome)) {
        const std::string text = render_derivation(t->derivation);
        std::cout << "verdict: theorem\n";
        std::cout << "stage: " << t->stage << '\n';
        std::cout << "derivation:\n" << text;
        if (!a.witness.empty())
            write_file(a.witness, text);
        code = 0;
    } else if (const auto* n = std::get_if<NonTheorem>(&v.outcome)) {
        std::cout << "verdict: non-theorem\n";
        for (const auto& cm : n->countermodels)
            print_countermodel(cm);
        if (!a.witness.empty())
            write_file(a.witness, dump_model(n->countermodels.front().structure) + "\n");
        if (!a.dot.empty())
            write_file(a.dot, to_dot(n->countermodels.front().structure));
        code = 1;
    } else {
        const auto& u = std::get<Unknown>(v.outcome);
        std::cout << "verdict: unknown\n";
        std::cout << "stages tried: " << u.stages_tried << '\n';
        std::cout << "worlds exhausted up to: " << u.max_worlds_tried << '\n';
        if (u.timed_out)
            std::cout << "wall clock limit reached\n";
        std::cout << "note: " << u.note << '\n';
    }
    if (v.fmp_bound)
        std::cout << "fmp bound: " << *v.fmp_bound << " worlds\n";
    return code;
}

int run_check_model(const std::string& path, const std::string& sequent, bool no_validate)
{
    const auto s = load_model_file(path, {no_validate});
    const Sequent seq = parse_sequent(sequent);
    std::vector<Formula> columns;
    for (const auto& f : seq.antecedent)
        columns.push_back(f);
    for (const auto& f : seq.succedent)
        columns.push_back(f);

    std::vector<WorldSet> sat;
    for (const auto& f : columns)
        sat.push_back(sat_set(s, f));
    const WorldSet failing = failing_worlds(s, seq);

    std::cout << "sequent: " << render(seq) << '\n';
    for (int w = 0; w < s.world_count(); ++w) {
        std::cout << "world " << w << ':';
        for (std::size_t c = 0; c < columns.size(); ++c)
            std::cout << "  " << (sat[c].contains(w) ? "⊨ " : "⊭ ") << render(columns[c]);
        std::cout << "  => " << (failing.contains(w) ? "fails" : "holds") << '\n';
    }
    std::cout << (failing.empty() ? "holds in structure\n" : "fails in structure\n");
    return failing.empty() ? 0 : 1;
}

int run_filtrate(const std::string& path, const std::string& formula, bool verify, const std::string& output,
                 bool no_validate)
{
    const auto s = load_model_file(path, {no_validate});
    const FormulaSet sigma = admissible_closure({parse(formula)});
    const Collapse c = collapse(s, sigma);

    std::cout << "sigma:";
    for (const auto& f : sigma)
        std::cout << ' ' << render(f) << ';';
    std::cout << '\n';
    std::cout << "classes:";
    for (std::size_t w = 0; w < c.class_of.size(); ++w)
        std::cout << ' ' << w << "->" << c.class_of[w];
    std::cout << '\n';
    const std::string model = dump_model(c.result);
    if (output.empty())
        std::cout << "model: " << model << '\n';
    else
        write_file(output, model + "\n");

    if (!verify)
        return 0;
    const CollapseReport report = verify_collapse(c);
    std::cout << "validates: " << (report.validates ? "yes" : "no") << '\n';
    std::cout << "size bound: " << (report.size_bound ? "yes" : "no") << '\n';
    std::cout << "truth preserved: " << (report.truth_preserved ? "yes" : "no") << '\n';
    for (const auto& p : report.problems)
        std::cout << "problem: " << p << '\n';
    return report.ok() ? 0 : 1;
}

int run_prove(const std::string& sequent, int stage, std::size_t step_limit, const std::string& witness)
{
    const Sequent seq = parse_sequent(sequent);
    Budgets budgets;
    budgets.max_stage = stage;
    budgets.step_limit = step_limit;
    const auto found = prove(seq, budgets);
    if (!found) {
        std::cout << "not found at stage " << stage << '\n';
        return 2;
    }
    const std::string text = render_derivation(found->derivation);
    std::cout << text;
    if (!witness.empty())
        write_file(witness, text);
    return 0;
}

int run_refute(const std::string& sequent, int max_worlds, bool dedup, bool literal, const std::string& witness,
               const std::string& dot)
{
    const Sequent seq = parse_sequent(sequent);
    std::vector<Countermodel> found;
    if (literal) {
        if (auto cms = refute_literal(seq, max_worlds, dedup))
            found = std::move(*cms);
    } else if (auto cm = refute(seq, max_worlds, dedup)) {
        found.push_back(std::move(*cm));
    }
    if (found.empty()) {
        std::cout << "no countermodel up to " << max_worlds << '\n';
        return 2;
    }
    for (const auto& cm : found)
        print_countermodel(cm);
    if (!witness.empty())
        write_file(witness, dump_model(found.front().structure) + "\n");
    if (!dot.empty())
        write_file(dot, to_dot(found.front().structure));
    return 1;
}

int run_enumerate(int k, const std::vector<std::string>& atoms, bool dedup)
{
    StructureEnumerator e{k, atoms, {dedup, true}};
    while (e.next())
        std::cout << dump_model(e.current()) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decision procedures for quantum modal logic"};
    app.require_subcommand(1);

    DecideArgs d;
    auto* decide_cmd = app.add_subcommand("decide", "Decide a sequent: derivation or countermodel");
    decide_cmd->add_option("sequent", d.sequent, "Sequent, e.g. \"p & q |- q\"")->required();
    decide_cmd->add_option("--max-worlds", d.max_worlds, "Largest countermodel size searched")->check(CLI::Range(0, 11));
    decide_cmd->add_option("--max-stage", d.max_stage, "Last universe stage for proof search")->check(CLI::NonNegativeNumber);
    decide_cmd->add_option("--step-limit", d.step_limit, "Saturation steps per stage");
    decide_cmd->add_option("--timeout-ms", d.timeout_ms, "Wall-clock limit, 0 for none")->check(CLI::NonNegativeNumber);
    decide_cmd->add_flag("--literal-delta", d.literal_delta, "Refute every succedent formula separately");
    decide_cmd->add_flag("--dedup", d.dedup, "Enumerate one structure per isomorphism class");
    decide_cmd->add_flag("--single-thread", d.single_thread, "Alternate both searches on one thread");
    decide_cmd->add_option("--witness", d.witness, "Write the derivation or model here");
    decide_cmd->add_option("--dot", d.dot, "Write the countermodel as Graphviz here");

    std::string model_path, sequent, formula, output, witness, dot, atoms_arg;
    bool no_validate = false, verify = false, dedup = false, literal = false;
    int stage = 2, max_worlds = 4, k = 1;
    std::size_t step_limit = Budgets{}.step_limit;

    auto* check_cmd = app.add_subcommand("check-model", "Evaluate a sequent at every world of a model file");
    check_cmd->add_option("file", model_path, "Model file")->required();
    check_cmd->add_option("--sequent", sequent, "Sequent to evaluate")->required();
    check_cmd->add_flag("--no-validate", no_validate, "Accept structures that fail validation");

    auto* filtrate_cmd = app.add_subcommand("filtrate", "Collapse a model by the closure of a formula");
    filtrate_cmd->add_option("file", model_path, "Model file")->required();
    filtrate_cmd->add_option("--formula", formula, "Formula whose admissible closure is used")->required();
    filtrate_cmd->add_flag("--verify", verify, "Check the collapse and report");
    filtrate_cmd->add_option("--output", output, "Write the collapsed model here");
    filtrate_cmd->add_flag("--no-validate", no_validate, "Accept structures that fail validation");

    auto* prove_cmd = app.add_subcommand("prove", "Search for a derivation");
    prove_cmd->add_option("sequent", sequent, "Sequent")->required();
    prove_cmd->add_option("--stage", stage, "Last universe stage")->check(CLI::NonNegativeNumber);
    prove_cmd->add_option("--step-limit", step_limit, "Saturation steps per stage");
    prove_cmd->add_option("--witness", witness, "Write the derivation here");

    auto* refute_cmd = app.add_subcommand("refute", "Search for a countermodel");
    refute_cmd->add_option("sequent", sequent, "Sequent")->required();
    refute_cmd->add_option("--max-worlds", max_worlds, "Largest structure size")->check(CLI::Range(0, 11));
    refute_cmd->add_flag("--dedup", dedup, "One structure per isomorphism class");
    refute_cmd->add_flag("--literal-delta", literal, "Refute every succedent formula separately");
    refute_cmd->add_option("--witness", witness, "Write the model here");
    refute_cmd->add_option("--dot", dot, "Write the model as Graphviz here");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Print every structure of a given size, one per line");
    enumerate_cmd->add_option("worlds", k, "Number of worlds")->required()->check(CLI::Range(1, 11));
    enumerate_cmd->add_option("--atoms", atoms_arg, "Comma-separated atoms");
    enumerate_cmd->add_flag("--dedup", dedup, "One structure per isomorphism class");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*decide_cmd)
            return run_decide(d);
        if (*check_cmd)
            return run_check_model(model_path, sequent, no_validate);
        if (*filtrate_cmd)
            return run_filtrate(model_path, formula, verify, output, no_validate);
        if (*prove_cmd)
            return run_prove(sequent, stage, step_limit, witness);
        if (*refute_cmd)
            return run_refute(sequent, max_worlds, dedup, literal, witness, dot);
        if (*enumerate_cmd) {
            std::vector<std::string> atoms;
            for (auto& a : CLI::detail::split(atoms_arg, ','))
                if (!a.empty())
                    atoms.push_back(CLI::detail::trim_copy(a));
            for (const auto& a : atoms) {
                if (!parse(a).is_atom())
                    throw std::invalid_argument{"not an atom: " + a};
            }
            return run_enumerate(k, atoms, dedup);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
