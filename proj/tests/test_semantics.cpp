#include "oracles.hpp"

#include "qml/enumerate.hpp"
#include "qml/errors.hpp"
#include "qml/parser.hpp"
#include "qml/semantics.hpp"

#include <doctest.h>

using namespace qml;

namespace {

QuantumModalStructure p3_with_p()
{
    auto s = oracle::p3();
    s.set_valuation("p", {0});
    return s;
}

QuantumModalStructure c4_pqr()
{
    auto s = oracle::c4();
    s.set_valuation("p", {0});
    s.set_valuation("q", {1});
    s.set_valuation("r", {2});
    return s;
}

const char* const kDistributivity = "p & (q | r) |- (p & q) | (p & r)";

} // namespace

TEST_CASE("eval examples on P3")
{
    const auto s = p3_with_p();
    CHECK_FALSE(eval(s, 1, parse("~p")));
    CHECK(eval(s, 2, parse("~p")));
    CHECK(eval(s, 0, parse("~~p")));
    CHECK(eval(s, 1, parse("[](p & ~p)")));  // rm is empty
    CHECK_FALSE(eval(s, 0, parse("q")));      // absent atom
    CHECK_THROWS_AS((void)eval(s, 3, parse("p")), MalformedInput);
}

TEST_CASE("sat_set examples on C4")
{
    const auto s = c4_pqr();
    CHECK(sat_set(s, parse("p & (q | r)")) == WorldSet{0});
    CHECK(sat_set(s, parse("(p & q) | (p & r)")) == WorldSet{});
    CHECK(sat_set(s, parse("~q")) == WorldSet{3});
    CHECK(sat_set(s, parse("~r")) == WorldSet{0});
    CHECK(sat_set(s, parse("q | r")) == s.worlds());
    CHECK(sat_set(s, parse("p")) == s.valuation("p"));
}

TEST_CASE("holds_at and holds_in examples")
{
    const auto s = c4_pqr();
    const auto dist = parse_sequent(kDistributivity);
    CHECK_FALSE(holds_at(s, 0, dist));
    CHECK_FALSE(holds_in(s, dist));
    CHECK(find_failing_world(s, dist) == 0);
    CHECK(holds_in(s, parse_sequent("p |- p")));

    QuantumModalStructure one{1};
    one.complete_rq();
    one.set_valuation("p", {0});
    CHECK_FALSE(holds_at(one, 0, parse_sequent("p |- q")));
    CHECK(find_failing_world(one, parse_sequent("p |- q")) == 0);
    CHECK_FALSE(holds_in(one, parse_sequent("|-")));
    CHECK(find_failing_world(one, parse_sequent("p |- p")) == std::nullopt);
}

TEST_CASE("literal reading differs from pointwise on MEM with a premise")
{
    // Pointwise MEM holds everywhere; the literal reading asks for one
    // disjunct to follow globally, which fails once rm splits the worlds.
    QuantumModalStructure s{2};
    s.complete_rq();
    s.set_rm(0, 0);
    s.set_valuation("p", {1});
    const auto mem = parse_sequent("|- []p, ~[]p");
    CHECK(holds_in(s, mem, Reading::Pointwise));
    CHECK_FALSE(holds_in(s, mem, Reading::Literal));
}

TEST_CASE("sat sets agree with the clause-by-clause oracle")
{
    std::mt19937_64 rng{17};
    const std::vector<std::string> atoms{"p", "q"};
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 6), atoms);
        const Formula f = oracle::random_formula(rng, atoms, 1 + rng() % 8);
        REQUIRE(oracle::to_set(sat_set(s, f)) == oracle::to_set(oracle::sat(s, f)));
    }
}

TEST_CASE("sat sets are closed and negation is the orthocomplement")
{
    std::mt19937_64 rng{23};
    const std::vector<std::string> atoms{"p", "q", "r"};
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 6), atoms);
        const Formula f = oracle::random_formula(rng, atoms, 1 + rng() % 7);
        const WorldSet x = sat_set(s, f);
        CHECK(ortho_closure(x, s) == x);
        CHECK(sat_set(s, Formula::negation(f)) == ortho_complement(x, s));
        CHECK(sat_set(s, Formula::negation(Formula::negation(f))) == x);
    }
}

TEST_CASE("boxed formulas are constant along R_Q")
{
    std::mt19937_64 rng{29};
    const std::vector<std::string> atoms{"p", "q"};
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 6), atoms);
        const Formula f = Formula::box(oracle::random_formula(rng, atoms, 1 + rng() % 5));
        for (int i = 0; i < s.world_count(); ++i)
            for (int j = 0; j < s.world_count(); ++j)
                if (s.rq(i, j))
                    REQUIRE(eval(s, i, f) == eval(s, j, f));
    }
}

TEST_CASE("adding formulas to either side never breaks a sequent")
{
    std::mt19937_64 rng{31};
    const std::vector<std::string> atoms{"p", "q"};
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 5), atoms);
        Sequent seq{{oracle::random_formula(rng, atoms, 1 + rng() % 4)},
                    {oracle::random_formula(rng, atoms, 1 + rng() % 4)}};
        Sequent wider = seq;
        wider.antecedent.insert(oracle::random_formula(rng, atoms, 1 + rng() % 4));
        wider.succedent.insert(oracle::random_formula(rng, atoms, 1 + rng() % 4));
        for (int i = 0; i < s.world_count(); ++i) {
            if (holds_at(s, i, seq))
                REQUIRE(holds_at(s, i, wider));
            REQUIRE(holds_at(s, i, seq) == oracle::holds_at(s, i, seq));
        }
    }
}

TEST_CASE("MEM holds pointwise in every small structure")
{
    for (int k = 1; k <= 3; ++k) {
        for (const auto& s : enumerate_structures(k, {"p", "q"})) {
            REQUIRE(holds_in(s, parse_sequent("|- []p, ~[]p")));
            REQUIRE(holds_in(s, parse_sequent("q |- [](p & q), ~[](p & q)")));
        }
    }
}

TEST_CASE("compiled formulas share subformulas")
{
    const std::vector<Formula> roots{parse("p & q"), parse("~(p & q)"), parse("q")};
    CompiledFormulas c{roots};
    CHECK(c.node_count() == 4);
    CHECK(c.atoms() == std::vector<std::string>{"p", "q"});
    auto s = c4_pqr();
    c.evaluate(s);
    CHECK(c.sat(parse("~(p & q)")) == s.worlds());
}
