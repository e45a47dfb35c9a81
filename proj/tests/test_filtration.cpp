#include "oracles.hpp"

#include "qml/enumerate.hpp"
#include "qml/errors.hpp"
#include "qml/filtration.hpp"
#include "qml/parser.hpp"
#include "qml/semantics.hpp"

#include <doctest.h>

using namespace qml;

namespace {

FormulaSet sigma_of(const char* text) { return admissible_closure({parse(text)}); }

QuantumModalStructure duplicate_pair()
{
    QuantumModalStructure s{2};
    s.complete_rq();
    s.set_valuation("p", {0, 1});
    return s;
}

} // namespace

TEST_CASE("truth_profiles examples")
{
    const FormulaSet sigma{parse("p"), parse("~p")};
    auto profiles = truth_profiles(duplicate_pair(), sigma);
    CHECK(profiles[0] == profiles[1]);
    CHECK(profiles[0] == TruthProfile{true, false});

    auto s = oracle::p3();
    s.set_valuation("p", {0});
    profiles = truth_profiles(s, sigma);
    CHECK(profiles[0] == TruthProfile{true, false});
    CHECK(profiles[1] == TruthProfile{false, false});
    CHECK(profiles[2] == TruthProfile{false, true});

    profiles = truth_profiles(s, {});
    CHECK(profiles[0] == profiles[2]);
}

TEST_CASE("collapse of two indistinguishable worlds")
{
    const Collapse c = collapse(duplicate_pair(), {parse("p"), parse("~p")});
    CHECK(c.class_of == std::vector<int>{0, 0});
    CHECK(c.result.world_count() == 1);
    CHECK(c.result.rq(0, 0));
    CHECK(c.result.valuation("p") == WorldSet{0});
    // No boxes in sigma, so R_M* is total.
    CHECK(c.result.rm(0, 0));
    CHECK(verify_collapse(c).ok());
}

TEST_CASE("collapse with an empty source R_M")
{
    auto s = oracle::p3();
    s.set_valuation("p", {0});
    const Collapse c = collapse(s, sigma_of("[]p"));
    // Every world satisfies []p vacuously, so [i] sees [l] iff l |= p.
    for (int i = 0; i < c.result.world_count(); ++i)
        CHECK(c.result.rm_successors(i) == WorldSet{c.class_of[0]});
    CHECK(verify_collapse(c).ok());
}

TEST_CASE("collapse requires an admissible sigma")
{
    CHECK_THROWS_AS((void)collapse(duplicate_pair(), {parse("~p")}), NotAdmissible);
    CHECK_THROWS_AS((void)collapse(duplicate_pair(), {parse("p")}), NotAdmissible);
}

TEST_CASE("collapse size bound for a three-formula sigma")
{
    std::mt19937_64 rng{41};
    const FormulaSet sigma = sigma_of("~~p");  // {p, ~p, ~~p}
    REQUIRE(sigma.size() == 3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 9), {"p"});
        CHECK(collapse(s, sigma).result.world_count() <= 8);
    }
}

TEST_CASE("verify_collapse flags a corrupted result")
{
    auto s = oracle::p3();
    s.set_valuation("p", {0});
    Collapse c = collapse(s, sigma_of("p"));
    REQUIRE(verify_collapse(c).ok());
    REQUIRE(c.result.world_count() == 3);
    c.result.set_rq(0, 2);  // breaks symmetry
    const auto report = verify_collapse(c);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.problems.empty());

    Collapse d = collapse(s, sigma_of("p"));
    d.result.set_rq(0, 2);
    d.result.set_rq(2, 0);  // valid again, but changes the truth of ~p
    CHECK_FALSE(verify_collapse(d).ok());
}

TEST_CASE("collapse lemmas on every small structure")
{
    const char* formulas[] = {"p", "[]p", "~[]~p", "[](p & ~q)", "~(p & []q)", "[][]p & ~p"};
    for (int k = 1; k <= 3; ++k) {
        for (const auto& s : enumerate_structures(k, {"p", "q"})) {
            for (const char* f : formulas) {
                const Collapse c = collapse(s, sigma_of(f));
                const auto report = verify_collapse(c);
                REQUIRE_MESSAGE(report.ok(), f);
            }
        }
    }
}

TEST_CASE("collapse keeps the counterexample world")
{
    std::mt19937_64 rng{43};
    const std::vector<std::string> atoms{"p", "q"};
    int witnessed = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 6), atoms);
        const Formula f = oracle::random_formula(rng, atoms, 1 + rng() % 6);
        const Sequent goal{{}, {f}};
        const auto failing = find_failing_world(s, goal);
        if (!failing)
            continue;
        ++witnessed;
        const Collapse c = collapse(s, admissible_closure({f}));
        CHECK(!holds_at(c.result, c.class_of[static_cast<std::size_t>(*failing)], goal));
        CHECK(find_failing_world(c.result, goal) == c.class_of[static_cast<std::size_t>(*failing)]);
    }
    CHECK(witnessed > 50);
}

TEST_CASE("collapsing a collapse changes nothing up to isomorphism")
{
    std::mt19937_64 rng{47};
    const std::vector<std::string> atoms{"p", "q"};
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = oracle::random_structure(rng, 1 + static_cast<int>(rng() % 6), atoms);
        const FormulaSet sigma = admissible_closure({oracle::random_formula(rng, atoms, 1 + rng() % 6)});
        const Collapse once = collapse(s, sigma);
        const Collapse twice = collapse(once.result, sigma);
        CHECK(twice.result.world_count() == once.result.world_count());
        CHECK(isomorphic(twice.result, once.result));
    }
}
