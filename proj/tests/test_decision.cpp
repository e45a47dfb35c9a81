#include "oracles.hpp"

#include "qml/decision.hpp"
#include "qml/parser.hpp"

#include <doctest.h>

using namespace qml;

namespace {

Sequent seq(const char* text) { return parse_sequent(text); }

Budgets tiny()
{
    Budgets b;
    b.max_stage = 0;
    b.max_worlds = 1;
    b.step_limit = 1000;
    return b;
}

} // namespace

TEST_CASE("refute examples")
{
    const auto pq = refute(seq("p |- q"), 4);
    REQUIRE(pq);
    CHECK(pq->structure.world_count() == 1);
    CHECK(pq->world == 0);
    CHECK(pq->structure.valuation("p") == WorldSet{0});
    CHECK(pq->structure.valuation("q") == WorldSet{});
    CHECK(pq->structure.rm_rows()[0].empty());
    CHECK_FALSE(oracle::holds_at(pq->structure, pq->world, seq("p |- q")));

    CHECK_FALSE(refute(seq("|- ~(p & ~p)"), 4).has_value());
}

TEST_CASE("distributivity fails first at four worlds")
{
    const Sequent dist = seq("p & (q | r) |- (p & q) | (p & r)");
    CHECK_FALSE(refute(dist, 3).has_value());
    const auto cm = refute(dist, 4);
    REQUIRE(cm);
    CHECK(cm->structure.world_count() == 4);
    CHECK(oracle::valid(cm->structure));
    CHECK_FALSE(oracle::holds_at(cm->structure, cm->world, dist));

    auto c4 = oracle::c4();
    c4.set_valuation("p", {0});
    c4.set_valuation("q", {1});
    c4.set_valuation("r", {2});
    CHECK(oracle::valid(c4));
    CHECK_FALSE(oracle::holds_at(c4, 0, dist));
}

TEST_CASE("dedup and the R_M shortcut do not change refutability")
{
    const char* sequents[] = {"p |- q", "p |- []p", "[]p |- p", "~~p |- p & p", "|- p, ~p", "[]~p |- ~[]p"};
    for (const char* text : sequents) {
        const Sequent s = seq(text);
        for (int k = 1; k <= 3; ++k) {
            const auto plain = refute(s, k, false);
            const auto dedup = refute(s, k, true);
            CHECK(plain.has_value() == dedup.has_value());
            if (plain)
                CHECK(plain->structure.world_count() == dedup->structure.world_count());
        }
    }
}

TEST_CASE("prove examples")
{
    const auto lem = prove(seq("|- ~(p & ~p)"), Budgets{});
    REQUIRE(lem);
    CHECK(lem->stage == 0);
    CHECK(check_derivation(lem->derivation));

    const auto k = prove(seq("[]p, []q |- [](p & q)"), Budgets{});
    REQUIRE(k);
    CHECK(check_derivation(k->derivation));
    const auto rules = k->derivation.rules();
    const std::set<Rule> used{rules.begin(), rules.end()};
    CHECK(used == std::set<Rule>{Rule::K, Rule::AndR, Rule::Wkn, Rule::Ax});

    const auto nn = prove(seq("p |- ~~p"), Budgets{});
    REQUIRE(nn);
    CHECK(nn->derivation.node_count() == 2);
    CHECK(nn->derivation.rule == Rule::NegNegR);
    CHECK(nn->derivation.premises[0].rule == Rule::Ax);

    CHECK_FALSE(prove(seq("p |- q"), Budgets{}).has_value());
}

TEST_CASE("decide examples")
{
    for (bool threaded : {true, false}) {
        DecideOptions o;
        o.threaded = threaded;
        CHECK(decide(seq("|- ~(p & ~p)"), {}, o).is_theorem());
        CHECK(decide(seq("|- []p, ~[]p"), {}, o).is_theorem());
        const Verdict dist = decide(seq("p & (q | r) |- (p & q) | (p & r)"), {}, o);
        REQUIRE(dist.is_non_theorem());
        CHECK(std::get<NonTheorem>(dist.outcome).countermodels.at(0).structure.world_count() == 4);
        CHECK(decide(seq("p |- []p"), tiny(), o).is_unknown());
    }
}

TEST_CASE("unknown reports the budget used")
{
    const Verdict v = decide(seq("p |- []p"), tiny());
    REQUIRE(v.is_unknown());
    const auto& u = std::get<Unknown>(v.outcome);
    CHECK(u.stages_tried == 1);
    CHECK(u.max_worlds_tried == 1);
    CHECK_FALSE(u.timed_out);
    CHECK_FALSE(v.fmp_bound.has_value());
}

TEST_CASE("fmp_bound examples")
{
    CHECK(fmp_bound(seq("|- ~(p & ~p)")) == 16);
    CHECK(fmp_bound(seq("|- p")) == 4);
    CHECK(fmp_bound(seq("p |- q")) == 16);
    CHECK(decide(seq("|- ~(p & ~p)")).fmp_bound == 16);
    CHECK_FALSE(decide(seq("p |- ~~p")).fmp_bound.has_value());
}

TEST_CASE("literal reading refutes MEM with two countermodels")
{
    DecideOptions o;
    o.literal_delta = true;
    const Verdict v = decide(seq("|- []p, ~[]p"), {}, o);
    REQUIRE(v.is_non_theorem());
    const auto& cms = std::get<NonTheorem>(v.outcome).countermodels;
    REQUIRE(cms.size() == 2);
    for (const auto& cm : cms) {
        CHECK(cm.refuted.succedent.size() == 1);
        CHECK(verify_countermodel(cm));
    }
    CHECK(decide(seq("|- ~(p & ~p)"), {}, o).is_theorem());
    CHECK(refute_literal(seq("p |- p, q"), 3) == std::nullopt);
}

TEST_CASE("verdict kinds are stable under larger budgets")
{
    const char* sequents[] = {"|- ~(p & ~p)", "p |- q", "[]p |- [][]p", "~~p |- p", "|- p"};
    for (const char* text : sequents) {
        Budgets small;
        small.max_worlds = 2;
        small.max_stage = 0;
        Budgets large;
        large.max_worlds = 3;
        large.max_stage = 1;
        const Verdict a = decide(seq(text), small);
        const Verdict b = decide(seq(text), large);
        if (!a.is_unknown())
            CHECK(a.outcome.index() == b.outcome.index());
        if (a.is_theorem())
            CHECK(std::get<Theorem>(a.outcome).derivation == std::get<Theorem>(b.outcome).derivation);
    }
}

TEST_CASE("threaded and round-robin agree")
{
    std::mt19937_64 rng{53};
    const std::vector<std::string> atoms{"p", "q"};
    for (int trial = 0; trial < 30; ++trial) {
        const Sequent s{{oracle::random_formula(rng, atoms, 1 + rng() % 3)},
                        {oracle::random_formula(rng, atoms, 1 + rng() % 4)}};
        Budgets b;
        b.max_worlds = 3;
        b.max_stage = 1;
        b.step_limit = 20000;
        DecideOptions threaded, serial;
        serial.threaded = false;
        const Verdict x = decide(s, b, threaded);
        const Verdict y = decide(s, b, serial);
        CHECK(x.outcome.index() == y.outcome.index());
    }
}

TEST_CASE("wall clock limit yields unknown")
{
    Budgets b;
    b.max_worlds = 11;
    b.max_stage = 6;
    b.step_limit = std::numeric_limits<std::size_t>::max();
    b.wall_clock = std::chrono::milliseconds{50};
    // Valid, so model search can only run out of time.
    const Verdict v = decide(seq("[]p, []q, []r |- [](p & (q & r)), ~[]p"), b);
    if (v.is_unknown())
        CHECK(std::get<Unknown>(v.outcome).timed_out);
    else
        CHECK(v.is_theorem());
}
