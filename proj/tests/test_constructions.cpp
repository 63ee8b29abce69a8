#include <random>

#include "doctest.h"
#include "loopcond/constructions.hpp"
#include "loopcond/error.hpp"
#include "oracles.hpp"

using namespace loopcond;

TEST_CASE("walk relation examples")
{
    CHECK(walk_relation(cycle(5), 1) == cycle(5));
    auto two = walk_relation(directed_cycle(4), 2);
    CHECK(two == DiGraph(4, {{0, 2}, {1, 3}, {2, 0}, {3, 1}}));
    CHECK(walk_relation(DiGraph(3, {{0, 1}, {1, 2}}), 3).edge_count() == 0);
    CHECK(walk_relation(path(2), 3) == path(2));
    CHECK_THROWS_AS((void)walk_relation(cycle(3), 0), InvalidArgument);
}

TEST_CASE("walk relations compose additively")
{
    std::mt19937 rng(29);
    for (int i = 0; i < 40; ++i) {
        auto g = oracle::random_graph(rng, 5, 0.3, false, true);
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                CHECK(compose(walk_relation(g, a), walk_relation(g, b)) == walk_relation(g, a + b));
        CHECK(Relation::from_graph(walk_relation(g, 3)) == evaluate(walk_gadget(3), std::vector{g}));
    }
}

TEST_CASE("R on the triangle")
{
    auto r = clique_R(clique(3), 3);
    CHECK(r.arity() == 4);
    CHECK(r.contains({0, 0, 0, 1}));
    CHECK(r.contains({0, 1, 2, 2}));
    CHECK(r.tuples() == oracle::evaluate(clique_r_gadget(3), {clique(3)}));
    CHECK(clique_R(DiGraph(3), 3).size() == 0);
    CHECK_THROWS_AS((void)clique_R(directed_cycle(3), 3), NotSymmetric);
    CHECK_THROWS_AS((void)clique_R(clique(3), 2), InvalidArgument);
}

TEST_CASE("R gadget matches enumeration on random symmetric graphs")
{
    std::mt19937 rng(31);
    for (int i = 0; i < 30; ++i) {
        auto g = oracle::random_graph(rng, 4, 0.6, true, false);
        CHECK(clique_R(g, 3).tuples() == oracle::evaluate(clique_r_gadget(3), {g}));
        CHECK(Relation::from_graph(clique_F(g, 3)).tuples() == oracle::evaluate(clique_f_gadget(3), {g}));
    }
}

TEST_CASE("F on cliques")
{
    for (int n : {3, 4}) {
        auto f = clique_F(clique(n), n);
        CHECK(f == clique(n));
        CHECK(is_symmetric(f));
        CHECK_FALSE(has_loop(f));
    }
    CHECK(has_loop(clique_F(clique(4), 3)));
}

TEST_CASE("F is monotone in G")
{
    std::mt19937 rng(37);
    for (int i = 0; i < 20; ++i) {
        auto g = oracle::random_graph(rng, 5, 0.5, true, false);
        auto edges = g.edges();
        auto extra = oracle::random_graph(rng, 5, 0.3, true, false);
        edges.insert(edges.end(), extra.edges().begin(), extra.edges().end());
        auto lo = clique_F(g, 3);
        auto hi = clique_F(DiGraph(5, edges), 3);
        for (auto [a, b] : lo.edges())
            CHECK(hi.has_edge(a, b));
    }
}

TEST_CASE("Q on the triangle is a clique on the nine pairs")
{
    auto q = clique_Q(clique(3), 3);
    CHECK(q.size() == 9);
    for (int p = 0; p < 9; ++p)
        for (int s = 0; s < 9; ++s)
            CHECK(q.has_edge(p, s) == (p != s));
    CHECK(clique_Q(DiGraph(3), 3).edge_count() == 0);
}

TEST_CASE("cycle reduction checks")
{
    for (int k : {3, 5}) {
        auto report = verify_cycle_reduction(k);
        CHECK(report.checks.size() == 4);
        for (const auto & c : report.checks)
            CHECK_MESSAGE(c.pass, c.name);
        CHECK(report.all_pass());
    }
    CHECK_THROWS_AS((void)verify_cycle_reduction(2), InvalidArgument);
    CHECK_THROWS_AS((void)verify_cycle_reduction(1), InvalidArgument);
    CHECK_THROWS_AS((void)verify_cycle_reduction(17), SizeCap);
}

TEST_CASE("clique claims")
{
    for (int n : {3, 4}) {
        auto report = verify_clique_claims(n);
        for (const auto & c : report.checks)
            CHECK_MESSAGE(c.pass, c.name);
        CHECK(report.all_pass());
    }
    CHECK_THROWS_AS((void)verify_clique_claims(2), InvalidArgument);
    CHECK_THROWS_AS((void)verify_clique_claims(5), SizeCap);
}

TEST_CASE("report JSON omits empty witnesses")
{
    Report r;
    r.checks.push_back({"a", true, nlohmann::json()});
    r.checks.push_back({"b", false, nlohmann::json{{"x", 1}}});
    CHECK(to_json(r).dump() == R"({"all_pass":false,"checks":[{"name":"a","pass":true},{"name":"b","pass":false,"witness":{"x":1}}]})");
}
