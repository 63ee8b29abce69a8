#include <random>

#include "doctest.h"
#include "loopcond/error.hpp"
#include "loopcond/graph.hpp"
#include "loopcond/identity.hpp"
#include "oracles.hpp"

using namespace loopcond;

TEST_CASE("DiGraph normalises its edge set")
{
    DiGraph g(3, {{2, 1}, {0, 1}, {2, 1}});
    CHECK(g.edges() == std::vector<DiGraph::Edge>{{0, 1}, {2, 1}});
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.in_neighbours(1) == std::vector<int>{0, 2});
    CHECK_THROWS_AS(DiGraph(2, {{0, 2}}), InvalidArgument);
    CHECK_THROWS_AS(DiGraph(2, {}, {"a"}), InvalidArgument);
}

TEST_CASE("has_loop")
{
    CHECK_FALSE(has_loop(clique(3)));
    CHECK(has_loop(DiGraph(1, {{0, 0}})));
    CHECK(has_loop(condition_graph(parse_condition("t(x,y,z)=t(x,z,y)"))));
}

TEST_CASE("symmetric_part")
{
    CHECK(symmetric_part(clique(3)) == clique(3));
    CHECK(symmetric_part(directed_cycle(3)).edge_count() == 0);
    CHECK(symmetric_part(DiGraph(3, {{0, 1}, {1, 0}, {1, 2}})) == DiGraph(3, {{0, 1}, {1, 0}}));
}

TEST_CASE("bipartiteness and odd girth")
{
    CHECK(is_bipartite(cycle(6)));
    CHECK_FALSE(odd_girth(cycle(6)));
    CHECK_FALSE(is_bipartite(cycle(5)));
    CHECK(odd_girth(cycle(5)) == 5);
    CHECK_FALSE(is_bipartite(clique(4)));
    CHECK(odd_girth(clique(4)) == oracle::odd_girth_brute(clique(4)));
    CHECK(odd_girth(clique(4)) == 3);
    CHECK(odd_girth(petersen()) == 5);
    CHECK(odd_girth(cycle(1)) == 1);
    CHECK_FALSE(is_bipartite(cycle(1)));
    CHECK(is_bipartite(cycle(2)));
    CHECK(is_bipartite(DiGraph(4)));
    CHECK_THROWS_AS((void)is_bipartite(directed_cycle(3)), NotSymmetric);
    CHECK_THROWS_AS((void)odd_girth(directed_cycle(4)), NotSymmetric);
}

TEST_CASE("odd girth matches cycle enumeration on random graphs")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        auto g = oracle::random_graph(rng, 7, 0.3, true, false);
        CHECK(odd_girth(g) == oracle::odd_girth_brute(g));
        CHECK(is_bipartite(g) == !oracle::odd_girth_brute(g).has_value());
    }
}

TEST_CASE("find_hom examples")
{
    auto c5_k3 = find_hom(cycle(5), clique(3));
    REQUIRE(c5_k3);
    CHECK(is_homomorphism(cycle(5), clique(3), c5_k3->map));
    CHECK(find_hom(cycle(7), cycle(5)).has_value());
    CHECK_FALSE(find_hom(clique(3), cycle(5)));
    CHECK_FALSE(oracle::first_hom(clique(3), cycle(5)));
    auto id = find_hom(petersen(), petersen());
    REQUIRE(id);
    CHECK(is_homomorphism(petersen(), petersen(), id->map));
}

TEST_CASE("deterministic witness is the lexicographically first homomorphism")
{
    auto h = find_hom(cycle(5), clique(3));
    REQUIRE(h);
    CHECK(h->map == std::vector<int>{0, 1, 0, 1, 2});
    CHECK(h->map == *oracle::first_hom(cycle(5), clique(3)));
}

TEST_CASE("find_hom agrees with exhaustive enumeration on small graphs")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> size(1, 5);
    for (int i = 0; i < 400; ++i) {
        auto g = oracle::random_graph(rng, size(rng), 0.35, false, true);
        auto h = oracle::random_graph(rng, size(rng), 0.45, false, true);
        auto expected = oracle::first_hom(g, h);
        auto got = find_hom(g, h);
        REQUIRE(got.has_value() == expected.has_value());
        if (got) {
            CHECK(got->map == *expected);
            CHECK(is_homomorphism(g, h, got->map));
        }
        auto fast = find_hom(g, h, {.order = SearchOrder::fast});
        REQUIRE(fast.has_value() == expected.has_value());
        if (fast)
            CHECK(is_homomorphism(g, h, fast->map));

        auto emb = find_embedding(g, h);
        auto emb_expected = oracle::first_hom(g, h, true);
        REQUIRE(emb.has_value() == emb_expected.has_value());
        if (emb)
            CHECK(emb->map == *emb_expected);
    }
}

TEST_CASE("find_embedding examples")
{
    CHECK(find_embedding(clique(3), clique(4)).has_value());
    CHECK_FALSE(find_embedding(clique(4), clique(3)));
    auto c5 = find_embedding(cycle(5), petersen());
    REQUIRE(c5);
    CHECK(std::set<int>(c5->map.begin(), c5->map.end()).size() == 5);
    CHECK(is_homomorphism(cycle(5), petersen(), c5->map));
    // Hom exists, embedding does not.
    CHECK(find_hom(cycle(9), clique(3)).has_value());
    CHECK_FALSE(find_embedding(cycle(9), clique(3)));
}

TEST_CASE("budget exhaustion is reported, not a negative answer")
{
    CHECK_THROWS_AS((void)find_hom(clique(6), clique(5), {.budget = 100}), BudgetExceeded);
    CHECK_FALSE(find_hom(clique(6), clique(5)));
}

TEST_CASE("homomorphisms compose along the odd-cycle and clique chain")
{
    std::vector<DiGraph> family{cycle(9), cycle(7), cycle(5), clique(3), clique(4), clique(5)};
    for (const auto & a : family)
        for (const auto & b : family)
            for (const auto & c : family)
                if (find_hom(a, b) && find_hom(b, c))
                    CHECK(find_hom(a, c).has_value());
}

TEST_CASE("bipartite iff maps to an edge")
{
    std::mt19937 rng(9);
    for (int i = 0; i < 150; ++i) {
        auto g = oracle::random_graph(rng, 6, 0.35, true, false);
        CHECK(is_bipartite(g) == find_hom(g, cycle(2)).has_value());
        if (auto k = odd_girth(g))
            CHECK(find_hom(cycle(*k), g).has_value());
    }
}

TEST_CASE("smoothness")
{
    CHECK(is_smooth(directed_cycle(3)));
    CHECK_FALSE(is_smooth(DiGraph(2, {{0, 1}})));
    CHECK(is_smooth(condition_graph(parse_condition("s(a,r,e,a)=s(r,a,r,e)"))));
}

TEST_CASE("algebraic length")
{
    for (int k = 1; k <= 6; ++k)
        CHECK(algebraic_length(directed_cycle(k)) == k);

    auto g = condition_graph(parse_condition("s(a,r,e,a)=s(r,a,r,e)"));
    CHECK(algebraic_length(g) == 1);
    CHECK(oracle::directed_cycle_targets(g, 6).empty());

    CHECK(algebraic_length(cycle(2)) == 2);
    CHECK(find_hom(cycle(2), directed_cycle(2)).has_value());
    CHECK_FALSE(find_hom(cycle(2), directed_cycle(3)));

    CHECK(algebraic_length(DiGraph(3, {{0, 1}, {1, 2}})) == 0);
    CHECK_THROWS_AS((void)algebraic_length(DiGraph(3, {{0, 1}})), NotWeaklyConnected);
}

TEST_CASE("algebraic length contract against brute-force homs to directed cycles")
{
    std::vector<DiGraph> graphs{directed_cycle(4), cycle(3), cycle(2), clique(3), cycle(6),
        condition_graph(parse_condition("s(a,r,e,a)=s(r,a,r,e)")), DiGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
        DiGraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}}), DiGraph(3, {{0, 1}, {2, 1}})};
    std::mt19937 rng(21);
    while (graphs.size() < 40) {
        auto g = oracle::random_graph(rng, 5, 0.3, false, false);
        if (g.edge_count() > 0 && is_weakly_connected(g))
            graphs.push_back(g);
    }
    for (const auto & g : graphs) {
        int d = algebraic_length(g);
        for (int k = 2; k <= 8; ++k)
            CHECK(oracle::first_hom(g, directed_cycle(k)).has_value() == (d == 0 || d % k == 0));
    }
}

TEST_CASE("standard families")
{
    CHECK(clique(3) == cycle(3));
    CHECK(cycle(2) == condition_graph(parse_condition("t(x,y)=t(y,x)")));
    CHECK(directed_cycle(1) == DiGraph(1, {{0, 0}}));
    CHECK(cycle(1) == DiGraph(1, {{0, 0}}));
    CHECK(path(3).edge_count() == 4);
    CHECK(petersen().edge_count() == 30);
    CHECK_THROWS_AS((void)clique(0), InvalidArgument);
}

TEST_CASE("relational composition")
{
    auto c6 = cycle(6);
    auto two = compose(c6, c6);
    CHECK(two.has_edge(0, 2));
    CHECK(two.has_edge(0, 0));
    CHECK_FALSE(two.has_edge(0, 1));
}

TEST_CASE("DOT and JSON export")
{
    auto g = condition_graph(parse_condition("t(x,y)=t(y,x)"));
    CHECK(to_dot(g) == "graph G {\n  x -- y;\n}\n");
    CHECK(to_dot(DiGraph(2, {{0, 1}})) == "digraph G {\n  0 -> 1;\n}\n");
    CHECK(to_dot(DiGraph(3, {{0, 1}, {1, 0}})) == "graph G {\n  0 -- 1;\n  2;\n}\n");

    auto j = to_json(directed_cycle(3));
    CHECK(j.dump() == R"({"edges":[[0,1],[1,2],[2,0]],"n":3})");
    CHECK(graph_from_json(j) == directed_cycle(3));
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0]]})")), InvalidArgument);
    CHECK_THROWS_AS((void)graph_from_json(nlohmann::json::parse(R"({"edges":[]})")), InvalidArgument);
}
