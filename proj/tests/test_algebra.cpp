#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "loopcond/algebra.hpp"
#include "loopcond/error.hpp"
#include "oracles.hpp"

using namespace loopcond;

namespace {

const char * const siggers = "s(x,y,y,z,z,x)=s(y,x,z,y,x,z)";
const char * const commutative = "t(x,y)=t(y,x)";

/// Evaluates a term tree directly, without memoisation.
auto eval(const FiniteAlgebra & a, const Term & t, const std::vector<int> & values) -> int
{
    if (t.is_variable())
        return values.at(t.variable_index());
    std::vector<int> args;
    for (const auto & s : t.args())
        args.push_back(eval(a, s, values));
    return a.apply(*a.find(t.op()), args);
}

/// Coefficients of an affine term over Z_m, read off at the unit vectors.
auto coefficients(int m, const Term & t, int arity) -> std::vector<int>
{
    auto a = affine_algebra(m);
    std::vector<int> c;
    for (int i = 0; i < arity; ++i) {
        std::vector<int> unit(arity, 0);
        unit[i] = 1;
        c.push_back(eval(a, t, unit));
    }
    return c;
}

/// Every condition of the given arity over at most `vars` variables, up to
/// renaming: both sides together form a restricted-growth string.
void for_each_condition(int arity, int vars, const std::function<void(const LoopCondition &)> & visit)
{
    std::vector<int> s(2 * arity, 0);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == 2 * arity) {
            std::vector<std::string> lhs, rhs;
            for (int i = 0; i < arity; ++i) {
                lhs.push_back("v" + std::to_string(s[i]));
                rhs.push_back("v" + std::to_string(s[arity + i]));
            }
            visit(LoopCondition("t", lhs, rhs));
            return;
        }
        for (int v = 0; v <= std::min(used, vars - 1); ++v) {
            s[pos] = v;
            rec(pos + 1, std::max(used, v + 1));
        }
    };
    rec(0, 0);
}

} // namespace

TEST_CASE("algebra construction and lookup")
{
    auto z3 = affine_algebra(3);
    CHECK(z3.size() == 3);
    const int args[] = {2, 2, 1};
    CHECK(z3.apply(*z3.find("m"), args) == 0);
    CHECK_FALSE(z3.find("q"));
    CHECK_THROWS_AS(FiniteAlgebra(2, {{"p", 2, {0, 1, 0}}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteAlgebra(2, {{"p", 1, {0, 2}}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteAlgebra(2, {{"p", 1, {0, 1}}, {"p", 1, {1, 0}}}), InvalidArgument);

    auto j = to_json(z3);
    auto back = algebra_from_json(j);
    CHECK(to_json(back) == j);
}

TEST_CASE("compatibility of relations")
{
    auto z2 = affine_algebra(2);
    CHECK(is_compatible(z2, Relation(2, 2, {{0, 1}})));
    CHECK(is_compatible(z2, Relation(2, 2, {{0, 1}, {1, 0}})));
    CHECK_FALSE(is_compatible(z2, Relation(2, 2, {{0, 0}, {0, 1}, {1, 0}})));
    CHECK(is_compatible(projection_algebra(), Relation(2, 2, {{0, 0}, {0, 1}, {1, 0}})));
    CHECK_THROWS_AS((void)is_compatible(z2, Relation(3, 2)), UniverseMismatch);
}

TEST_CASE("subpower examples")
{
    auto z2 = affine_algebra(2);
    auto s = generate_subpower(z2, 2, {{0, 1}, {1, 0}});
    CHECK(s.elements.size() == 2);
    CHECK_FALSE(s.exceeded);
    auto all = generate_subpower(z2, 2, {{0, 0}, {0, 1}, {1, 0}});
    CHECK(all.relation(2).size() == 4);
}

TEST_CASE("subpower closure matches the naive fixpoint")
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> m(2, 3), count(1, 3), k(1, 3);
    for (int i = 0; i < 120; ++i) {
        auto a = i % 3 == 0 ? projection_algebra(m(rng)) : affine_algebra(m(rng));
        int arity = k(rng);
        std::uniform_int_distribution<int> value(0, a.size() - 1);
        std::vector<Tuple> gens;
        for (int j = count(rng); j > 0; --j) {
            Tuple t(arity);
            for (auto & x : t)
                x = value(rng);
            gens.push_back(t);
        }
        auto s = generate_subpower(a, arity, gens);
        REQUIRE(s.relation(a.size()).tuples() == oracle::subpower_fixpoint(a, arity, gens));
        // Every element is produced by its recorded term.
        for (std::size_t e = 0; e < s.elements.size(); ++e) {
            auto t = s.term(a, e);
            for (int c = 0; c < arity; ++c) {
                std::vector<int> column;
                for (const auto & g : gens)
                    column.push_back(g[c]);
                CHECK(eval(a, t, column) == s.elements[e][c]);
            }
        }
    }
}

TEST_CASE("nullary operations contribute constants")
{
    FiniteAlgebra a(2, {{"c", 0, {1}}, {"p", 2, {0, 0, 1, 1}}});
    auto s = generate_subpower(a, 2, {{0, 1}});
    CHECK(s.relation(2).tuples() == oracle::subpower_fixpoint(a, 2, {{0, 1}}));
    CHECK(s.relation(2).contains({1, 1}));

    auto d = satisfies_condition(a, parse_condition(commutative));
    REQUIRE(std::holds_alternative<Satisfied>(d));
    CHECK(verify_witness(a, parse_condition(commutative), std::get<Satisfied>(d).witness));
}

TEST_CASE("projection algebra satisfies exactly the looped conditions")
{
    auto p = projection_algebra();
    CHECK(std::holds_alternative<NotSatisfied>(satisfies_condition(p, parse_condition(siggers))));
    CHECK(std::holds_alternative<NotSatisfied>(satisfies_condition(p, parse_condition(commutative))));
    auto c = parse_condition("t(x,y,z)=t(x,z,y)");
    auto d = satisfies_condition(p, c);
    REQUIRE(std::holds_alternative<Satisfied>(d));
    CHECK(std::get<Satisfied>(d).witness.to_string() == "x0");
    CHECK(verify_witness(p, c, std::get<Satisfied>(d).witness));
}

TEST_CASE("Siggers and commutativity over Z2")
{
    auto z2 = affine_algebra(2);
    auto s = parse_condition(siggers);
    auto d = satisfies_condition(z2, s);
    REQUIRE(std::holds_alternative<Satisfied>(d));
    auto t = std::get<Satisfied>(d).witness;
    CHECK(verify_witness(z2, s, t));
    CHECK(oracle::affine_solves(2, s, coefficients(2, t, 6)));
    CHECK(oracle::affine_solves(2, s, {1, 0, 1, 0, 1, 0}));

    CHECK(std::holds_alternative<NotSatisfied>(satisfies_condition(z2, parse_condition(commutative))));
    CHECK_FALSE(affine_satisfies(2, parse_condition(commutative)));
}

TEST_CASE("table decision agrees with the affine solver")
{
    for (int m : {2, 3}) {
        auto a = affine_algebra(m);
        for (int arity = 1; arity <= 3; ++arity)
            for_each_condition(arity, 3, [&](const LoopCondition & c) {
                auto d = satisfies_condition(a, c);
                auto affine = affine_satisfies(m, c);
                REQUIRE(!std::holds_alternative<ResourceExceeded>(d));
                REQUIRE(std::holds_alternative<Satisfied>(d) == affine.has_value());
                if (auto * s = std::get_if<Satisfied>(&d)) {
                    CHECK(verify_witness(a, c, s->witness));
                    CHECK(oracle::affine_solves(m, c, coefficients(m, s->witness, c.arity())));
                }
            });
    }
}

TEST_CASE("table decision agrees with the affine solver on random longer conditions")
{
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> arity(4, 6), var(0, 2);
    for (int i = 0; i < 150; ++i) {
        int n = arity(rng);
        std::vector<std::string> lhs, rhs;
        for (int j = 0; j < n; ++j) {
            lhs.push_back(std::string(1, static_cast<char>('a' + var(rng))));
            rhs.push_back(std::string(1, static_cast<char>('a' + var(rng))));
        }
        LoopCondition c("t", lhs, rhs);
        for (int m : {2, 3}) {
            auto d = satisfies_condition(affine_algebra(m), c);
            REQUIRE(std::holds_alternative<Satisfied>(d) == affine_satisfies(m, c).has_value());
        }
    }
}

TEST_CASE("affine solver against exhaustive search")
{
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> arity(1, 5), var(0, 3), modulus(2, 6);
    for (int i = 0; i < 300; ++i) {
        int n = arity(rng);
        std::vector<std::string> lhs, rhs;
        for (int j = 0; j < n; ++j) {
            lhs.push_back("w" + std::to_string(var(rng)));
            rhs.push_back("w" + std::to_string(var(rng)));
        }
        LoopCondition c("t", lhs, rhs);
        int m = modulus(rng);
        auto got = affine_satisfies(m, c);
        REQUIRE(got.has_value() == !oracle::affine_exhaustive(m, c).empty());
        if (got) {
            CHECK(oracle::affine_solves(m, c, *got));
            CHECK(verify_witness(affine_algebra(m), c, affine_term(m, *got)));
        }
    }
}

TEST_CASE("commutativity over Z3 and composite moduli")
{
    auto c = parse_condition(commutative);
    CHECK(affine_satisfies(3, c) == std::vector<int>{2, 2});
    auto t = Term::apply("m", {Term::variable(0), Term::variable(0), Term::variable(1)});
    CHECK(verify_witness(affine_algebra(3), c, t));
    CHECK(coefficients(3, t, 2) == std::vector<int>{2, 2});

    CHECK_FALSE(affine_satisfies(4, c));
    CHECK_FALSE(affine_satisfies(6, c));
    CHECK(affine_satisfies(5, c).has_value());
    CHECK(affine_satisfies(6, parse_condition(siggers)).has_value());
    CHECK(oracle::affine_solves(6, parse_condition(siggers), *affine_satisfies(6, parse_condition(siggers))));
}

TEST_CASE("verify_witness and counterexamples")
{
    auto z2 = affine_algebra(2);
    auto c = parse_condition(commutative);
    auto first = Term::variable(0);
    CHECK_FALSE(verify_witness(z2, c, first));
    auto cex = find_counterexample(z2, c, first);
    REQUIRE(cex);
    CHECK((*cex)[0] != (*cex)[1]);

    auto triangle = parse_condition(siggers);
    auto t = affine_term(2, {1, 0, 1, 0, 1, 0});
    CHECK(verify_witness(z2, triangle, t));
    CHECK_FALSE(find_counterexample(z2, triangle, t));

    CHECK_THROWS_AS((void)verify_witness(z2, c, Term::variable(2)), BadTerm);
    CHECK_THROWS_AS((void)verify_witness(z2, c, Term::apply("q", {first})), BadTerm);
    CHECK_THROWS_AS((void)verify_witness(z2, c, Term::apply("m", {first})), BadTerm);
}

TEST_CASE("terms print in prefix form")
{
    auto t = Term::apply("m", {Term::variable(0), Term::apply("m", {Term::variable(1), Term::variable(0), Term::variable(2)}),
        Term::variable(2)});
    CHECK(t.to_string() == "m(x0,m(x1,x0,x2),x2)");
}

TEST_CASE("resource limits")
{
    auto big = parse_condition("t(a,b,c,d,e,f,g,h,i,j,k,l,m)=t(b,c,d,e,f,g,h,i,j,k,l,m,a)");
    CHECK_THROWS_AS((void)satisfies_condition(projection_algebra(), big), ExponentCap);
    auto d = satisfies_condition(affine_algebra(3), parse_condition(siggers), {.max_entries = 4096, .max_elements = 2});
    REQUIRE(std::holds_alternative<ResourceExceeded>(d));
    CHECK(std::get<ResourceExceeded>(d).elements_generated >= 2);
    CHECK(decision_name(d) == "ResourceExceeded");
    CHECK(decision_name(Decision{NotSatisfied{}}) == "NotSatisfied");
}

TEST_CASE("separation audit")
{
    auto z3 = audit_separation(3);
    CHECK(z3.commutative == std::vector<int>{2, 2});
    CHECK(z3.triangle.has_value());
    CHECK_FALSE(z3.separates());
    CHECK(z3.terms_verified);
    CHECK(z3.routes_agree);

    auto z2 = audit_separation(2);
    CHECK_FALSE(z2.commutative);
    CHECK(z2.separates());
    CHECK(z2.routes_agree);
    CHECK(to_json(z2)["separates"] == true);
}
