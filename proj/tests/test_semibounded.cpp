#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rturan/corpus.hpp"
#include "rturan/density.hpp"
#include "rturan/lemma_suites.hpp"
#include "rturan/semibounded.hpp"

using namespace rturan;

namespace {

// C4 as 0-1-2-3-0 with S = {1,3}, T = {0,2}, v* = 0.
SemiBoundedTriple c4_triple() { return {0b1010, 0b0101, 0, 2}; }

Graph k33_plus() {
    // K_{3,3} on {0,1,2} x {3,4,5}, vertex 6 joined to 3 and 4
    return parse_graph("n=7; 0-3 0-4 0-5 1-3 1-4 1-5 2-3 2-4 2-5 6-3 6-4");
}

}  // namespace

TEST_CASE("triples") {
    CHECK(find_triples(cycle_graph(4), 2).size() == 4);
    CHECK(find_triples(complete_graph(3), 2).empty());
    Graph star = complete_bipartite(1, 3);
    auto ts = find_triples(star, 1);
    bool center = false;
    for (const auto& t : ts) {
        CHECK(triple_violation(star, t).empty());
        center |= t.v_star == 0 && t.S == 0b1110;
    }
    CHECK(center);
    CHECK_THROWS_AS(validate_triple(cycle_graph(4), SemiBoundedTriple{0b0011, 0b1100, 2, 2}), std::domain_error);
}

TEST_CASE("f examples") {
    Graph c4 = cycle_graph(4);
    auto t = c4_triple();
    CHECK(f_value(c4, t, 0b0011) == 1);
    CHECK(f_value(c4, t, 0b0111) == 3);  // {u1, v, v*} with v* = 0, u1 = 1, v = 2
    CHECK(f_value(c4, t, 0b1111) == 4);
    CHECK_THROWS_AS(f_value(c4, t, 0b0101), std::domain_error);
}

TEST_CASE("f matches its definition on the corpus") {
    for (const auto& g : connected_bipartite_graphs(6, 2)) {
        for (const auto& t : all_semibounded_triples(g)) {
            SemiBoundedProfile prof(g, t);
            for (VertexMask nu = 1; nu <= g.vertex_mask(); ++nu) CHECK(prof.f(nu) == oracle::f_value(g, t, nu));
        }
    }
}

TEST_CASE("nu statistics") {
    Graph c4 = cycle_graph(4);
    auto t = c4_triple();
    auto full = nu_stats(c4, t, 0b1111);
    CHECK(full.in_A);
    CHECK(*full.a_nu == Rational(1, 3));
    auto three = nu_stats(c4, t, 0b0111);
    CHECK(three.in_B);
    CHECK(*three.b_nu == Rational(1, 3));
    auto edge = nu_stats(c4, t, 0b0011);
    CHECK_FALSE(edge.in_A);
    CHECK_FALSE(edge.in_B);
    CHECK_FALSE(edge.a_nu.has_value());
}

TEST_CASE("a and b thresholds") {
    CHECK(a_of_F(complete_bipartite(2, 2), *select_triple(complete_bipartite(2, 2), 2)).value == Rational(1, 3));
    CHECK(a_of_F(complete_bipartite(3, 3), *select_triple(complete_bipartite(3, 3), 3)).value == Rational(1, 4));
    CHECK(b_of_F(cycle_graph(4), c4_triple()).value == Rational(1, 3));
    Graph f = k33_plus();
    SemiBoundedTriple t{0b1000111, 0b0111000, 3, 4};
    validate_triple(f, t);
    auto b = b_of_F(f, t);
    CHECK(b.value == Rational(0));
    Graph edge(2, {{0, 1}});
    CHECK_THROWS_AS(a_of_F(edge, SemiBoundedTriple{0b01, 0b10, 1, 1}), std::domain_error);
}

TEST_CASE("a and b agree with a direct minimum") {
    for (const auto& g : connected_bipartite_graphs(6, 4)) {
        if (!has_cycle(g)) continue;
        const Rational m = oracle::m2(g);
        for (const auto& t : all_semibounded_triples(g)) {
            std::optional<Rational> a, b;
            for (VertexMask nu = 1; nu <= g.vertex_mask(); ++nu) {
                auto fv = oracle::f_value(g, t, nu);
                if (!fv || g.min_degree_within(nu) < 1) continue;
                const int e = oracle::edges_in(g, nu), v = oracle::size_of(nu);
                if (*fv - 1 < t.r * (e - 1)) {
                    Rational x(t.r * (v - 2) + 1 - *fv, t.r * (e - 1) + 1 - *fv);
                    if (!a || x < *a) a = x;
                }
                if (*fv > e) {
                    Rational x = (Rational(v - 2) - Rational(e - 1) / m) / Rational(*fv - e);
                    if (!b || x < *b) b = x;
                }
            }
            REQUIRE(a);
            REQUIRE(b);
            CHECK(a_of_F(g, t).value == *a);
            CHECK(b_of_F(g, t).value == *b);
        }
    }
}

TEST_CASE("D values") {
    Graph c4 = cycle_graph(4);
    auto t = c4_triple();
    BalancingContext ctx{100, 0.05, 0.5, 1};
    CHECK(d_value(c4, t, ctx, 0b0101).infinite);
    auto full = d_value(c4, t, ctx, 0b1111);
    CHECK(full.value == doctest::Approx(std::pow(0.5, -4)));
    auto edge = d_value(c4, t, ctx, 0b0011);
    CHECK(edge.value == doctest::Approx(std::pow(0.5, -2) * std::pow(0.05, 3) * std::pow(100.0, 2)));
    CHECK(edge.q_exponent == 3);
    CHECK(edge.n_exponent == 2);
    CHECK_THROWS_AS((BalancingContext{10, 1.5, 1, 1}.validate()), std::domain_error);
}

TEST_CASE("tau") {
    Graph c4 = cycle_graph(4);
    auto t = c4_triple();
    const double n = 1e4;
    CHECK(tau(c4, t, BalancingContext{n, 2.0, 1, 1}).value == 1);
    CHECK(tau(c4, t, BalancingContext{n, 1.0, 1, 1}).value >= n * (1 - 1e-9));

    // direct maximum over qualifying subsets
    const double q = std::pow(n, -0.5);
    double best = 0;
    for (VertexMask nu = 1; nu < 16; ++nu) {
        const int e = oracle::edges_in(c4, nu);
        if (e < 2 || c4.min_degree_within(nu) < 1) continue;
        const int f = *oracle::f_value(c4, t, nu);
        best = std::max(best, std::pow(std::pow(q, 1 - f) * std::pow(n, 2 - oracle::size_of(nu)), 1.0 / (e - 1)));
    }
    const double want = q * n * n * best;
    CHECK(want == doctest::Approx(std::pow(n, 1.5)));
    CHECK(tau(c4, t, BalancingContext{n, q, 1, 1}).value == doctest::Approx(want));
    CHECK(tau_exponent(c4, t, Rational(-1, 2)) == Rational(3, 2));
    CHECK(tau_exponent(c4, t, Rational(-1, 3)) == Rational(4, 3));
}

TEST_CASE("(c,r)-bounded f") {
    Graph c4 = cycle_graph(4);
    auto t = c4_triple();
    CrBoundedTriple one{t.S, t.T, bit(t.v_star), 1, 2};
    for (VertexMask nu = 1; nu < 16; ++nu)
        if (c4.edges_within(nu) > 0) CHECK(cr_f_value(c4, one, nu) == f_value(c4, t, nu));
    Graph k22 = complete_bipartite(2, 2);
    CrBoundedTriple both{0b0011, 0b1100, 0b1100, 2, 2};
    CHECK(cr_f_value(k22, both, 0b1111) == 4);
    CHECK(cr_f_value(k22, both, 0b0101) == 1);
}
