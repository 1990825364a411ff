#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rturan/corpus.hpp"
#include "rturan/embedding.hpp"
#include "rturan/graph.hpp"

using namespace rturan;

TEST_CASE("parse_graph examples") {
    Graph c4 = parse_graph("n=4; 0-1 1-2 2-3 3-0");
    CHECK(c4.vertex_count() == 4);
    CHECK(c4.edge_count() == 4);
    CHECK_THROWS_AS(parse_graph("n=2; 0-0"), ParseError);
    Graph dup = parse_graph("n=3; 0-1 0-1 1-2");
    CHECK(dup.vertex_count() == 3);
    CHECK(dup.edge_count() == 2);
}

TEST_CASE("parse errors carry the line") {
    try {
        parse_graph("n=3\n0-1\n1-7\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_graph("0-1"), ParseError);
    CHECK_THROWS_AS(parse_multigraph("n=2; 0-1x0"), ParseError);
}

TEST_CASE("format and parse round trip") {
    Graph g = complete_bipartite(2, 3);
    CHECK(parse_graph(format_graph(g)) == g);
    Multigraph m(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}});
    CHECK(parse_multigraph(format_multigraph(m)) == m);
    CHECK(m.edge_count() == 6);
}

TEST_CASE("induced subgraph on C4") {
    Graph c4 = cycle_graph(4);
    auto all = induced_subgraph(c4, VertexMask{0b1111});
    CHECK(all.edge_count == 4);
    CHECK(all.graph == c4);
    auto path = induced_subgraph(c4, VertexMask{0b0111});
    CHECK(path.edge_count == 2);
    CHECK(oracle::isomorphic(path.graph, path_graph(3)));
    auto opposite = induced_subgraph(c4, VertexMask{0b0101});
    CHECK(opposite.edge_count == 0);
    CHECK(opposite.min_degree == 0);
    std::vector<int> bad{0, 9};
    CHECK_THROWS(induced_subgraph(c4, bad));
}

TEST_CASE("embedding counts match brute force") {
    Graph edge(2, {{0, 1}});
    CHECK(count_embeddings(edge, edge) == 2);
    CHECK(count_embeddings(cycle_graph(4), complete_bipartite(2, 2)) == 8);
    CHECK(enumerate_embeddings(cycle_graph(4), path_graph(6)).empty());
    CHECK(contains_copy(cycle_graph(4), complete_graph(4)));
    CHECK(contains_copy(cycle_graph(4), cycle_graph(4)));
    CHECK_FALSE(contains_copy(complete_bipartite(2, 2), cycle_graph(5)));

    std::mt19937_64 rng(7);
    const std::vector<Graph> patterns{cycle_graph(4), path_graph(3), complete_bipartite(1, 3), complete_graph(3),
                                      complete_bipartite(2, 3)};
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 5 + trial % 3;
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) es.push_back({i, j});
        Graph host(n, es);
        for (const Graph& f : patterns) {
            auto list = enumerate_embeddings(f, host, {std::nullopt, trial});
            CHECK(list.size() == oracle::embedding_count(f, host));
            std::set<Embedding> distinct(list.begin(), list.end());
            CHECK(distinct.size() == list.size());
            for (const auto& e : list) CHECK(is_embedding(f, host, e));
        }
    }
}

TEST_CASE("embedding order depends only on the seed") {
    Graph host = complete_bipartite(3, 3);
    auto a = enumerate_embeddings(cycle_graph(4), host, {std::nullopt, 5});
    auto b = enumerate_embeddings(cycle_graph(4), host, {std::nullopt, 5});
    CHECK(a == b);
    auto capped = enumerate_embeddings(cycle_graph(4), host, {std::size_t{3}, 5});
    CHECK(capped.size() == 3);
}

TEST_CASE("bipartitions") {
    auto c4 = bipartitions(cycle_graph(4));
    REQUIRE(c4.size() == 1);
    CHECK(c4[0].S == 0b0101);
    CHECK(c4[0].T == 0b1010);
    CHECK(bipartitions(complete_graph(3)).empty());
    Graph two_edges(4, {{0, 1}, {2, 3}});
    CHECK(bipartitions(two_edges).size() == 2);
    CHECK(all_two_colorings(two_edges).size() == 4);
}

TEST_CASE("cycle and odd cycle detection") {
    CHECK(has_cycle(cycle_graph(4)));
    CHECK_FALSE(has_cycle(path_graph(5)));
    CHECK(has_odd_cycle(cycle_graph(5)));
    CHECK_FALSE(has_odd_cycle(cycle_graph(6)));
    CHECK(is_connected(path_graph(4)));
    CHECK_FALSE(is_connected(Graph(3, {{0, 1}})));
}

TEST_CASE("corpus counts and isomorphism") {
    // connected bipartite graphs on n = 1..7 vertices
    const int expected[] = {1, 1, 1, 3, 5, 17, 44};
    auto all = connected_bipartite_graphs(7);
    for (int n = 1; n <= 7; ++n) {
        int c = 0;
        for (const auto& g : all) c += g.vertex_count() == n;
        CHECK(c == expected[n - 1]);
    }
    std::vector<Graph> six;
    for (const auto& g : all)
        if (g.vertex_count() == 6) six.push_back(g);
    for (std::size_t i = 0; i < six.size(); ++i) {
        CHECK(is_connected(six[i]));
        CHECK_FALSE(has_odd_cycle(six[i]));
        for (std::size_t j = i + 1; j < six.size(); ++j) CHECK_FALSE(oracle::isomorphic(six[i], six[j]));
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + trial % 3;
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) es.push_back({i, j});
        Graph a(n, es);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> pe;
        for (auto e : es) pe.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]});
        CHECK(isomorphic(a, Graph(n, pe)));
        Graph b = Graph(n, std::vector<Edge>(es.begin(), es.end() - (es.empty() ? 0 : 1)));
        CHECK(isomorphic(a, b) == oracle::isomorphic(a, b));
    }
}

TEST_CASE("small multigraphs are pairwise non-isomorphic") {
    auto same = [](const Multigraph& a, const Multigraph& b) {
        if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
        std::vector<int> perm(static_cast<std::size_t>(a.vertex_count()));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (int u = 0; u < a.vertex_count() && ok; ++u)
                for (int v = u + 1; v < a.vertex_count() && ok; ++v)
                    ok = a.multiplicity(u, v) ==
                         b.multiplicity(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
            if (ok) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };
    auto ms = small_multigraphs(4, 4);
    CHECK_FALSE(ms.empty());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        CHECK(ms[i].edge_count() <= 4);
        for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK_FALSE(same(ms[i], ms[j]));
    }
    // two vertices: multiplicity 1..4
    int two = 0;
    for (const auto& m : ms) two += m.vertex_count() == 2;
    CHECK(two == 4);
}
