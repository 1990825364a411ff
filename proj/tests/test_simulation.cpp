#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rturan/constructions.hpp"
#include "rturan/embedding.hpp"
#include "rturan/semibounded.hpp"
#include "rturan/simulation.hpp"

using namespace rturan;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
                if (coin(rng)) es.push_back({i, j});
    return Graph(n, es);
}

bool is_subgraph(const Graph& sub, const Graph& g) {
    for (const auto& e : sub.edges())
        if (!g.has_edge(e.u, e.v)) return false;
    return true;
}

}  // namespace

TEST_CASE("G(n,p) sampling") {
    CHECK(sample_gnp(20, 0, 1).edge_count() == 0);
    CHECK(sample_gnp(20, 1, 1).edge_count() == 190);
    const double mean = 4950 * 0.5, sigma = std::sqrt(4950 * 0.25);
    double total = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int m = sample_gnp(100, 0.5, s).edge_count();
        CHECK(std::abs(m - mean) <= 4 * sigma);
        total += m;
    }
    CHECK(std::abs(total / 100 - mean) <= 4 * sigma / 10);
    CHECK(sample_gnp(30, 0.3, 9) == sample_gnp(30, 0.3, 9));
}

TEST_CASE("coupled hosts are nested in p and n") {
    Graph small = sample_gnp(30, 0.2, 4), big = sample_gnp(30, 0.4, 4);
    CHECK(is_subgraph(small, big));
    Graph wider = sample_gnp(40, 0.2, 4);
    for (const auto& e : small.edges()) CHECK(wider.has_edge(e.u, e.v));
}

TEST_CASE("exact solver examples") {
    Graph c4 = cycle_graph(4);
    Graph tree = path_graph(7);
    CHECK(max_f_free_exact(tree, c4).edge_count == 6);
    CHECK(max_f_free_exact(complete_graph(4), c4).edge_count == 4);
    CHECK(max_f_free_exact(complete_bipartite(2, 2), c4).edge_count == 3);
    ExactOptions tiny;
    tiny.node_budget = 1;
    CHECK_THROWS_AS(max_f_free_exact(complete_graph(7), c4, tiny), ResourceError);
}

TEST_CASE("exact solver agrees with subset brute force") {
    std::mt19937_64 rng(21);
    const std::vector<Graph> patterns{cycle_graph(4), complete_graph(3), complete_bipartite(2, 3)};
    int done = 0;
    while (done < 40) {
        Graph g = random_graph(5 + static_cast<int>(rng() % 4), 0.55, rng);
        if (g.edge_count() > 16) continue;
        const Graph& f = patterns[static_cast<std::size_t>(done) % patterns.size()];
        auto r = max_f_free_exact(g, f);
        CHECK(r.edge_count == oracle::max_free(g, f));
        CHECK(r.witness.edge_count() == r.edge_count);
        CHECK(is_subgraph(r.witness, g));
        CHECK_FALSE(contains_copy(f, r.witness));
        ++done;
    }
}

TEST_CASE("heuristic never beats exact and usually matches") {
    Graph c4 = cycle_graph(4);
    HeuristicParams hp;
    CHECK(max_f_free_heuristic(path_graph(8), c4, hp, 1).edge_count == 7);
    CHECK(max_f_free_heuristic(complete_graph(4), c4, hp, 1).edge_count == 4);
    std::mt19937_64 rng(5);
    int match = 0;
    for (int i = 0; i < 50; ++i) {
        Graph g = random_graph(6 + i % 5, 0.3 + 0.01 * (i % 30), rng);
        const int exact = max_f_free_exact(g, c4).edge_count;
        auto h = max_f_free_heuristic(g, c4, hp, static_cast<std::uint64_t>(i));
        CHECK(h.edge_count <= exact);
        CHECK_FALSE(contains_copy(c4, h.witness));
        CHECK(is_subgraph(h.witness, g));
        match += h.edge_count == exact;
    }
    CHECK(match >= 45);
}

TEST_CASE("warm start is never lost") {
    Graph c4 = cycle_graph(4);
    Graph host = sample_gnp(25, 0.3, 2);
    auto greedy = greedy_f_free(host, c4, 3);
    CHECK_FALSE(contains_copy(c4, greedy.witness));
    auto warm = max_f_free_heuristic(host, c4, HeuristicParams{}, 4, &greedy.witness);
    CHECK(warm.edge_count >= greedy.edge_count);
}

TEST_CASE("slope fitting") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= 5; ++i) pts.push_back({std::log(i * 10.0), 1.5 * std::log(i * 10.0)});
    auto fit = fit_slope(pts);
    CHECK(fit.slope == doctest::Approx(1.5));
    CHECK(fit.max_residual == doctest::Approx(0).epsilon(1e-9));
    pts.clear();
    for (int i = 1; i <= 5; ++i) pts.push_back({std::log(i * 10.0), std::log(7.0)});
    CHECK(fit_slope(pts).slope == doctest::Approx(0).epsilon(1e-12));
    std::mt19937_64 rng(8);
    std::normal_distribution<double> noise(0, 0.01);
    pts.clear();
    for (int i = 0; i < 12; ++i) {
        const double x = 10 * std::pow(1.5, i);
        pts.push_back({std::log(x), std::log(4 * std::pow(x, 4.0 / 3) * (1 + noise(rng)))});
    }
    CHECK(std::abs(fit_slope(pts).slope - 4.0 / 3) < 0.05);
    CHECK_THROWS_AS(fit_slope({{1, 1}}), std::domain_error);
    CHECK_THROWS_AS(fit_slope({{1, 1}, {1, 2}}), std::domain_error);
}

TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("predictions") {
    auto k22 = predict(complete_bipartite(2, 2));
    REQUIRE(k22.available);
    CHECK(*k22.p_lower_threshold == Rational(-2, 3));
    CHECK(*k22.p_upper_threshold == Rational(-1, 3));
    CHECK(*k22.plateau_exponent == Rational(4, 3));
    CHECK(*k22.dense_p_exponent == Rational(1, 2));
    CHECK(*k22.dense_n_exponent == Rational(3, 2));

    // semi-bounded threshold -a(F) agrees with the complete bipartite one
    auto sb = predict(complete_bipartite(2, 2), std::nullopt, PredictTheorem::semibounded);
    REQUIRE(sb.available);
    CHECK(*sb.p_upper_threshold == *k22.p_upper_threshold);

    auto fm = build_F_M(Multigraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
    auto multi = predict(fm.result, fm.triple, PredictTheorem::multigraph);
    REQUIRE(multi.available);
    CHECK(*multi.p_lower_threshold == Rational(-5, 8));
    CHECK(*multi.p_upper_threshold == Rational(-1, 4));
    auto gen = predict(fm.result, fm.triple, PredictTheorem::general);
    REQUIRE(gen.available);
    CHECK(*gen.p_lower_threshold == *multi.p_lower_threshold);
    CHECK(*gen.p_upper_threshold == *multi.p_upper_threshold);

    CHECK_FALSE(predict(path_graph(5)).available);
    CHECK_FALSE(predict(complete_graph(3)).available);
    CHECK_FALSE(predict(cycle_graph(6), std::nullopt, PredictTheorem::kst).available);

    auto md = predict(complete_bipartite(2, 2), std::nullopt, PredictTheorem::maxdeg);
    REQUIRE(md.available);
    CHECK(*md.p_upper_threshold == Rational(-1, 3));

    auto small = predict(cycle_graph(4), std::nullopt, PredictTheorem::smallp);
    REQUIRE(small.available);
    CHECK(*small.p_lower_threshold == Rational(-2, 3));
    CHECK(*small.p_upper_threshold == Rational(1, 16) - Rational(2, 3));
    CHECK(kst_extremal_known(2, 2));
    CHECK_FALSE(kst_extremal_known(4, 6));
    CHECK(kst_extremal_known(4, 7));
}

TEST_CASE("sweep is deterministic and monotone in p") {
    SweepConfig c;
    c.pattern = cycle_graph(4);
    c.n_list = {20, 30};
    c.p_exponents = {-0.9, -0.6, -0.3};
    c.replicates = 3;
    c.seed = 9;
    c.threads = 1;
    auto a = sweep(c);
    c.threads = 4;
    auto b = sweep(c);
    REQUIRE(a.rows.size() == 18);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].ex_est == b.rows[i].ex_est);
        CHECK(a.rows[i].seed == b.rows[i].seed);
        CHECK(a.rows[i].ex_est >= 0);
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t j = 0; j < a.rows.size(); ++j)
            if (a.rows[i].n == a.rows[j].n && a.rows[i].replicate == a.rows[j].replicate &&
                a.rows[i].p_exp < a.rows[j].p_exp)
                CHECK(a.rows[i].ex_est <= a.rows[j].ex_est);
    CHECK(a.slope_in_n.size() == 3);
    CHECK(a.slope_in_p.size() == 2);
}
