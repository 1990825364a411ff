#include "rturan/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rturan {

namespace {

constexpr int kCanonicalLimit = 11;

// Upper-triangle bits of g under relabelling perm (old -> new position).
std::uint64_t code_of(const Graph& g, const std::vector<int>& pos) {
    const int n = g.vertex_count();
    std::uint64_t code = 0;
    for (const Edge& e : g.edges()) {
        int a = pos[static_cast<std::size_t>(e.u)], b = pos[static_cast<std::size_t>(e.v)];
        if (a > b) std::swap(a, b);
        // pair index in row-major upper triangle
        int idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        code |= std::uint64_t{1} << (63 - idx);
    }
    return code;
}

// Calls fn(pos) for every relabelling that keeps degree classes in order.
template <typename Fn>
void for_each_degree_relabelling(const Graph& g, Fn&& fn) {
    const int n = g.vertex_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<std::pair<int, int>> blocks;  // [begin, end) in order with equal degree
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && g.degree(order[static_cast<std::size_t>(j)]) == g.degree(order[static_cast<std::size_t>(i)])) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }
    std::vector<int> pos(static_cast<std::size_t>(n));
    // Odometer over per-block permutations.
    std::vector<std::vector<int>> perms;
    for (auto [b, e] : blocks) perms.emplace_back(order.begin() + b, order.begin() + e);
    for (auto& p : perms) std::sort(p.begin(), p.end());
    while (true) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            for (int i = blocks[k].first; i < blocks[k].second; ++i) {
                pos[static_cast<std::size_t>(perms[k][static_cast<std::size_t>(i - blocks[k].first)])] = i;
            }
        }
        fn(pos);
        std::size_t k = 0;
        while (k < perms.size() && !std::next_permutation(perms[k].begin(), perms[k].end())) ++k;
        if (k == perms.size()) return;
    }
}

std::pair<std::uint64_t, std::vector<int>> canonical_code(const Graph& g) {
    if (g.vertex_count() > kCanonicalLimit) throw std::domain_error("canonical form supports at most 11 vertices");
    std::uint64_t best = 0;
    std::vector<int> best_pos;
    bool first = true;
    for_each_degree_relabelling(g, [&](const std::vector<int>& pos) {
        std::uint64_t c = code_of(g, pos);
        if (first || c > best) {  // larger code = edges earlier = lexicographically smaller string
            best = c;
            best_pos = pos;
            first = false;
        }
    });
    return {best, best_pos};
}

Graph relabel(const Graph& g, const std::vector<int>& pos) {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = pos[static_cast<std::size_t>(e.u)], b = pos[static_cast<std::size_t>(e.v)];
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Graph(g.vertex_count(), edges);
}

}  // namespace

Graph canonical_graph(const Graph& g) { return relabel(g, canonical_code(g).second); }

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_code(a).first == canonical_code(b).first;
}

std::vector<Graph> connected_bipartite_graphs(int max_vertices, int min_vertices) {
    if (max_vertices > kCanonicalLimit) throw std::domain_error("corpus supports at most 11 vertices");
    std::vector<Graph> out;
    if (max_vertices < 1) return out;
    // Every connected graph has a vertex whose removal keeps it connected,
    // so level v is reachable from level v-1 by adding one vertex.
    std::vector<Graph> level{Graph(1)};
    for (int v = 1; v <= max_vertices; ++v) {
        if (v >= min_vertices) {
            std::vector<Graph> sorted = level;
            std::sort(sorted.begin(), sorted.end(), [](const Graph& a, const Graph& b) {
                if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
                return canonical_code(a).first > canonical_code(b).first;
            });
            out.insert(out.end(), sorted.begin(), sorted.end());
        }
        if (v == max_vertices) break;
        std::map<std::uint64_t, Graph> next;
        for (const Graph& g : level) {
            for (VertexMask nbrs = 1; nbrs < bit(v); ++nbrs) {
                std::vector<Edge> edges = g.edges();
                for (int u : mask_to_vertices(nbrs)) edges.push_back({u, v});
                Graph h(v + 1, edges);
                if (has_odd_cycle(h)) continue;
                auto [code, pos] = canonical_code(h);
                if (!next.count(code)) next.emplace(code, relabel(h, pos));
            }
        }
        level.clear();
        for (auto& [code, g] : next) level.push_back(std::move(g));
    }
    return out;
}

std::vector<Multigraph> small_multigraphs(int max_vertices, int max_total) {
    std::vector<Multigraph> out;
    for (int n = 2; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        std::set<std::vector<int>> seen;  // canonical multiplicity vectors
        std::vector<int> mult(pairs.size(), 0);
        std::vector<int> perm(static_cast<std::size_t>(n));
        // Odometer over multiplicity vectors with total in [1, max_total].
        while (true) {
            std::size_t k = 0;
            while (k < mult.size()) {
                ++mult[k];
                if (std::accumulate(mult.begin(), mult.end(), 0) <= max_total) break;
                mult[k] = 0;
                ++k;
            }
            if (k == mult.size()) break;
            std::vector<int> best;
            std::iota(perm.begin(), perm.end(), 0);
            do {
                std::vector<int> image(pairs.size());
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    int a = perm[static_cast<std::size_t>(pairs[i].first)], b = perm[static_cast<std::size_t>(pairs[i].second)];
                    if (a > b) std::swap(a, b);
                    auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(a, b));
                    image[static_cast<std::size_t>(it - pairs.begin())] = mult[i];
                }
                if (best.empty() || image > best) best = image;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!seen.insert(best).second) continue;
            std::vector<MultiEdge> edges;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (best[i] > 0) edges.push_back({pairs[i].first, pairs[i].second, best[i]});
            }
            out.emplace_back(n, edges);
        }
    }
    return out;
}

}  // namespace rturan
