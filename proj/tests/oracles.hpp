#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library beyond the Graph container.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/rational.hpp"
#include "rturan/semibounded.hpp"

namespace oracle {

using rturan::Graph;
using rturan::Rational;
using rturan::VertexMask;

inline bool adjacent(const Graph& g, int u, int v) {
    for (const auto& e : g.edges())
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
    return false;
}

inline int edges_in(const Graph& g, VertexMask nu) {
    int c = 0;
    for (const auto& e : g.edges())
        if (((nu >> e.u) & 1) && ((nu >> e.v) & 1)) ++c;
    return c;
}

inline int size_of(VertexMask m) {
    int c = 0;
    for (; m; m &= m - 1) ++c;
    return c;
}

/// Calls fn(map) for every injective map of F's vertices into G's vertices.
template <typename Fn>
void for_each_injection(int k, int n, Fn&& fn) {
    if (k > n) return;
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<int> chosen;
        for (int i = 0; i < n; ++i)
            if (pick[static_cast<std::size_t>(i)]) chosen.push_back(i);
        do {
            fn(chosen);
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::next_permutation(pick.begin(), pick.end()));
}

inline bool preserves_edges(const Graph& f, const Graph& g, const std::vector<int>& map) {
    for (const auto& e : f.edges())
        if (!adjacent(g, map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)])) return false;
    return true;
}

inline std::size_t embedding_count(const Graph& f, const Graph& g) {
    std::size_t c = 0;
    for_each_injection(f.vertex_count(), g.vertex_count(), [&](const std::vector<int>& m) { c += preserves_edges(f, g, m); });
    return c;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> perm(static_cast<std::size_t>(a.vertex_count()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (preserves_edges(a, b, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Every copy of F in G as a bitmask over G.edges() indices.
inline std::vector<std::uint32_t> copy_masks(const Graph& f, const Graph& g) {
    std::vector<std::uint32_t> out;
    auto index = [&](int u, int v) {
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            const auto& e = g.edges()[i];
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return static_cast<int>(i);
        }
        return -1;
    };
    for_each_injection(f.vertex_count(), g.vertex_count(), [&](const std::vector<int>& m) {
        std::uint32_t mask = 0;
        for (const auto& e : f.edges()) {
            int i = index(m[static_cast<std::size_t>(e.u)], m[static_cast<std::size_t>(e.v)]);
            if (i < 0) return;
            mask |= std::uint32_t{1} << i;
        }
        out.push_back(mask);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Largest F-free edge subset of G by trying all 2^e(G) subsets (e(G) <= 24).
inline int max_free(const Graph& g, const Graph& f) {
    const int m = g.edge_count();
    const auto copies = copy_masks(f, g);
    int best = 0;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
        const int c = size_of(s);
        if (c <= best) continue;
        bool ok = true;
        for (auto cm : copies)
            if ((s & cm) == cm) {
                ok = false;
                break;
            }
        if (ok) best = c;
    }
    return best;
}

inline Rational m2(const Graph& f) {
    Rational best(0);
    bool any = false;
    for (VertexMask nu = 0; nu < (VertexMask{1} << f.vertex_count()); ++nu) {
        const int v = size_of(nu);
        if (v < 3) continue;
        Rational x(edges_in(f, nu) - 1, v - 2);
        if (!any || x > best) best = x;
        any = true;
    }
    return best;
}

/// Max of (e'-1)/(v'-2) over proper subgraphs with v' >= 3, by vertex and edge subsets.
inline std::optional<Rational> m2_star(const Graph& f) {
    std::optional<Rational> best;
    const int n = f.vertex_count(), m = f.edge_count();
    for (VertexMask nu = 0; nu < (VertexMask{1} << n); ++nu) {
        const int v = size_of(nu);
        if (v < 3) continue;
        for (std::uint32_t es = 0; es < (std::uint32_t{1} << m); ++es) {
            bool inside = true;
            for (int i = 0; i < m && inside; ++i)
                if ((es >> i) & 1) {
                    const auto& e = f.edges()[static_cast<std::size_t>(i)];
                    inside = ((nu >> e.u) & 1) && ((nu >> e.v) & 1);
                }
            if (!inside) continue;
            if (v == n && size_of(es) == m) continue;
            Rational x(size_of(es) - 1, v - 2);
            if (!best || x > *best) best = x;
        }
    }
    return best;
}

/// f(nu) straight from its definition.
inline std::optional<int> f_value(const Graph& f, const rturan::SemiBoundedTriple& t, VertexMask nu) {
    if (edges_in(f, nu) == 0) return std::nullopt;
    int s_count = 0, deg_sum = 0, max_deg = -1;
    for (int v = 0; v < f.vertex_count(); ++v) {
        if (!((nu >> v) & 1)) continue;
        if ((t.S >> v) & 1) ++s_count;
        if ((t.T >> v) & 1) {
            int deg = 0, inner = 0;
            for (int w = 0; w < f.vertex_count(); ++w)
                if (adjacent(f, v, w)) {
                    ++deg;
                    if ((nu >> w) & 1) ++inner;
                }
            deg_sum += deg;
            if (inner >= 1) max_deg = std::max(max_deg, deg);
        }
    }
    return s_count + deg_sum - max_deg;
}

}  // namespace oracle
