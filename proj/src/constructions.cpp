#include "rturan/constructions.hpp"

#include <algorithm>
#include <stdexcept>

#include "rturan/density.hpp"

namespace rturan {

std::string to_string(VertexRole role) {
    switch (role) {
        case VertexRole::original: return "original";
        case VertexRole::subdivision: return "subdivision";
        case VertexRole::apex: return "apex";
        case VertexRole::r_set_copy: return "r_set_copy";
    }
    return "unknown";
}

ConstructionRecord build_F_M(const Multigraph& m) {
    if (m.edge_count() < 1) throw std::domain_error("build_F_M: multigraph needs at least one edge");
    const int v = m.vertex_count();
    const int apex = v;
    const int total = v + 1 + m.edge_count();
    if (total > kMaskVertexLimit) throw std::domain_error("build_F_M: result exceeds 64 vertices");
    ConstructionRecord rec;
    std::vector<Edge> edges;
    rec.labels.resize(static_cast<std::size_t>(total));
    for (int u = 0; u < v; ++u) {
        edges.push_back({u, apex});
        rec.labels[static_cast<std::size_t>(u)] = {VertexRole::original, {u}, 0};
    }
    rec.labels[static_cast<std::size_t>(apex)] = {VertexRole::apex, {}, 0};
    int next = v + 1;
    for (const MultiEdge& e : m.edges()) {
        for (int k = 0; k < e.multiplicity; ++k) {
            edges.push_back({e.u, next});
            edges.push_back({e.v, next});
            rec.labels[static_cast<std::size_t>(next)] = {VertexRole::subdivision, {e.u, e.v}, k};
            ++next;
        }
    }
    rec.result = Graph(total, edges);
    rec.triple = SemiBoundedTriple{full_mask(v), full_mask(total) & ~full_mask(v), apex, 2};
    rec.source = "F_M " + format_multigraph(m);
    if (!rec.source.empty() && rec.source.back() == '\n') rec.source.pop_back();
    return rec;
}

ConstructionRecord build_F_rst(int r, int s, int t) {
    if (r < 2) throw std::domain_error("build_F_rst: r must be at least 2");
    if (r > s) throw std::domain_error("build_F_rst: r must not exceed s");
    if (t < 1) throw std::domain_error("build_F_rst: t must be at least 1");
    std::vector<VertexMask> subsets;
    for (VertexMask R = 0; R <= full_mask(s); ++R) {
        if (popcount(R) == r) subsets.push_back(R);
    }
    // Lexicographic order of R as sorted vertex lists.
    std::sort(subsets.begin(), subsets.end(),
              [](VertexMask a, VertexMask b) { return mask_to_vertices(a) < mask_to_vertices(b); });
    const long long total_ll = static_cast<long long>(s) + 1 + static_cast<long long>(subsets.size()) * t;
    if (total_ll > kMaskVertexLimit) throw std::domain_error("build_F_rst: result exceeds 64 vertices");
    const int total = static_cast<int>(total_ll);
    const int apex = s;
    ConstructionRecord rec;
    rec.labels.resize(static_cast<std::size_t>(total));
    std::vector<Edge> edges;
    for (int u = 0; u < s; ++u) {
        edges.push_back({u, apex});
        rec.labels[static_cast<std::size_t>(u)] = {VertexRole::original, {u}, 0};
    }
    rec.labels[static_cast<std::size_t>(apex)] = {VertexRole::apex, {}, 0};
    int next = s + 1;
    for (VertexMask R : subsets) {
        auto members = mask_to_vertices(R);
        for (int k = 0; k < t; ++k) {
            for (int u : members) edges.push_back({u, next});
            rec.labels[static_cast<std::size_t>(next)] = {VertexRole::r_set_copy, members, k};
            ++next;
        }
    }
    rec.result = Graph(total, edges);
    rec.triple = SemiBoundedTriple{full_mask(s), full_mask(total) & ~full_mask(s), apex, r};
    rec.source = "F_{r,s,t} (" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + ")";
    return rec;
}

BalanceCheck multigraph_balanced(const Multigraph& m) {
    const int v = m.vertex_count();
    if (v < 2) throw std::domain_error("multigraph_balanced: needs at least 2 vertices");
    if (v > kPatternVertexLimit) throw std::domain_error("multigraph_balanced: more than 20 vertices");
    if (m.edge_count() < 1) throw std::domain_error("multigraph_balanced: needs at least one edge");
    BalanceCheck out;
    out.target = Rational(m.edge_count(), v - 1);
    bool first = true;
    for (VertexMask mu = 1; mu <= full_mask(v); ++mu) {
        if (popcount(mu) < 2) continue;
        Rational value(m.edges_within(mu), popcount(mu) - 1);
        if (first || value > out.max_value) {
            out.max_value = value;
            out.witness = mu;
            first = false;
        }
    }
    out.balanced = out.max_value == out.target;
    return out;
}

BalanceCheck general_balance_check(const Graph& f, const SemiBoundedTriple& triple) {
    validate_triple(f, triple);
    require_pattern_size(f, "general_balance_check");
    for (VertexMask m = triple.T & ~bit(triple.v_star); m != 0; m &= m - 1) {
        int v = std::countr_zero(m);
        if (f.degree(v) != triple.r) {
            throw std::domain_error("general_balance_check: vertex " + std::to_string(v) + " of T has degree " +
                                    std::to_string(f.degree(v)) + ", expected exactly r=" +
                                    std::to_string(triple.r));
        }
    }
    const int s = popcount(triple.S);
    if (s < 2) throw std::domain_error("general_balance_check: |S| must be at least 2");
    BalanceCheck out;
    out.target = Rational(f.edge_count() - popcount(triple.T), s - 1);
    bool first = true;
    // Sub-masks of S.
    for (VertexMask mu = triple.S;; mu = (mu - 1) & triple.S) {
        if (popcount(mu) >= 2) {
            VertexMask nbhd = 0;
            for (VertexMask m = mu; m != 0; m &= m - 1) nbhd |= f.neighbor_mask(std::countr_zero(m));
            nbhd &= triple.T;
            Rational value(f.edges_within(mu | nbhd) - popcount(nbhd), popcount(mu) - 1);
            if (first || value > out.max_value || (value == out.max_value && mu < out.witness)) {
                out.max_value = value;
                out.witness = mu;
                first = false;
            }
        }
        if (mu == 0) break;
    }
    out.balanced = out.max_value == out.target;
    return out;
}

bool verify_multibalanced_m2(const Multigraph& m) {
    if (!multigraph_balanced(m).balanced) {
        throw std::domain_error("verify_multibalanced_m2: multigraph is not balanced");
    }
    auto rec = build_F_M(m);
    const int v = m.vertex_count(), e = m.edge_count();
    return m2(rec.result) == Rational(2 * e + v - 1, e + v - 1);
}

Multigraph multigraph_from_apex_graph(const Graph& f, const SemiBoundedTriple& triple) {
    SemiBoundedTriple unbounded = triple;
    unbounded.r = std::max(2, f.vertex_count());
    validate_triple(f, unbounded);
    auto s_vertices = mask_to_vertices(triple.S);
    std::vector<int> index(static_cast<std::size_t>(f.vertex_count()), -1);
    for (std::size_t i = 0; i < s_vertices.size(); ++i) index[static_cast<std::size_t>(s_vertices[i])] = static_cast<int>(i);
    std::vector<MultiEdge> edges;
    for (VertexMask m = triple.T & ~bit(triple.v_star); m != 0; m &= m - 1) {
        int v = std::countr_zero(m);
        if (f.degree(v) != 2) throw std::domain_error("multigraph_from_apex_graph: non-apex T vertex of degree != 2");
        const auto& nb = f.neighbors(v);
        edges.push_back({index[static_cast<std::size_t>(nb[0])], index[static_cast<std::size_t>(nb[1])], 1});
    }
    return Multigraph(static_cast<int>(s_vertices.size()), edges);
}

}  // namespace rturan
