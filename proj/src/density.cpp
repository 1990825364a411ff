#include "rturan/density.hpp"

#include <algorithm>
#include <stdexcept>

#include "rturan/semibounded.hpp"

namespace rturan {

Rational m2_local(const Graph& f, VertexMask nu) {
    require_mask_graph(f, "m2_local");
    const int size = popcount(nu);
    if (size < 3) throw std::domain_error("m2_local: subset must have at least 3 vertices");
    if ((nu & ~f.vertex_mask()) != 0) throw std::domain_error("m2_local: subset contains out-of-range vertices");
    return Rational(f.edges_within(nu) - 1, size - 2);
}

namespace {

void require_m2_input(const Graph& f, const char* who) {
    require_mask_graph(f, who);
    require_pattern_size(f, who);
    if (f.vertex_count() < 3) throw std::domain_error(std::string(who) + ": needs at least 3 vertices");
}

}  // namespace

Rational m2(const Graph& f) {
    require_m2_input(f, "m2");
    std::optional<Rational> best;
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        if (popcount(nu) < 3) continue;
        Rational value(f.edges_within(nu) - 1, popcount(nu) - 2);
        if (!best || value > *best) best = value;
    }
    return *best;
}

std::vector<VertexMask> m2_witnesses(const Graph& f) {
    const Rational target = m2(f);
    std::vector<VertexMask> out;
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        if (popcount(nu) >= 3 && Rational(f.edges_within(nu) - 1, popcount(nu) - 2) == target) out.push_back(nu);
    }
    return out;
}

Rational m2_star(const Graph& f) {
    require_mask_graph(f, "m2_star");
    require_pattern_size(f, "m2_star");
    const VertexMask all = f.vertex_mask();
    std::optional<Rational> best;
    auto offer = [&](Rational value) {
        if (!best || value > *best) best = value;
    };
    for (VertexMask nu = 1; nu < all; ++nu) {
        if (popcount(nu) >= 3) offer(Rational(f.edges_within(nu) - 1, popcount(nu) - 2));
    }
    if (f.vertex_count() >= 3 && f.edge_count() >= 1) offer(Rational(f.edge_count() - 2, f.vertex_count() - 2));
    if (!best) throw std::domain_error("m2_star: no proper subgraph on at least 3 vertices");
    return *best;
}

DensityReport density_report(const Graph& f) {
    DensityReport report;
    report.m2 = m2(f);
    report.witnesses = m2_witnesses(f);
    const VertexMask all = f.vertex_mask();
    for (VertexMask w : report.witnesses) report.two_balanced |= (w == all);
    report.strictly_two_balanced = report.two_balanced && report.witnesses.size() == 1;
    try {
        report.m2_star = m2_star(f);
    } catch (const std::domain_error&) {
        report.m2_star.reset();
    }
    return report;
}

bool maximizer_contains_apex_check(const Graph& f, const SemiBoundedTriple& triple) {
    require_mask_graph(f, "maximizer_contains_apex_check");
    if (!has_cycle(f)) throw std::domain_error("maximizer_contains_apex_check: pattern must contain a cycle");
    if (triple.v_star < 0 || triple.v_star >= f.vertex_count()) {
        throw std::domain_error("maximizer_contains_apex_check: apex out of range");
    }
    SemiBoundedTriple unbounded = triple;
    unbounded.r = std::max(1, f.vertex_count());
    if (auto why = triple_violation(f, unbounded); !why.empty()) {
        throw std::domain_error("maximizer_contains_apex_check: " + why);
    }
    for (VertexMask w : m2_witnesses(f)) {
        if (!(w & bit(triple.v_star))) return false;
    }
    return true;
}

}  // namespace rturan
