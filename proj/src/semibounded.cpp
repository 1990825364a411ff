#include "rturan/semibounded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rturan/density.hpp"

namespace rturan {

std::string triple_violation(const Graph& f, const SemiBoundedTriple& t) {
    if (!f.fits_mask()) return "pattern exceeds 64 vertices";
    const VertexMask all = f.vertex_mask();
    if ((t.S & t.T) != 0 || (t.S | t.T) != all) return "S and T do not partition V(F)";
    if (t.r < 1) return "r must be at least 1";
    if (t.v_star < 0 || t.v_star >= f.vertex_count() || !(t.T & bit(t.v_star))) return "apex is not a vertex of T";
    for (const Edge& e : f.edges()) {
        bool us = t.S & bit(e.u), vs = t.S & bit(e.v);
        if (us == vs) return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " lies inside one side";
    }
    if ((f.neighbor_mask(t.v_star) & t.S) != t.S) return "apex is not adjacent to every vertex of S";
    for (VertexMask m = t.T & ~bit(t.v_star); m != 0; m &= m - 1) {
        int v = std::countr_zero(m);
        if (f.degree(v) > t.r) {
            return "vertex " + std::to_string(v) + " of T has degree " + std::to_string(f.degree(v)) + " > r=" +
                   std::to_string(t.r);
        }
    }
    return {};
}

void validate_triple(const Graph& f, const SemiBoundedTriple& t) {
    if (auto why = triple_violation(f, t); !why.empty()) throw std::domain_error("invalid semi-bounded triple: " + why);
}

int minimal_r(const Graph& f, VertexMask S, VertexMask T, int v_star) {
    (void)S;
    int r = 1;
    for (VertexMask m = T & ~bit(v_star); m != 0; m &= m - 1) r = std::max(r, f.degree(std::countr_zero(m)));
    return r;
}

std::vector<SemiBoundedTriple> find_triples(const Graph& f, int r) {
    require_mask_graph(f, "find_triples");
    if (r < 1) throw std::domain_error("find_triples: r must be at least 1");
    std::vector<SemiBoundedTriple> out;
    for (const Bipartition& b : all_two_colorings(f)) {
        for (VertexMask m = b.T; m != 0; m &= m - 1) {
            SemiBoundedTriple t{b.S, b.T, std::countr_zero(m), r};
            if (triple_violation(f, t).empty()) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<SemiBoundedTriple> select_triple(const Graph& f, std::optional<int> r) {
    require_mask_graph(f, "select_triple");
    std::optional<SemiBoundedTriple> best;
    auto better = [&](const SemiBoundedTriple& a, const SemiBoundedTriple& b) {
        if (a.r != b.r) return a.r < b.r;
        int da = f.degree(a.v_star), db = f.degree(b.v_star);
        if (da != db) return da > db;
        if (a.v_star != b.v_star) return a.v_star < b.v_star;
        return mask_to_vertices(a.S) < mask_to_vertices(b.S);
    };
    for (const Bipartition& b : all_two_colorings(f)) {
        for (VertexMask m = b.T; m != 0; m &= m - 1) {
            int v = std::countr_zero(m);
            int need = minimal_r(f, b.S, b.T, v);
            SemiBoundedTriple t{b.S, b.T, v, r ? *r : need};
            if (r && need > *r) continue;
            if (!triple_violation(f, t).empty()) continue;
            if (!best || better(t, *best)) best = t;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------

SemiBoundedProfile::SemiBoundedProfile(const Graph& f, const SemiBoundedTriple& triple) : f_(&f), triple_(triple) {
    require_pattern_size(f, "semi-bounded profile");
    validate_triple(f, triple);
}

std::optional<int> SemiBoundedProfile::f(VertexMask nu) const {
    const Graph& g = *f_;
    if (g.edges_within(nu) == 0) return std::nullopt;
    int value = popcount(triple_.S & nu);
    int heaviest = std::numeric_limits<int>::min();
    for (VertexMask m = triple_.T & nu; m != 0; m &= m - 1) {
        int v = std::countr_zero(m);
        value += g.degree(v);
        if (g.degree_within(v, nu) >= 1) heaviest = std::max(heaviest, g.degree(v));
    }
    return value - heaviest;
}

int f_value(const Graph& f, const SemiBoundedTriple& triple, VertexMask nu) {
    SemiBoundedProfile profile(f, triple);
    auto value = profile.f(nu);
    if (!value) throw std::domain_error("f_value: F[nu] has no edges, f is undefined");
    return *value;
}

NuStats nu_stats(const SemiBoundedProfile& profile, VertexMask nu, const Rational& m2_of_f) {
    const Graph& g = profile.graph();
    const int r = profile.triple().r;
    NuStats s;
    s.nu = nu;
    s.size = popcount(nu);
    s.e_nu = g.edges_within(nu);
    s.min_degree = g.min_degree_within(nu);
    s.f_nu = profile.f(nu);
    if (!s.f_nu) return s;
    const int fv = *s.f_nu;
    const bool spanning = nu != 0 && s.min_degree >= 1;
    if (spanning && fv - 1 < r * (s.e_nu - 1)) {
        s.in_A = true;
        s.a_nu = Rational(r * (s.size - 2) + 1 - fv, r * (s.e_nu - 1) + 1 - fv);
    }
    if (spanning && fv > s.e_nu) {
        s.in_B = true;
        s.b_nu = (Rational(s.size - 2) - Rational(s.e_nu - 1) / m2_of_f) / Rational(fv - s.e_nu);
    }
    return s;
}

NuStats nu_stats(const Graph& f, const SemiBoundedTriple& triple, VertexMask nu) {
    SemiBoundedProfile profile(f, triple);
    Rational density = f.vertex_count() >= 3 ? m2(f) : Rational(0);
    return nu_stats(profile, nu, density);
}

ThresholdWitness a_of_F(const Graph& f, const SemiBoundedTriple& triple) {
    SemiBoundedProfile profile(f, triple);
    std::optional<ThresholdWitness> best;
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        auto s = nu_stats(profile, nu, Rational(1));
        if (s.in_A && (!best || *s.a_nu < best->value)) best = ThresholdWitness{*s.a_nu, nu};
    }
    if (!best) throw std::domain_error("a_of_F: A_F is empty (the pattern must contain a cycle)");
    return *best;
}

ThresholdWitness b_of_F(const Graph& f, const SemiBoundedTriple& triple) {
    SemiBoundedProfile profile(f, triple);
    if (f.vertex_count() < 3) throw std::domain_error("b_of_F: B_F is empty (the pattern must contain a cycle)");
    const Rational density = m2(f);
    std::optional<ThresholdWitness> best;
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        auto s = nu_stats(profile, nu, density);
        if (s.in_B && (!best || *s.b_nu < best->value)) best = ThresholdWitness{*s.b_nu, nu};
    }
    if (!best) throw std::domain_error("b_of_F: B_F is empty (the pattern must contain a cycle)");
    return *best;
}

// ---------------------------------------------------------------------------

void BalancingContext::validate() const {
    if (!(q > 0) || q > 1) throw std::domain_error("BalancingContext: q must lie in (0,1]");
    if (!(delta > 0)) throw std::domain_error("BalancingContext: delta must be positive");
    if (!(n > 0)) throw std::domain_error("BalancingContext: n must be positive");
    if (!(c_tau > 0)) throw std::domain_error("BalancingContext: C_tau must be positive");
}

BalancingContext BalancingContext::from_host(const Graph& host, double delta, double c_tau) {
    BalancingContext ctx;
    ctx.n = host.vertex_count();
    ctx.q = host.vertex_count() == 0 ? 0.0
                                     : static_cast<double>(host.edge_count()) /
                                           (static_cast<double>(host.vertex_count()) * host.vertex_count());
    ctx.delta = delta;
    ctx.c_tau = c_tau;
    return ctx;
}

DValue d_value(const SemiBoundedProfile& profile, const BalancingContext& ctx, VertexMask nu) {
    const Graph& g = profile.graph();
    DValue d;
    auto fv = profile.f(nu);
    if (!fv) {
        d.infinite = true;
        d.value = std::numeric_limits<double>::infinity();
        d.log_value = std::numeric_limits<double>::infinity();
        return d;
    }
    d.delta_exponent = -popcount(nu);
    d.q_exponent = g.edge_count() - *fv;
    d.n_exponent = g.vertex_count() - popcount(nu);
    d.log_value = d.delta_exponent * std::log(ctx.delta) + d.q_exponent * std::log(ctx.q) +
                  d.n_exponent * std::log(ctx.n);
    d.value = std::exp(d.log_value);
    return d;
}

DValue d_value(const Graph& f, const SemiBoundedTriple& triple, const BalancingContext& ctx, VertexMask nu) {
    ctx.validate();
    return d_value(SemiBoundedProfile(f, triple), ctx, nu);
}

std::vector<VertexMask> tau_subsets(const Graph& f) {
    require_mask_graph(f, "tau_subsets");
    require_pattern_size(f, "tau_subsets");
    std::vector<VertexMask> out;
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        if (f.edges_within(nu) >= 2 && f.min_degree_within(nu) >= 1) out.push_back(nu);
    }
    return out;
}

TauValue tau(const Graph& f, const SemiBoundedTriple& triple, const BalancingContext& ctx) {
    if (!(ctx.q > 0) || !(ctx.n > 0)) throw std::domain_error("tau: n and q must be positive");
    TauValue out;
    if (ctx.q > 1) return out;
    SemiBoundedProfile profile(f, triple);
    const double log_q = std::log(ctx.q), log_n = std::log(ctx.n);
    double best = -std::numeric_limits<double>::infinity();
    for (VertexMask nu : tau_subsets(f)) {
        const int e = f.edges_within(nu);
        const int fv = *profile.f(nu);
        double term = ((1 - fv) * log_q + (2 - popcount(nu)) * log_n) / (e - 1);
        if (term > best) {
            best = term;
            out.argmax = nu;
        }
    }
    if (out.argmax == 0) throw std::domain_error("tau: no subset with minimum degree 1 and at least 2 edges");
    out.log_value = log_q + 2 * log_n + best;
    out.value = std::exp(out.log_value);
    return out;
}

Rational tau_exponent(const Graph& f, const SemiBoundedTriple& triple, const Rational& x) {
    if (x > 0) return Rational(0);
    SemiBoundedProfile profile(f, triple);
    std::optional<Rational> best;
    for (VertexMask nu : tau_subsets(f)) {
        const int e = f.edges_within(nu);
        const int fv = *profile.f(nu);
        Rational term = (Rational(1 - fv) * x + Rational(2 - popcount(nu))) / Rational(e - 1);
        if (!best || term > *best) best = term;
    }
    if (!best) throw std::domain_error("tau_exponent: no subset with minimum degree 1 and at least 2 edges");
    return Rational(2) + x + *best;
}

// ---------------------------------------------------------------------------

void validate_cr_triple(const Graph& f, const CrBoundedTriple& t) {
    require_mask_graph(f, "cr_f_value");
    const VertexMask all = f.vertex_mask();
    if ((t.S & t.T) != 0 || (t.S | t.T) != all) throw std::domain_error("(c,r) triple: S and T do not partition V(F)");
    if ((t.T_star & ~t.T) != 0) throw std::domain_error("(c,r) triple: T* must lie inside T");
    if (t.c < 1 || popcount(t.T_star) != t.c) throw std::domain_error("(c,r) triple: |T*| must equal c >= 1");
    for (const Edge& e : f.edges()) {
        if (static_cast<bool>(t.S & bit(e.u)) == static_cast<bool>(t.S & bit(e.v))) {
            throw std::domain_error("(c,r) triple: edge inside one side");
        }
    }
    for (VertexMask m = t.T_star; m != 0; m &= m - 1) {
        if ((f.neighbor_mask(std::countr_zero(m)) & t.S) != t.S) {
            throw std::domain_error("(c,r) triple: T* vertex not adjacent to all of S");
        }
    }
    for (VertexMask m = t.T & ~t.T_star; m != 0; m &= m - 1) {
        if (f.degree(std::countr_zero(m)) > t.r) throw std::domain_error("(c,r) triple: T \\ T* degree exceeds r");
    }
}

int cr_f_value(const Graph& f, const CrBoundedTriple& t, VertexMask nu) {
    validate_cr_triple(f, t);
    if (f.edges_within(nu) == 0) throw std::domain_error("cr_f_value: F[nu] has no edges, f is undefined");
    int value = t.c * popcount(t.S & nu);
    for (VertexMask m = t.T & nu & ~t.T_star; m != 0; m &= m - 1) value += f.degree(std::countr_zero(m));
    int g = 0;
    if ((t.T_star & nu) != 0) {
        g = popcount(t.T_star & ~nu);
    } else {
        g = std::numeric_limits<int>::min();
        for (VertexMask m = t.T & nu; m != 0; m &= m - 1) {
            int w = std::countr_zero(m);
            int inside = f.degree_within(w, nu);
            if (inside >= 1) g = std::max(g, f.degree(w) + (t.c - 1) * inside);
        }
    }
    return value - g;
}

}  // namespace rturan
