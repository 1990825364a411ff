#include "rturan/lemma_suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rturan/constructions.hpp"
#include "rturan/corpus.hpp"
#include "rturan/density.hpp"
#include "rturan/simulation.hpp"
#include "rturan/supersaturation.hpp"

namespace rturan {

namespace {

std::string mask_string(VertexMask m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int v : mask_to_vertices(m)) {
        out << (first ? "" : ",") << v;
        first = false;
    }
    out << '}';
    return out.str();
}

struct Recorder {
    SuiteResult& result;
    const SuiteOptions& options;
    void check(bool ok, const std::function<std::string()>& what) {
        ++result.checks;
        if (ok) return;
        ++result.violations;
        result.passed = false;
        if (result.counterexamples.size() < options.max_counterexamples) result.counterexamples.push_back(what());
    }
    // An unexpected exception counts as a violation.
    template <typename Fn>
    void guarded(const std::function<std::string()>& where, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            check(false, [&] { return where() + " threw: " + e.what(); });
        }
    }
};

SuiteResult start(std::string name, std::string statement) {
    SuiteResult r;
    r.name = std::move(name);
    r.statement = std::move(statement);
    return r;
}

int max_degree_in(const Graph& f, VertexMask part) {
    int d = 0;
    for (int v : mask_to_vertices(part)) d = std::max(d, f.degree(v));
    return d;
}

}  // namespace

std::vector<SemiBoundedTriple> all_semibounded_triples(const Graph& f) {
    std::vector<SemiBoundedTriple> out;
    for (int r = 1; r <= std::max(1, f.vertex_count()); ++r) {
        auto ts = find_triples(f, r);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string describe(const Graph& f, const SemiBoundedTriple& t) {
    std::ostringstream out;
    out << "F=[" << format_graph(f) << "] S=" << mask_string(t.S) << " T=" << mask_string(t.T)
        << " v*=" << t.v_star << " r=" << t.r;
    std::string s = out.str();
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

SuiteResult suite_removal_recurrences(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("removal-recurrences",
                     "f = 1 on a single edge; removing u in S changes f by 1; some non-apex T vertex changes f by its degree");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        for (const auto& t : all_semibounded_triples(f)) {
            SemiBoundedProfile prof(f, t);
            for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
                auto fv = prof.f(nu);
                if (!fv) continue;
                const int e = f.edges_within(nu);
                if (e == 1 && popcount(nu) == 2) {
                    rec.check(*fv == 1, [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": f of an edge != 1"; });
                }
                for (int u : mask_to_vertices(nu & t.S)) {
                    auto fr = prof.f(nu & ~bit(u));
                    if (!fr) continue;
                    rec.check(*fv - *fr == 1, [&] {
                        return describe(f, t) + " nu=" + mask_string(nu) + " u=" + std::to_string(u) +
                               ": S-removal f(nu)-f(nu-u)=" + std::to_string(*fv - *fr) +
                               (f.min_degree_within(nu & ~bit(u)) >= 1 ? "" : " (nu-u has an isolated vertex)");
                    });
                }
                const VertexMask rest = nu & t.T & ~bit(t.v_star);
                bool hypothesis = false;
                for (int w : mask_to_vertices(rest)) hypothesis |= f.degree_within(w, nu) < e;
                if (!hypothesis) continue;
                bool found = false;
                for (int v : mask_to_vertices(rest)) {
                    auto fr = prof.f(nu & ~bit(v));
                    if (fr && *fv - *fr == f.degree(v)) found = true;
                }
                rec.check(found, [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": T-removal, no vertex drops f by its degree"; });
            }
        }
    }
    return res;
}

SuiteResult suite_f_versus_e(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("f-versus-e", "f(nu) >= e(nu), with equality when S and v* lie in nu");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        for (const auto& t : all_semibounded_triples(f)) {
            SemiBoundedProfile prof(f, t);
            const VertexMask core = t.S | bit(t.v_star);
            for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
                auto fv = prof.f(nu);
                if (!fv) continue;
                const int e = f.edges_within(nu);
                rec.check(*fv >= e, [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": f < e"; });
                if ((nu & core) == core) {
                    rec.check(*fv == e, [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": f != e"; });
                }
            }
        }
    }
    return res;
}

SuiteResult suite_f_upper_bounds(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("f-upper-bounds", "f(nu) <= e(F) and f(nu) <= -(r-1)(|S n nu|-1) + r(|nu|-2) + 1");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        for (const auto& t : all_semibounded_triples(f)) {
            SemiBoundedProfile prof(f, t);
            for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
                auto fv = prof.f(nu);
                if (!fv) continue;
                rec.check(*fv <= f.edge_count(), [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": f > e(F)"; });
                const int s = popcount(nu & t.S);
                const int bound = -(t.r - 1) * (s - 1) + t.r * (popcount(nu) - 2) + 1;
                rec.check(*fv <= bound, [&] {
                    return describe(f, t) + " nu=" + mask_string(nu) + ": f=" + std::to_string(*fv) + " > " +
                           std::to_string(bound);
                });
            }
        }
    }
    return res;
}

SuiteResult suite_threshold_sets(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("threshold-sets-nonempty", "for cyclic F: A_F and B_F are nonempty and a(F) <= 1");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        if (!has_cycle(f)) continue;
        for (const auto& t : all_semibounded_triples(f)) {
            rec.guarded([&] { return describe(f, t); }, [&] {
                auto a = a_of_F(f, t);
                rec.check(a.value <= Rational(1), [&] { return describe(f, t) + ": a(F)=" + to_string(a.value); });
                b_of_F(f, t);
                ++res.checks;
            });
        }
    }
    return res;
}

SuiteResult suite_a_lower_bound(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("a-lower-bound", "for cyclic F: a(F) >= (r-1)/(r Delta - 1), Delta the largest degree in S");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        if (!has_cycle(f)) continue;
        for (const auto& t : all_semibounded_triples(f)) {
            rec.guarded([&] { return describe(f, t); }, [&] {
                const int delta = max_degree_in(f, t.S);
                Rational bound(t.r - 1, t.r * delta - 1);
                auto a = a_of_F(f, t);
                rec.check(a.value >= bound, [&] {
                    return describe(f, t) + ": a(F)=" + to_string(a.value) + " < " + to_string(bound);
                });
            });
        }
    }
    return res;
}

SuiteResult suite_exact_degree(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("exact-degree-closed-form",
                     "when every non-apex T vertex has degree r: f = |S n nu| + r(|T n nu| - 1) and the closed a(nu)");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        for (const auto& t : all_semibounded_triples(f)) {
            bool exact = true;
            for (int v : mask_to_vertices(t.T)) {
                if (v != t.v_star && f.degree(v) != t.r) exact = false;
            }
            if (!exact) continue;
            SemiBoundedProfile prof(f, t);
            const Rational m = f.vertex_count() >= 3 ? m2(f) : Rational(1);
            for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
                auto fv = prof.f(nu);
                if (!fv) continue;
                const int s = popcount(nu & t.S), tn = popcount(nu & t.T);
                rec.check(*fv == s + t.r * (tn - 1), [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": f mismatch"; });
                auto st = nu_stats(prof, nu, m);
                if (st.in_A) {
                    const int den = t.r * (st.e_nu - tn) + 1 - s;
                    bool ok = den != 0 && *st.a_nu == Rational((t.r - 1) * (s - 1), den);
                    rec.check(ok, [&] { return describe(f, t) + " nu=" + mask_string(nu) + ": a(nu) closed form mismatch"; });
                }
            }
        }
    }
    return res;
}

SuiteResult suite_apex_in_witnesses(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("apex-in-m2-witnesses", "for cyclic F with an apex complete to S: every m2-maximizer contains v*");
    Recorder rec{res, o};
    for (const Graph& f : corpus) {
        if (!has_cycle(f)) continue;
        for (const auto& t : all_semibounded_triples(f)) {
            rec.guarded([&] { return describe(f, t); }, [&] {
                rec.check(maximizer_contains_apex_check(f, t), [&] { return describe(f, t) + ": a maximizer misses v*"; });
            });
        }
    }
    return res;
}

SuiteResult suite_tau_properties(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("tau-properties",
                     "tau non-increasing in q and >= 1; tau <= q^{1-r} n on [n^{-1/r}, n^{(a-1)/r}]; "
                     "tau <= n^{2-1/m2} for q >= n^{-b}");
    Recorder rec{res, o};
    const double n = o.tau_n;
    const double ln = std::log(n);
    const double tol = 1e-9;
    for (const Graph& f : corpus) {
        if (!has_cycle(f)) continue;
        const Rational m = m2(f);
        for (const auto& t : all_semibounded_triples(f)) {
            rec.guarded([&] { return describe(f, t); }, [&] {
                const Rational a = a_of_F(f, t).value;
                const Rational b = b_of_F(f, t).value;
                const double lo_b = -1.0 / t.r, hi_b = (to_double(a) - 1) / t.r;
                const double flat = 2 - 1 / to_double(m);
                double prev = INFINITY;
                for (int k = 0; k < o.tau_grid; ++k) {
                    // log-spaced q from n^{-2} to n^{0.25}
                    const double x = -2.0 + 2.25 * k / (o.tau_grid - 1);
                    BalancingContext ctx{n, std::exp(x * ln), 1, 1};
                    const double log_tau = tau(f, t, ctx).log_value;
                    rec.check(log_tau <= prev + tol, [&] { return describe(f, t) + ": tau increases at x=" + std::to_string(x); });
                    rec.check(log_tau >= -tol, [&] { return describe(f, t) + ": tau < 1 at x=" + std::to_string(x); });
                    prev = log_tau;
                    if (x >= lo_b - tol && x <= hi_b + tol) {
                        const double rhs = (1 - t.r) * x * ln + ln;
                        rec.check(log_tau <= rhs + 1e-7 * ln, [&] {
                            return describe(f, t) + ": tau > q^{1-r} n at x=" + std::to_string(x);
                        });
                    }
                    if (x >= -to_double(b) - tol) {
                        rec.check(log_tau <= flat * ln + 1e-7 * ln, [&] {
                            return describe(f, t) + ": tau > n^{2-1/m2} at x=" + std::to_string(x);
                        });
                    }
                }
                // Exact exponents at the interval endpoints.
                for (const Rational& x : {Rational(-1, t.r), (a - Rational(1)) / Rational(t.r)}) {
                    const Rational e = tau_exponent(f, t, x);
                    rec.check(e <= Rational(1 - t.r) * x + Rational(1), [&] {
                        return describe(f, t) + ": exact tau exponent " + to_string(e) + " above q^{1-r} n at x=" + to_string(x);
                    });
                }
                for (const Rational& x : {-b, Rational(0)}) {
                    const Rational e = tau_exponent(f, t, x);
                    rec.check(e <= Rational(2) - Rational(1) / m, [&] {
                        return describe(f, t) + ": exact tau exponent " + to_string(e) + " above 2-1/m2 at x=" + to_string(x);
                    });
                }
            });
        }
    }
    return res;
}

SuiteResult suite_double_counting(const std::vector<Graph>& corpus, const SuiteOptions& o) {
    auto res = start("double-counting",
                     "maximal D-good families: recount within caps, no insertable embedding, "
                     "xi_nu <= 2|Phi|/D(nu) and xi_{psi',nu} <= 2D(nu')/D(nu)");
    Recorder rec{res, o};
    std::vector<Graph> hosts{complete_bipartite(3, 3), complete_bipartite(4, 4)};
    {
        // one seeded random bipartite host on 4+4 vertices
        std::vector<Edge> edges;
        for (int i = 0; i < 4; ++i)
            for (int j = 4; j < 8; ++j)
                if (pair_uniform(o.seed, i, j) < 0.7) edges.push_back({i, j});
        hosts.emplace_back(8, edges);
    }
    for (const Graph& f : corpus) {
        if (!has_cycle(f) || f.vertex_count() > o.family_pattern_vertices) continue;
        auto t = select_triple(f);
        if (!t) continue;
        for (std::size_t h = 0; h < hosts.size(); ++h) {
            const Graph& host = hosts[h];
            if (host.edge_count() == 0) continue;
            rec.guarded([&] { return describe(f, *t) + " host#" + std::to_string(h); }, [&] {
                auto ctx = BalancingContext::from_host(host, 0.5);
                auto family = build_dgood(f, *t, host, ctx, o.seed);
                auto where = [&] { return describe(f, *t) + " host=[" + format_graph(host) + "]"; };
                rec.check(recount_is_dgood(family), [&] { return where() + ": recount exceeds a cap"; });
                rec.check(!find_insertable(family).has_value(), [&] { return where() + ": family not maximal"; });
                auto dc = check_double_counting(family);
                rec.check(dc.holds, [&] { return where() + ": double counting fails"; });
            });
        }
    }
    return res;
}

SuiteResult suite_multigraph_m2(const SuiteOptions& o) {
    auto res = start("multigraph-m2", "balanced M: m2(F_M) = (2e(M)+v(M)-1)/(e(M)+v(M)-1), attained by all of F_M");
    Recorder rec{res, o};
    for (const Multigraph& m : small_multigraphs(4, 5)) {
        if (!multigraph_balanced(m).balanced) continue;
        rec.guarded([&] { return format_multigraph(m); }, [&] {
            rec.check(verify_multibalanced_m2(m), [&] { return "M=[" + format_multigraph(m) + "]"; });
            auto fm = build_F_M(m).result;
            auto rep = density_report(fm);
            rec.check(rep.two_balanced, [&] { return "M=[" + format_multigraph(m) + "]: F_M not 2-balanced"; });
        });
    }
    return res;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "removal-recurrences", "f-versus-e",      "f-upper-bounds",       "threshold-sets-nonempty",
        "a-lower-bound",       "exact-degree-closed-form", "apex-in-m2-witnesses", "tau-properties",
        "double-counting",     "multigraph-m2"};
    return names;
}

std::vector<SuiteResult> run_lemma_suites(const SuiteOptions& o, const std::vector<std::string>& only) {
    for (const auto& name : only) {
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw std::invalid_argument("unknown suite '" + name + "'");
        }
    }
    auto wanted = [&](const std::string& name) {
        return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
    };
    const auto corpus = connected_bipartite_graphs(o.max_vertices, 2);
    std::vector<SuiteResult> out;
    if (wanted("removal-recurrences")) out.push_back(suite_removal_recurrences(corpus, o));
    if (wanted("f-versus-e")) out.push_back(suite_f_versus_e(corpus, o));
    if (wanted("f-upper-bounds")) out.push_back(suite_f_upper_bounds(corpus, o));
    if (wanted("threshold-sets-nonempty")) out.push_back(suite_threshold_sets(corpus, o));
    if (wanted("a-lower-bound")) out.push_back(suite_a_lower_bound(corpus, o));
    if (wanted("exact-degree-closed-form")) out.push_back(suite_exact_degree(corpus, o));
    if (wanted("apex-in-m2-witnesses")) out.push_back(suite_apex_in_witnesses(corpus, o));
    if (wanted("tau-properties")) out.push_back(suite_tau_properties(corpus, o));
    if (wanted("double-counting")) out.push_back(suite_double_counting(corpus, o));
    if (wanted("multigraph-m2")) out.push_back(suite_multigraph_m2(o));
    return out;
}

}  // namespace rturan
