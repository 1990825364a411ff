#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/rational.hpp"

namespace rturan {

/// Bipartition (S, T) with apex v_star in T adjacent to all of S, and every
/// other vertex of T of degree at most r.
struct SemiBoundedTriple {
    VertexMask S = 0;
    VertexMask T = 0;
    int v_star = -1;
    int r = 1;
    auto operator<=>(const SemiBoundedTriple&) const = default;
};

/// Empty string when `t` witnesses r-semi-boundedness of f, else the reason.
std::string triple_violation(const Graph& f, const SemiBoundedTriple& t);
void validate_triple(const Graph& f, const SemiBoundedTriple& t);

/// Smallest r (at least 1) for which (S, T, v_star) is a valid triple.
int minimal_r(const Graph& f, VertexMask S, VertexMask T, int v_star);

/// All (S, T, v*) over every 2-coloring and apex choice that are r-semi-bounded,
/// sorted. Empty for non-bipartite f.
std::vector<SemiBoundedTriple> find_triples(const Graph& f, int r);

/// Preferred triple: smallest r, then largest apex degree, then lexicographic
/// (v*, S). With `r` fixed only triples valid for that r are considered.
std::optional<SemiBoundedTriple> select_triple(const Graph& f, std::optional<int> r = std::nullopt);

/// Pattern statistics as a function of nu for one fixed triple. Construction
/// validates the triple; queries are cheap enough for full subset sweeps.
class SemiBoundedProfile {
public:
    SemiBoundedProfile(const Graph& f, const SemiBoundedTriple& triple);

    const Graph& graph() const noexcept { return *f_; }
    const SemiBoundedTriple& triple() const noexcept { return triple_; }

    /// f(nu); empty when F[nu] has no edges.
    std::optional<int> f(VertexMask nu) const;

private:
    const Graph* f_;
    SemiBoundedTriple triple_;
};

/// Throws std::domain_error when F[nu] has no edges.
int f_value(const Graph& f, const SemiBoundedTriple& triple, VertexMask nu);

struct NuStats {
    VertexMask nu = 0;
    int size = 0;
    int e_nu = 0;
    int min_degree = 0;
    std::optional<int> f_nu;
    bool in_A = false;
    std::optional<Rational> a_nu;
    bool in_B = false;
    std::optional<Rational> b_nu;
};

NuStats nu_stats(const SemiBoundedProfile& profile, VertexMask nu, const Rational& m2_of_f);
NuStats nu_stats(const Graph& f, const SemiBoundedTriple& triple, VertexMask nu);

struct ThresholdWitness {
    Rational value;
    VertexMask witness = 0;  // smallest mask attaining the minimum
};

/// a(F) = min over A_F of a(nu). Throws std::domain_error when A_F is empty.
ThresholdWitness a_of_F(const Graph& f, const SemiBoundedTriple& triple);
/// b(F) = min over B_F of b(nu). Throws std::domain_error when B_F is empty.
ThresholdWitness b_of_F(const Graph& f, const SemiBoundedTriple& triple);

/// Host-side constants of the degree caps and of tau.
struct BalancingContext {
    double n = 1;
    double q = 1;        // e(G) / n^2
    double delta = 1;
    double c_tau = 1;

    void validate() const;
    static BalancingContext from_host(const Graph& host, double delta = 1, double c_tau = 1);
};

/// D(nu) = delta^{-|nu|} q^{e(F)-f(nu)} n^{v(F)-|nu|}, infinite for edgeless nu.
struct DValue {
    bool infinite = false;
    double value = 0;
    double log_value = 0;
    int delta_exponent = 0;  // -|nu|
    int q_exponent = 0;      // e(F) - f(nu)
    int n_exponent = 0;      // v(F) - |nu|
};

DValue d_value(const SemiBoundedProfile& profile, const BalancingContext& ctx, VertexMask nu);
DValue d_value(const Graph& f, const SemiBoundedTriple& triple, const BalancingContext& ctx, VertexMask nu);

struct TauValue {
    double value = 1;
    double log_value = 0;
    VertexMask argmax = 0;  // 0 when q > 1
};

/// 1 for q > 1, else q n^2 max over nu (delta(F[nu]) >= 1, e(nu) >= 2) of
/// [q^{1-f(nu)} n^{2-|nu|}]^{1/(e(nu)-1)}. Evaluated in log space.
TauValue tau(const Graph& f, const SemiBoundedTriple& triple, const BalancingContext& ctx);

/// Exponent of n in tau(n, q n^2) when q = n^x; exact. Zero for x > 0.
Rational tau_exponent(const Graph& f, const SemiBoundedTriple& triple, const Rational& x);

/// The nu ranging in the tau maximum: delta(F[nu]) >= 1 and e(nu) >= 2.
std::vector<VertexMask> tau_subsets(const Graph& f);

/// (c, r)-bounded triple: T_star is a set of c vertices of T adjacent to all of S.
struct CrBoundedTriple {
    VertexMask S = 0;
    VertexMask T = 0;
    VertexMask T_star = 0;
    int c = 1;
    int r = 1;
};

void validate_cr_triple(const Graph& f, const CrBoundedTriple& t);

/// c|S n nu| + sum over T n nu \ T* of deg_F - g(nu). Throws on invalid
/// triple or edgeless nu.
int cr_f_value(const Graph& f, const CrBoundedTriple& t, VertexMask nu);

}  // namespace rturan
