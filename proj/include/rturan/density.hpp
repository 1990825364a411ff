#pragma once

#include <optional>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/rational.hpp"

namespace rturan {

/// (e(nu) - 1) / (|nu| - 2); requires |nu| >= 3.
Rational m2_local(const Graph& f, VertexMask nu);

/// 2-density: the maximum of m2_local over all subsets of at least 3 vertices.
Rational m2(const Graph& f);

/// Every subset attaining m2(f), in increasing mask order.
std::vector<VertexMask> m2_witnesses(const Graph& f);

/// Maximum of (e(F') - 1) / (v(F') - 2) over proper subgraphs F' with at
/// least 3 vertices. Swept over proper vertex subsets plus the full vertex
/// set with one edge deleted; those dominate every other proper subgraph.
Rational m2_star(const Graph& f);

struct DensityReport {
    Rational m2;
    std::vector<VertexMask> witnesses;
    bool two_balanced = false;
    bool strictly_two_balanced = false;
    std::optional<Rational> m2_star;  // empty when no proper subgraph qualifies
};

DensityReport density_report(const Graph& f);

struct SemiBoundedTriple;

/// True iff every m2-witness contains the apex of `triple`.
/// Throws std::domain_error for acyclic f.
bool maximizer_contains_apex_check(const Graph& f, const SemiBoundedTriple& triple);

}  // namespace rturan
