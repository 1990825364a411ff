#pragma once

#include <string>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/rational.hpp"
#include "rturan/semibounded.hpp"

namespace rturan {

enum class VertexRole { original, subdivision, apex, r_set_copy };

std::string to_string(VertexRole role);

struct VertexLabel {
    VertexRole role = VertexRole::original;
    /// original / S vertex: its index; subdivision: the M-edge endpoints and
    /// parallel-copy index; r_set_copy: the R-set and copy index.
    std::vector<int> detail;
    int copy = 0;
};

struct ConstructionRecord {
    Graph result;
    SemiBoundedTriple triple;
    std::vector<VertexLabel> labels;  // one per result vertex
    std::string source;               // "F_M <multigraph text>" or "F_{r,s,t} (r,s,t)"
};

/// Subdivide every edge of m (each parallel copy separately) and add an apex
/// adjacent to all original vertices. Vertex order: V(M), apex, then one
/// subdivision vertex per M-edge copy in edge order.
ConstructionRecord build_F_M(const Multigraph& m);

/// S of size s, apex adjacent to S, and t private vertices per r-subset R of S
/// adjacent exactly to R. Vertex order: S, apex, then R-blocks in
/// lexicographic order of R.
ConstructionRecord build_F_rst(int r, int s, int t);

struct BalanceCheck {
    bool balanced = false;
    Rational max_value;     // maximum of the left-hand ratio
    Rational target;        // right-hand side
    VertexMask witness = 0; // a maximizing mu (smallest mask)
};

/// max over mu (|mu| >= 2) of e(M[mu])/(|mu|-1) compared with e(M)/(v(M)-1).
BalanceCheck multigraph_balanced(const Multigraph& m);

/// max over mu in S (|mu| >= 2) of (e(F[mu u N(mu)]) - |N(mu)|)/(|mu|-1)
/// compared with (e(F) - |T|)/(|S| - 1). Requires every T vertex other than
/// the apex to have degree exactly triple.r.
BalanceCheck general_balance_check(const Graph& f, const SemiBoundedTriple& triple);

/// m2(F_M) == (2e(M)+v(M)-1)/(e(M)+v(M)-1); requires a balanced m.
bool verify_multibalanced_m2(const Multigraph& m);

/// Reconstructs M from a triple whose non-apex T vertices all have degree 2:
/// S becomes V(M) (relabelled in increasing order), each such T vertex an edge.
Multigraph multigraph_from_apex_graph(const Graph& f, const SemiBoundedTriple& triple);

}  // namespace rturan
