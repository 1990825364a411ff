#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/rational.hpp"
#include "rturan/semibounded.hpp"

namespace rturan {

/// G(n,p): pair {i,j} (i<j) is an edge iff its counter-based uniform is
/// below p. The uniform depends only on (seed, i, j), so for a fixed seed the
/// graphs are nested in p and in n.
Graph sample_gnp(int n, double p, std::uint64_t seed);

/// The shared uniform of pair {i,j} under `seed`.
double pair_uniform(std::uint64_t seed, int i, int j);

struct FreeSubgraph {
    int edge_count = 0;
    Graph witness;          // F-free spanning subgraph of the host
    std::size_t nodes = 0;  // search nodes (exact) or edge tests (heuristic)
};

struct ExactOptions {
    /// Branch-and-bound nodes before giving up with ResourceError.
    std::size_t node_budget = 2'000'000;
};

/// Maximum F-free subgraph by branch-and-bound: branch on the edges of an
/// F-copy, bound by a greedy packing of copies edge-disjoint outside the
/// kept edges.
FreeSubgraph max_f_free_exact(const Graph& host, const Graph& pattern, const ExactOptions& options = {});

struct HeuristicParams {
    int restarts = 3;
    /// Destroy-and-repair rounds per edge of the best witness, scaled.
    int local_search_depth = 2;
    /// Largest destroy move (edges removed at once).
    int destroy_size = 3;
    /// Also try blown-up polarity-graph seeds (only used for F = C4 style
    /// patterns, i.e. when the pattern contains a 4-cycle).
    bool structured_seeds = true;
};

/// F-free subgraph found by random greedy insertion, improved by local
/// search. With `warm_start` (an F-free subgraph of host) every run starts
/// from it, so the result is never smaller.
FreeSubgraph max_f_free_heuristic(const Graph& host, const Graph& pattern, const HeuristicParams& params,
                                  std::uint64_t seed, const Graph* warm_start = nullptr);

/// Greedy baseline: insert host edges in seeded random order keeping F-freeness.
FreeSubgraph greedy_f_free(const Graph& host, const Graph& pattern, std::uint64_t seed);

// ---------------------------------------------------------------------------

enum class PredictTheorem { automatic, kst, multigraph, general, maxdeg, smallp, semibounded };

PredictTheorem parse_predict_theorem(const std::string& text);
std::string to_string(PredictTheorem t);

struct ExponentPrediction {
    bool available = false;
    PredictTheorem theorem = PredictTheorem::automatic;
    std::string reason;  // why no prediction, when unavailable

    /// Exponents x in p = n^x.
    std::optional<Rational> p_lower_threshold;  // plateau start
    std::optional<Rational> p_upper_threshold;  // plateau end / start of the dense range
    std::optional<Rational> plateau_exponent;   // ex ~ n^{plateau_exponent}
    /// Where the flat upper bound is proven to extend (may end before p_upper).
    std::optional<Rational> plateau_proven_until;
    std::optional<Rational> dense_p_exponent;
    std::optional<Rational> dense_n_exponent;
    std::string sparse = "(1+o(1))p*C(n,2)";
    bool degenerate = false;

    std::optional<SemiBoundedTriple> triple;
    std::map<std::string, std::string> provenance;  // piece -> source
    std::vector<std::string> assumptions;
};

/// Exponent prediction for F. `automatic` tries the complete bipartite
/// formula, then F_M form, then the exact-degree balanced family, then the
/// semi-bounded a(F)/b(F) bounds. Never fabricates: returns available=false
/// with a reason when no hypothesis set can be verified.
ExponentPrediction predict(const Graph& f, std::optional<SemiBoundedTriple> triple = std::nullopt,
                           PredictTheorem theorem = PredictTheorem::automatic);

/// K_{r,t} with r <= t detected as (r, t).
std::optional<std::pair<int, int>> complete_bipartite_shape(const Graph& f);

/// Whether ex(n, K_{r,t}) = Theta(n^{2-1/r}) is a known result (r = 2, r = 3,
/// or t > (r-1)!), as opposed to an assumption.
bool kst_extremal_known(int r, int t);

// ---------------------------------------------------------------------------

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
    double slope_stderr = 0;  // 0 for two points
};

/// Least-squares line through (x, y); throws std::domain_error with fewer
/// than two distinct x.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

enum class SimMethod { automatic, exact, heuristic };

SimMethod parse_sim_method(const std::string& text);
std::string to_string(SimMethod m);

struct SweepConfig {
    Graph pattern;
    std::vector<int> n_list;
    std::vector<double> p_exponents;  // p = n^x
    int replicates = 5;
    SimMethod method = SimMethod::automatic;
    std::uint64_t seed = 1;
    HeuristicParams heuristic;
    ExactOptions exact;
    /// auto uses exact when e(G) is at most this.
    int exact_edge_limit = 40;
    /// Warm-start each p from the previous (smaller) p of the same replicate.
    bool coupled = true;
    int threads = 0;  // 0: hardware concurrency
    bool record_timing = false;
};

struct SweepRow {
    int n = 0;
    double p_exp = 0;
    double p = 0;
    std::uint64_t seed = 0;
    int replicate = 0;
    int host_edges = 0;
    int ex_est = -1;  // -1 when the cell failed
    SimMethod method = SimMethod::heuristic;
    double time_ms = 0;
    std::string error;
};

struct SweepCell {
    int n = 0;
    double p_exp = 0;
    double p = 0;
    double median = 0;
    double min = 0;
    double max = 0;
    int ok = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ordered by (n, p_exp, replicate)
    std::vector<SweepCell> cells;
    /// Fit of log median ex against log n, one per p exponent (needs >= 2 n).
    std::map<double, SlopeFit> slope_in_n;
    /// Fit of log median ex against log p, one per n (needs >= 2 p).
    std::map<int, SlopeFit> slope_in_p;
};

/// Seed of replicate `rep` at size n; independent of p so hosts nest in p.
std::uint64_t replicate_seed(std::uint64_t base, int n, int rep);

SweepResult sweep(const SweepConfig& config);

/// Median of a nonempty list.
double median(std::vector<double> values);

}  // namespace rturan
