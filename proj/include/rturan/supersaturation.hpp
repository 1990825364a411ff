#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rturan/embedding.hpp"
#include "rturan/graph.hpp"
#include "rturan/semibounded.hpp"

namespace rturan {

/// Hashable identity of a partial embedding: domain mask followed by the
/// images of the domain vertices in increasing pattern order.
struct PartialKey {
    std::vector<std::uint32_t> words;
    bool operator==(const PartialKey&) const = default;
};

struct PartialKeyHash {
    std::size_t operator()(const PartialKey& k) const noexcept;
};

PartialKey make_key(std::span<const int> map, VertexMask domain);
PartialKey make_key(const PartialEmbedding& psi);

/// A family of embeddings of F into G in which every partial embedding on
/// an edge-carrying nu is the restriction of at most D(nu) members.
class DGoodFamily {
public:
    DGoodFamily(const Graph& pattern, const SemiBoundedTriple& triple, const Graph& host, BalancingContext ctx);

    const Graph& pattern() const noexcept { return pattern_; }
    const Graph& host() const noexcept { return host_; }
    const SemiBoundedTriple& triple() const noexcept { return triple_; }
    const BalancingContext& context() const noexcept { return ctx_; }
    const std::vector<Embedding>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }

    /// Subsets with e(F[nu]) >= 1, the only ones with a finite cap.
    const std::vector<VertexMask>& capped_subsets() const noexcept { return capped_; }
    /// D(nu) as a real number (infinite for edgeless nu).
    double cap(VertexMask nu) const;
    /// Largest admissible integer degree, floor(D(nu)) with a 1e-9 relative
    /// guard against rounding; -1 when D(nu) < 1.
    long long integer_cap(VertexMask nu) const;

    /// First capped nu whose cap the insertion of `map` would break, if any.
    std::optional<VertexMask> blocking_subset(std::span<const int> map) const;
    /// Every capped nu whose cap the insertion of `map` would break.
    std::vector<VertexMask> blocking_subsets(std::span<const int> map) const;

    /// Adds `map` if it keeps the family D-good; returns whether it was added.
    bool try_insert(std::span<const int> map);

    int degree(const PartialEmbedding& psi) const;
    /// Stored degree counts of every capped nu.
    const std::unordered_map<PartialKey, int, PartialKeyHash>& partial_index() const noexcept { return index_; }

private:
    Graph pattern_;
    Graph host_;
    SemiBoundedTriple triple_;
    BalancingContext ctx_;
    std::vector<Embedding> members_;
    std::vector<VertexMask> capped_;
    std::unordered_map<VertexMask, double> caps_;
    std::unordered_map<VertexMask, long long> integer_caps_;
    std::unordered_map<PartialKey, int, PartialKeyHash> index_;
};

struct BuildStats {
    std::size_t candidates = 0;
    std::size_t accepted = 0;
    /// For each capped nu, the number of rejected candidates it blocked.
    std::map<VertexMask, std::size_t> binding;
};

/// Greedy maximal D-good family over the seeded embedding order. Every
/// enumerated embedding is offered once; caps only tighten as the family
/// grows, so the result is maximal.
DGoodFamily build_dgood(const Graph& pattern, const SemiBoundedTriple& triple, const Graph& host,
                        const BalancingContext& ctx, std::uint64_t order_seed, BuildStats* stats = nullptr);

/// Restriction count of psi among the members.
int degree_of_partial(const DGoodFamily& family, const PartialEmbedding& psi);

struct SaturatedPartial {
    VertexMask nu = 0;
    PartialEmbedding psi;
    int degree = 0;
};

/// Partial embeddings with degree >= D(nu)/2, grouped by nu (increasing).
std::vector<SaturatedPartial> saturated_partials(const DGoodFamily& family);

struct DoubleCountingReport {
    bool holds = true;
    /// Largest observed xi_nu * D(nu) / (2 |Phi|); at most 1 when (a) holds.
    double worst_a_ratio = 0;
    /// Largest observed xi_{psi',nu} * D(nu) / (2 D(nu')); at most 1 when (b) holds.
    double worst_b_ratio = 0;
    std::size_t checked_pairs = 0;
};

/// Checks xi_nu <= 2|Phi|/D(nu) and xi_{psi',nu} <= 2 D(nu')/D(nu).
DoubleCountingReport check_double_counting(const DGoodFamily& family);

/// Recomputes all restriction counts from the member list and compares them
/// with the caps; independent of the incremental index.
bool recount_is_dgood(const DGoodFamily& family);

/// An embedding outside the family that could still be inserted, if any.
std::optional<Embedding> find_insertable(const DGoodFamily& family);

struct EdgeHypergraph {
    int vertex_count = 0;  // |E(G)|
    /// Hyperedges as sorted host edge indices (into host.edges()).
    std::vector<std::vector<int>> hyperedges;
    /// Members sharing each hyperedge's edge image.
    std::vector<int> multiplicity;
};

EdgeHypergraph to_edge_hypergraph(const DGoodFamily& family);

struct DeltaRow {
    int i = 0;
    long long delta = 0;
    double bound = 0;    // gamma |H|/m (tau/m)^{i-1}
    bool holds = true;
    double shape = 0;    // q^{e(F)-1} n^{v(F)-2} X^{i-1} with X = tau/(q n^2)
    std::vector<int> worst_sigma;
};

struct DeltaAudit {
    std::vector<DeltaRow> rows;
    double tau = 1;
    double gamma = 1;
    /// Smallest gamma making every Delta_i inequality hold.
    double smallest_gamma = 0;
    /// Smallest C with Delta_i <= C q^{e(F)-1} n^{v(F)-2} X^{i-1} for all i.
    double smallest_C = 0;
    bool sampled = false;
};

struct AuditOptions {
    double gamma = 1;
    /// Upper bound on enumerated (hyperedge, i-subset) pairs for the exact audit.
    std::size_t budget = 20'000'000;
    /// When the exact audit is over budget, sample sigma instead of failing;
    /// sampled Delta_i are lower bounds.
    bool allow_sampling = false;
    std::uint64_t seed = 0;
};

/// Max i-degrees of the hypergraph against the balancedness bound. Throws
/// ResourceError when over budget without sampling.
DeltaAudit delta_audit(const EdgeHypergraph& h, const DGoodFamily& family, const AuditOptions& options = {});

/// deg_H(sigma) <= sum over sigma-embeddings psi of deg_Phi(psi), for every
/// sigma contained in some hyperedge with |sigma| <= max_size.
bool verify_sigma_degree_bound(const EdgeHypergraph& h, const DGoodFamily& family, int max_size);

}  // namespace rturan
