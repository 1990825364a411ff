#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rturan/graph.hpp"

namespace rturan {

/// Injective edge-preserving map pattern -> host; map[v] is the image of v.
using Embedding = std::vector<int>;

/// Restriction of a map to `domain`; images outside the domain are -1.
struct PartialEmbedding {
    VertexMask domain = 0;
    std::vector<int> images;
};

bool is_embedding(const Graph& pattern, const Graph& host, std::span<const int> map);
/// Injective on the domain and preserves every edge of pattern[domain].
bool is_partial_embedding(const Graph& pattern, const Graph& host, const PartialEmbedding& psi);
PartialEmbedding restrict_embedding(std::span<const int> map, VertexMask domain);

/// Backtracking subgraph-embedding search of a pattern into a (possibly
/// mutating) host adjacency. Pattern vertices are placed highest degree
/// first, each next vertex being the one with most already-placed
/// neighbours. With `shuffled`, host candidates are tried in an order fixed
/// by `order_seed`; otherwise in increasing index.
///
/// The host is held by reference: callers that edit it between searches
/// (the F-free heuristics) see their edits.
class EmbeddingSearch {
public:
    EmbeddingSearch(const Graph& pattern, const AdjacencyBits& host, std::uint64_t order_seed = 0,
                    bool shuffled = true);

    /// Calls fn(map) per embedding until fn returns false. Returns the number visited.
    template <typename Fn>
    std::size_t for_each(Fn&& fn);

    /// Embeddings whose edge image contains host edge {u,v}; each exactly once.
    template <typename Fn>
    std::size_t for_each_through_edge(int u, int v, Fn&& fn);

    bool exists();
    bool exists_through_edge(int u, int v);

    const Graph& pattern() const noexcept { return *pattern_; }

private:
    struct Plan {
        std::vector<int> order;                    // pattern vertex at each depth
        std::vector<std::vector<int>> back_links;  // placed-neighbour depths per depth
    };

    Plan make_plan(std::vector<int> prefix) const;

    template <typename Fn>
    bool extend(const Plan& plan, std::size_t depth, Fn& fn, std::size_t& visited);

    void candidates(const Plan& plan, std::size_t depth, std::vector<int>& out) const;

    const Graph* pattern_;
    const AdjacencyBits* host_;
    bool shuffled_;
    std::vector<int> rank_;  // host vertex -> position in the seeded order
    Plan full_plan_;
    std::vector<Plan> edge_plans_;  // 2 per pattern edge: (a,b) and (b,a) prefixes
    std::vector<int> image_;        // indexed by pattern vertex
    std::vector<std::uint64_t> used_;
    std::vector<std::vector<int>> scratch_;
};

struct EnumerationOptions {
    std::optional<std::size_t> cap;
    std::uint64_t order_seed = 0;
};

std::vector<Embedding> enumerate_embeddings(const Graph& pattern, const Graph& host,
                                            const EnumerationOptions& options = {});
std::size_t count_embeddings(const Graph& pattern, const Graph& host);
bool contains_copy(const Graph& pattern, const Graph& host);

// ---------------------------------------------------------------------------

template <typename Fn>
bool EmbeddingSearch::extend(const Plan& plan, std::size_t depth, Fn& fn, std::size_t& visited) {
    if (depth == plan.order.size()) {
        ++visited;
        return fn(std::span<const int>(image_));
    }
    auto& cands = scratch_[depth];
    candidates(plan, depth, cands);
    const int w = plan.order[depth];
    for (int h : cands) {
        image_[static_cast<std::size_t>(w)] = h;
        used_[static_cast<std::size_t>(h >> 6)] |= std::uint64_t{1} << (h & 63);
        bool keep_going = extend(plan, depth + 1, fn, visited);
        used_[static_cast<std::size_t>(h >> 6)] &= ~(std::uint64_t{1} << (h & 63));
        image_[static_cast<std::size_t>(w)] = -1;
        if (!keep_going) return false;
    }
    return true;
}

template <typename Fn>
std::size_t EmbeddingSearch::for_each(Fn&& fn) {
    std::size_t visited = 0;
    if (pattern_->vertex_count() > host_->vertex_count()) return 0;
    extend(full_plan_, 0, fn, visited);
    return visited;
}

template <typename Fn>
std::size_t EmbeddingSearch::for_each_through_edge(int u, int v, Fn&& fn) {
    std::size_t visited = 0;
    if (!host_->test(u, v)) return 0;
    const auto& edges = pattern_->edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (int orientation = 0; orientation < 2; ++orientation) {
            const Plan& plan = edge_plans_[2 * i + static_cast<std::size_t>(orientation)];
            int a = plan.order[0], b = plan.order[1];
            image_[static_cast<std::size_t>(a)] = u;
            image_[static_cast<std::size_t>(b)] = v;
            used_[static_cast<std::size_t>(u >> 6)] |= std::uint64_t{1} << (u & 63);
            used_[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
            bool keep_going = extend(plan, 2, fn, visited);
            used_[static_cast<std::size_t>(u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
            used_[static_cast<std::size_t>(v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
            image_[static_cast<std::size_t>(a)] = -1;
            image_[static_cast<std::size_t>(b)] = -1;
            if (!keep_going) return visited;
        }
    }
    return visited;
}

}  // namespace rturan
