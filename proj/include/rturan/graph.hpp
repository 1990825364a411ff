#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rturan {

/// Vertex subset of a graph with at most 64 vertices, bit i = vertex i.
using VertexMask = std::uint64_t;

/// Graphs handled through VertexMask must fit in one word.
inline constexpr int kMaskVertexLimit = 64;

/// Exhaustive subset sweeps over patterns are refused beyond this size.
inline constexpr int kPatternVertexLimit = 20;

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Raised when an exact computation would exceed its configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int popcount(VertexMask m) noexcept { return std::popcount(m); }
inline VertexMask bit(int v) noexcept { return VertexMask{1} << v; }
inline VertexMask full_mask(int n) noexcept {
    return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}
std::vector<int> mask_to_vertices(VertexMask m);
VertexMask vertices_to_mask(std::span<const int> vs);

struct Edge {
    int u = 0;
    int v = 0;
    auto operator<=>(const Edge&) const = default;
};

/// Mutable dense bit-matrix adjacency; the working representation for hosts.
class AdjacencyBits {
public:
    AdjacencyBits() = default;
    explicit AdjacencyBits(int n);

    int vertex_count() const noexcept { return n_; }
    int words() const noexcept { return words_; }

    bool test(int u, int v) const noexcept {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
    }
    void set(int u, int v) noexcept {
        bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
        bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    }
    void reset(int u, int v) noexcept {
        bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
        bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
    }
    std::span<const std::uint64_t> row(int u) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
    }
    int degree(int u) const noexcept;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Finite simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    /// Validates endpoints and self-loops; duplicate edges collapse.
    Graph(int n, std::span<const Edge> edges);
    Graph(int n, std::initializer_list<std::pair<int, int>> edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
    int max_degree() const noexcept;
    bool has_edge(int u, int v) const noexcept { return bits_.test(u, v); }
    const AdjacencyBits& bits() const noexcept { return bits_; }

    /// Only valid when vertex_count() <= 64.
    VertexMask neighbor_mask(int v) const { return masks_[static_cast<std::size_t>(v)]; }
    VertexMask vertex_mask() const noexcept { return full_mask(n_); }
    bool fits_mask() const noexcept { return n_ <= kMaskVertexLimit; }

    /// Number of edges with both ends in `nu`.
    int edges_within(VertexMask nu) const;
    /// Degree of v inside F[nu] (v need not belong to nu).
    int degree_within(int v, VertexMask nu) const { return popcount(masks_[static_cast<std::size_t>(v)] & nu); }
    /// Minimum degree of F[nu]; 0 for the empty set.
    int min_degree_within(VertexMask nu) const;

    bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    void build();

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<VertexMask> masks_;
    AdjacencyBits bits_;
};

/// Throws std::invalid_argument when a mask-based routine gets a graph over 64 vertices.
void require_mask_graph(const Graph& g, std::string_view who);
/// Throws std::domain_error when a pattern exceeds the subset-sweep limit.
void require_pattern_size(const Graph& g, std::string_view who);

struct MultiEdge {
    int u = 0;
    int v = 0;
    int multiplicity = 1;
    auto operator<=>(const MultiEdge&) const = default;
};

/// Loopless multigraph; parallel edges recorded as multiplicities >= 1.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(int n, std::span<const MultiEdge> edges);
    Multigraph(int n, std::initializer_list<MultiEdge> edges);

    int vertex_count() const noexcept { return n_; }
    /// Total multiplicity.
    int edge_count() const noexcept { return edge_count_; }
    const std::vector<MultiEdge>& edges() const noexcept { return edges_; }
    int multiplicity(int u, int v) const;
    int edges_within(VertexMask mu) const;

    bool operator==(const Multigraph&) const = default;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<MultiEdge> edges_;
};

// Text formats: `n=<int>` then whitespace separated `u-v` tokens (multigraphs
// also accept `u-vx<mult>`). ';' and ',' count as whitespace; '#' starts a comment.
Graph parse_graph(std::string_view text);
Multigraph parse_multigraph(std::string_view text);
std::string format_graph(const Graph& g);
std::string format_multigraph(const Multigraph& m);
Graph read_graph_file(const std::string& path);
Multigraph read_multigraph_file(const std::string& path);

struct InducedSubgraph {
    Graph graph;                // reindexed 0..|nu|-1 in increasing original order
    std::vector<int> vertices;  // original label of each new vertex
    int edge_count = 0;         // e(nu)
    int min_degree = 0;         // delta(F[nu]); 0 for empty nu
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> nu);
InducedSubgraph induced_subgraph(const Graph& g, VertexMask nu);

struct Bipartition {
    VertexMask S = 0;
    VertexMask T = 0;
    auto operator<=>(const Bipartition&) const = default;
};

/// Connected components as vertex lists, ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool has_cycle(const Graph& g);
/// Breadth-first layering test, independent of the coloring enumeration.
bool has_odd_cycle(const Graph& g);

/// Every proper 2-coloring up to the global colour swap, vertex 0 always in S.
/// Empty when g has an odd cycle.
std::vector<Bipartition> bipartitions(const Graph& g);
/// Every proper 2-coloring, both orientations.
std::vector<Bipartition> all_two_colorings(const Graph& g);

// Named families used by tests, the CLI and the corpus.
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);

}  // namespace rturan
