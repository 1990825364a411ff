#include "rturan/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace rturan {

std::vector<int> mask_to_vertices(VertexMask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(m)));
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

VertexMask vertices_to_mask(std::span<const int> vs) {
    VertexMask m = 0;
    for (int v : vs) {
        if (v < 0 || v >= kMaskVertexLimit) {
            throw std::domain_error("vertex " + std::to_string(v) + " outside mask range");
        }
        m |= bit(v);
    }
    return m;
}

AdjacencyBits::AdjacencyBits(int n)
    : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>((n + 63) / 64), 0) {}

int AdjacencyBits::degree(int u) const noexcept {
    int d = 0;
    for (std::uint64_t w : row(u)) d += std::popcount(w);
    return d;
}

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    build();
}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                        " has an endpoint outside [0," + std::to_string(n) + ")");
        }
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    build();
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    std::vector<Edge> list;
    for (auto [u, v] : edges) list.push_back({u, v});
    *this = Graph(n, list);
}

void Graph::build() {
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    bits_ = AdjacencyBits(n_);
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
        bits_.set(e.u, e.v);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
    masks_.clear();
    if (n_ <= kMaskVertexLimit) {
        masks_.assign(static_cast<std::size_t>(n_), 0);
        for (const Edge& e : edges_) {
            masks_[static_cast<std::size_t>(e.u)] |= bit(e.v);
            masks_[static_cast<std::size_t>(e.v)] |= bit(e.u);
        }
    }
}

int Graph::max_degree() const noexcept {
    int best = 0;
    for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
    return best;
}

int Graph::edges_within(VertexMask nu) const {
    int twice = 0;
    for (VertexMask m = nu; m != 0; m &= m - 1) {
        twice += popcount(masks_[static_cast<std::size_t>(std::countr_zero(m))] & nu);
    }
    return twice / 2;
}

int Graph::min_degree_within(VertexMask nu) const {
    if (nu == 0) return 0;
    int best = n_;
    for (VertexMask m = nu; m != 0; m &= m - 1) {
        best = std::min(best, popcount(masks_[static_cast<std::size_t>(std::countr_zero(m))] & nu));
    }
    return best;
}

void require_mask_graph(const Graph& g, std::string_view who) {
    if (!g.fits_mask()) {
        throw std::invalid_argument(std::string(who) + ": graph has " + std::to_string(g.vertex_count()) +
                                    " vertices, mask routines support at most 64");
    }
}

void require_pattern_size(const Graph& g, std::string_view who) {
    if (g.vertex_count() > kPatternVertexLimit) {
        throw std::domain_error(std::string(who) + ": pattern has " + std::to_string(g.vertex_count()) +
                                " vertices, exhaustive sweeps support at most " +
                                std::to_string(kPatternVertexLimit));
    }
}

// ---------------------------------------------------------------------------

Multigraph::Multigraph(int n, std::span<const MultiEdge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::map<std::pair<int, int>, int> merged;
    for (MultiEdge e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw std::invalid_argument("multigraph edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                        " has an endpoint outside [0," + std::to_string(n) + ")");
        }
        if (e.u == e.v) throw std::domain_error("multigraph loop at vertex " + std::to_string(e.u));
        if (e.multiplicity < 1) throw std::invalid_argument("multiplicity must be at least 1");
        merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.multiplicity;
    }
    for (auto [key, mult] : merged) {
        edges_.push_back({key.first, key.second, mult});
        edge_count_ += mult;
    }
}

Multigraph::Multigraph(int n, std::initializer_list<MultiEdge> edges)
    : Multigraph(n, std::span<const MultiEdge>(edges.begin(), edges.size())) {}

int Multigraph::multiplicity(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (const auto& e : edges_) {
        if (e.u == u && e.v == v) return e.multiplicity;
    }
    return 0;
}

int Multigraph::edges_within(VertexMask mu) const {
    int total = 0;
    for (const auto& e : edges_) {
        if ((mu & bit(e.u)) && (mu & bit(e.v))) total += e.multiplicity;
    }
    return total;
}

// ---------------------------------------------------------------------------

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    std::string current;
    bool in_comment = false;
    auto flush = [&] {
        if (!current.empty()) tokens.push_back({current, line});
        current.clear();
    };
    for (char c : text) {
        if (c == '\n') {
            flush();
            in_comment = false;
            ++line;
            continue;
        }
        if (in_comment) continue;
        if (c == '#') {
            flush();
            in_comment = true;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == ';' || c == ',') {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    return tokens;
}

int parse_int(std::string_view s, int line, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(line, "malformed " + std::string(what) + " '" + std::string(s) + "'");
    }
    return value;
}

int parse_header(const std::vector<Token>& tokens) {
    if (tokens.empty()) throw ParseError(1, "missing 'n=<int>' header");
    const Token& head = tokens.front();
    if (head.text.rfind("n=", 0) != 0) throw ParseError(head.line, "expected 'n=<int>', got '" + head.text + "'");
    int n = parse_int(std::string_view(head.text).substr(2), head.line, "vertex count");
    if (n < 0) throw ParseError(head.line, "negative vertex count");
    return n;
}

struct ParsedPair {
    int u;
    int v;
    int mult;
};

ParsedPair parse_pair(const Token& tok, int n, bool allow_mult) {
    std::string_view s = tok.text;
    int mult = 1;
    if (auto x = s.find('x'); x != std::string_view::npos) {
        if (!allow_mult) throw ParseError(tok.line, "multiplicity suffix not allowed in simple graph '" + tok.text + "'");
        mult = parse_int(s.substr(x + 1), tok.line, "multiplicity");
        if (mult < 1) throw ParseError(tok.line, "multiplicity must be at least 1 in '" + tok.text + "'");
        s = s.substr(0, x);
    }
    auto dash = s.find('-');
    if (dash == std::string_view::npos || dash == 0) throw ParseError(tok.line, "malformed edge '" + tok.text + "'");
    int u = parse_int(s.substr(0, dash), tok.line, "vertex");
    int v = parse_int(s.substr(dash + 1), tok.line, "vertex");
    if (u < 0 || v < 0 || u >= n || v >= n) {
        throw ParseError(tok.line, "vertex index out of range in '" + tok.text + "' (n=" + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(tok.line, "self-loop '" + tok.text + "'");
    return {u, v, mult};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Graph parse_graph(std::string_view text) {
    auto tokens = tokenize(text);
    int n = parse_header(tokens);
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto p = parse_pair(tokens[i], n, false);
        edges.push_back({p.u, p.v});
    }
    return Graph(n, edges);
}

Multigraph parse_multigraph(std::string_view text) {
    auto tokens = tokenize(text);
    int n = parse_header(tokens);
    std::vector<MultiEdge> edges;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto p = parse_pair(tokens[i], n, true);
        edges.push_back({p.u, p.v, p.mult});
    }
    return Multigraph(n, edges);
}

std::string format_graph(const Graph& g) {
    std::string out = "n=" + std::to_string(g.vertex_count()) + "\n";
    bool first = true;
    for (const Edge& e : g.edges()) {
        if (!first) out += ' ';
        out += std::to_string(e.u) + "-" + std::to_string(e.v);
        first = false;
    }
    out += '\n';
    return out;
}

std::string format_multigraph(const Multigraph& m) {
    std::string out = "n=" + std::to_string(m.vertex_count()) + "\n";
    bool first = true;
    for (const MultiEdge& e : m.edges()) {
        if (!first) out += ' ';
        out += std::to_string(e.u) + "-" + std::to_string(e.v);
        if (e.multiplicity != 1) out += "x" + std::to_string(e.multiplicity);
        first = false;
    }
    out += '\n';
    return out;
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_file(path)); }
Multigraph read_multigraph_file(const std::string& path) { return parse_multigraph(read_file(path)); }

// ---------------------------------------------------------------------------

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> nu) {
    std::vector<int> vertices(nu.begin(), nu.end());
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count()) {
            throw std::domain_error("induced_subgraph: vertex " + std::to_string(v) + " out of range");
        }
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) index[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        int a = index[static_cast<std::size_t>(e.u)];
        int b = index[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) edges.push_back({a, b});
    }
    InducedSubgraph out;
    out.graph = Graph(static_cast<int>(vertices.size()), edges);
    out.vertices = std::move(vertices);
    out.edge_count = out.graph.edge_count();
    if (out.graph.vertex_count() > 0) {
        int best = out.graph.vertex_count();
        for (int v = 0; v < out.graph.vertex_count(); ++v) best = std::min(best, out.graph.degree(v));
        out.min_degree = best;
    }
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, VertexMask nu) {
    if (g.vertex_count() < kMaskVertexLimit && (nu & ~g.vertex_mask()) != 0) {
        throw std::domain_error("induced_subgraph: subset contains out-of-range vertices");
    }
    auto vs = mask_to_vertices(nu);
    return induced_subgraph(g, std::span<const int>(vs));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (int w : g.neighbors(comp[i])) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool has_cycle(const Graph& g) {
    // A forest has exactly n - c edges.
    return g.edge_count() > g.vertex_count() - static_cast<int>(connected_components(g).size());
}

bool has_odd_cycle(const Graph& g) {
    std::vector<int> layer(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (layer[static_cast<std::size_t>(s)] >= 0) continue;
        layer[static_cast<std::size_t>(s)] = 0;
        std::queue<int> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop();
            for (int w : g.neighbors(u)) {
                if (layer[static_cast<std::size_t>(w)] < 0) {
                    layer[static_cast<std::size_t>(w)] = layer[static_cast<std::size_t>(u)] + 1;
                    frontier.push(w);
                } else if (layer[static_cast<std::size_t>(w)] == layer[static_cast<std::size_t>(u)]) {
                    return true;
                }
            }
        }
    }
    return false;
}

namespace {

// Proper coloring of each component with its smallest vertex on side S.
// Returns false on an odd cycle.
bool component_colorings(const Graph& g, std::vector<std::vector<int>>& comps, std::vector<VertexMask>& s_sides,
                         std::vector<VertexMask>& t_sides) {
    comps = connected_components(g);
    if (comps.size() > 24) throw std::domain_error("bipartitions: too many components to enumerate");
    std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), -1);
    for (const auto& comp : comps) {
        VertexMask s = 0, t = 0;
        color[static_cast<std::size_t>(comp.front())] = 0;
        std::vector<int> stack{comp.front()};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u)) {
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(u)]) {
                    return false;
                }
            }
        }
        for (int v : comp) (color[static_cast<std::size_t>(v)] == 0 ? s : t) |= bit(v);
        s_sides.push_back(s);
        t_sides.push_back(t);
    }
    return true;
}

}  // namespace

std::vector<Bipartition> all_two_colorings(const Graph& g) {
    require_mask_graph(g, "all_two_colorings");
    std::vector<std::vector<int>> comps;
    std::vector<VertexMask> s_sides, t_sides;
    if (!component_colorings(g, comps, s_sides, t_sides)) return {};
    std::vector<Bipartition> out;
    const std::size_t c = comps.size();
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << c); ++flips) {
        Bipartition b;
        for (std::size_t i = 0; i < c; ++i) {
            bool flip = (flips >> i) & 1U;
            b.S |= flip ? t_sides[i] : s_sides[i];
            b.T |= flip ? s_sides[i] : t_sides[i];
        }
        out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Bipartition> bipartitions(const Graph& g) {
    std::vector<Bipartition> out;
    for (const Bipartition& b : all_two_colorings(g)) {
        if (g.vertex_count() == 0 || (b.S & 1U)) out.push_back(b);
    }
    return out;
}

// ---------------------------------------------------------------------------

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, edges);
}

Graph complete_bipartite(int a, int b) {
    std::vector<Edge> edges;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) edges.push_back({u, a + v});
    return Graph(a + b, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::domain_error("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
    return Graph(n, edges);
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
    return Graph(n, edges);
}

Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return Graph(leaves + 1, edges);
}

}  // namespace rturan
