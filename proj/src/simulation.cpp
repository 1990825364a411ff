#include "rturan/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "rturan/constructions.hpp"
#include "rturan/density.hpp"
#include "rturan/embedding.hpp"
#include "rturan/rng.hpp"

namespace rturan {

namespace {

constexpr std::uint64_t kPairStream = 0x676e70;  // "gnp"

std::uint64_t pair_counter(int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
}

void require_pattern_edges(const Graph& pattern) {
    if (pattern.edge_count() == 0) throw std::invalid_argument("pattern must have at least one edge");
}

std::vector<Edge> copy_edges(const Graph& pattern, std::span<const int> map) {
    std::vector<Edge> out;
    out.reserve(pattern.edges().size());
    for (const Edge& e : pattern.edges()) {
        out.push_back({map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]});
    }
    return out;
}

Graph graph_from_bits(const AdjacencyBits& bits, const Graph& host) {
    std::vector<Edge> edges;
    for (const Edge& e : host.edges()) {
        if (bits.test(e.u, e.v)) edges.push_back(e);
    }
    return Graph(host.vertex_count(), edges);
}

}  // namespace

double pair_uniform(std::uint64_t seed, int i, int j) { return counter_uniform(seed, kPairStream, pair_counter(i, j)); }

Graph sample_gnp(int n, double p, std::uint64_t seed) {
    if (!(p >= 0 && p <= 1)) throw std::domain_error("sample_gnp: p must lie in [0,1]");
    if (n < 0) throw std::domain_error("sample_gnp: negative n");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (pair_uniform(seed, i, j) < p) edges.push_back({i, j});
        }
    }
    return Graph(n, edges);
}

// ---------------------------------------------------------------------------
// Exact

namespace {

class BranchAndBound {
public:
    BranchAndBound(const Graph& host, const Graph& pattern, std::size_t budget)
        : host_(host),
          pattern_(pattern),
          budget_(budget),
          cur_(host.bits()),
          kept_(host.vertex_count()),
          scratch_(host.bits()),
          search_(pattern, scratch_, 0, false) {}

    FreeSubgraph run() {
        FreeSubgraph incumbent = greedy_f_free(host_, pattern_, 0);
        best_removed_ = host_.edge_count() - incumbent.edge_count;
        best_ = incumbent.witness;
        recurse(0);
        FreeSubgraph out{host_.edge_count() - best_removed_, best_, nodes_};
        return out;
    }

private:
    static constexpr int kInfeasible = std::numeric_limits<int>::max();

    // Greedy packing of copies that pairwise share only kept edges; also
    // picks the copy with fewest free edges to branch on.
    int packing_bound(std::vector<Edge>& branch) {
        scratch_ = cur_;
        int count = 0;
        std::size_t best_free = std::numeric_limits<std::size_t>::max();
        while (true) {
            std::vector<Edge> found;
            search_.for_each([&](std::span<const int> map) {
                found = copy_edges(pattern_, map);
                return false;
            });
            if (found.empty()) break;
            std::vector<Edge> free_edges;
            for (const Edge& e : found) {
                if (!kept_.test(e.u, e.v)) free_edges.push_back(e);
            }
            if (free_edges.empty()) return kInfeasible;
            if (free_edges.size() < best_free) {
                best_free = free_edges.size();
                branch = free_edges;
            }
            ++count;
            for (const Edge& e : free_edges) scratch_.reset(e.u, e.v);
        }
        return count;
    }

    void recurse(int removed) {
        if (++nodes_ > budget_) {
            throw ResourceError("max_f_free_exact: node budget " + std::to_string(budget_) +
                                " exceeded; use the heuristic method");
        }
        std::vector<Edge> branch;
        int lb = packing_bound(branch);
        if (lb == kInfeasible) return;
        if (lb == 0) {
            if (removed < best_removed_) {
                best_removed_ = removed;
                best_ = graph_from_bits(cur_, host_);
            }
            return;
        }
        if (removed + lb >= best_removed_) return;
        std::size_t i = 0;
        for (; i < branch.size(); ++i) {
            const Edge& e = branch[i];
            cur_.reset(e.u, e.v);
            recurse(removed + 1);
            cur_.set(e.u, e.v);
            kept_.set(e.u, e.v);
        }
        for (const Edge& e : branch) kept_.reset(e.u, e.v);
    }

    const Graph& host_;
    const Graph& pattern_;
    std::size_t budget_;
    AdjacencyBits cur_;
    AdjacencyBits kept_;
    AdjacencyBits scratch_;
    EmbeddingSearch search_;
    std::size_t nodes_ = 0;
    int best_removed_ = 0;
    Graph best_;
};

}  // namespace

FreeSubgraph max_f_free_exact(const Graph& host, const Graph& pattern, const ExactOptions& options) {
    require_pattern_edges(pattern);
    BranchAndBound bnb(host, pattern, options.node_budget);
    FreeSubgraph out = bnb.run();
    if (contains_copy(pattern, out.witness)) throw std::logic_error("max_f_free_exact: witness contains F");
    return out;
}

// ---------------------------------------------------------------------------
// Heuristic

namespace {

// Mutable F-free subgraph with an indexable edge list for random picks.
class WorkingSubgraph {
public:
    WorkingSubgraph(const Graph& host, const Graph& pattern)
        : host_(host),
          n_(host.vertex_count()),
          bits_(host.vertex_count()),
          pos_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1),
          search_(pattern, bits_, 0, false) {}

    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const AdjacencyBits& bits() const { return bits_; }
    std::size_t tests() const { return tests_; }

    bool has(int u, int v) const { return bits_.test(u, v); }

    // Adds {u,v} unless it closes a copy of F.
    bool try_add(int u, int v) {
        if (bits_.test(u, v)) return false;
        ++tests_;
        bits_.set(u, v);
        if (search_.exists_through_edge(u, v)) {
            bits_.reset(u, v);
            return false;
        }
        push(u, v);
        return true;
    }

    // Unchecked insertion; for restoring states known to be F-free.
    void add_unchecked(int u, int v) {
        if (bits_.test(u, v)) return;
        bits_.set(u, v);
        push(u, v);
    }

    void remove(int u, int v) {
        if (!bits_.test(u, v)) return;
        bits_.reset(u, v);
        int i = pos_[index(u, v)];
        Edge last = edges_.back();
        edges_[static_cast<std::size_t>(i)] = last;
        pos_[index(last.u, last.v)] = i;
        edges_.pop_back();
        pos_[index(u, v)] = -1;
    }

    void clear() {
        for (const Edge& e : edges_) {
            bits_.reset(e.u, e.v);
            pos_[index(e.u, e.v)] = -1;
        }
        edges_.clear();
    }

    Graph to_graph() const { return graph_from_bits(bits_, host_); }

private:
    std::size_t index(int u, int v) const {
        if (u > v) std::swap(u, v);
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
    }
    void push(int u, int v) {
        if (u > v) std::swap(u, v);
        pos_[index(u, v)] = static_cast<int>(edges_.size());
        edges_.push_back({u, v});
    }

    const Graph& host_;
    int n_;
    AdjacencyBits bits_;
    std::vector<int> pos_;
    std::vector<Edge> edges_;
    EmbeddingSearch search_;
    std::size_t tests_ = 0;
};

std::vector<Edge> shuffled_edges(const Graph& host, std::uint64_t seed) {
    std::vector<Edge> order = host.edges();
    Rng rng(seed);
    rng.shuffle(order);
    return order;
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

// Polarity graph of PG(2,q) without loops: C4-free on q^2+q+1 vertices.
Graph polarity_graph(int q) {
    std::vector<std::array<int, 3>> points;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) points.push_back({1, a, b});
    for (int a = 0; a < q; ++a) points.push_back({0, 1, a});
    points.push_back({0, 0, 1});
    std::vector<Edge> edges;
    const int count = static_cast<int>(points.size());
    for (int i = 0; i < count; ++i) {
        for (int j = i + 1; j < count; ++j) {
            const auto& x = points[static_cast<std::size_t>(i)];
            const auto& y = points[static_cast<std::size_t>(j)];
            if ((x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0) edges.push_back({i, j});
        }
    }
    return Graph(count, edges);
}

// ER_q placed on host vertices by hill climbing over the assignment,
// maximizing the ER_q edges that land on host edges. Returns those edges.
std::vector<Edge> polarity_seed(const Graph& host, int q, std::uint64_t seed) {
    Graph h = polarity_graph(q);
    const int points = h.vertex_count();
    const int n = host.vertex_count();
    auto perm = random_permutation(n, seed);
    std::vector<int> host_of(perm.begin(), perm.begin() + points);
    std::vector<int> point_of(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < points; ++a) point_of[static_cast<std::size_t>(host_of[static_cast<std::size_t>(a)])] = a;

    auto gain = [&](int a) {
        int x = host_of[static_cast<std::size_t>(a)], g = 0;
        for (int b : h.neighbors(a)) g += host.has_edge(x, host_of[static_cast<std::size_t>(b)]);
        return g;
    };
    auto local = [&](int a, int b) {
        int total = gain(a);
        if (b >= 0) {
            total += gain(b);
            if (h.has_edge(a, b)) {
                total -= host.has_edge(host_of[static_cast<std::size_t>(a)], host_of[static_cast<std::size_t>(b)]);
            }
        }
        return total;
    };
    auto swap_in = [&](int a, int y) {
        int x = host_of[static_cast<std::size_t>(a)];
        int b = point_of[static_cast<std::size_t>(y)];
        host_of[static_cast<std::size_t>(a)] = y;
        point_of[static_cast<std::size_t>(y)] = a;
        point_of[static_cast<std::size_t>(x)] = b;
        if (b >= 0) host_of[static_cast<std::size_t>(b)] = x;
    };

    Rng rng(mix64(seed ^ 0xa11a));
    const long long iterations = 300LL * points * (q + 1);
    for (long long it = 0; it < iterations; ++it) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(points)));
        int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int x = host_of[static_cast<std::size_t>(a)];
        if (x == y) continue;
        int b = point_of[static_cast<std::size_t>(y)];
        int before = local(a, b);
        swap_in(a, y);
        if (local(a, b) < before) swap_in(a, x);
    }
    std::vector<Edge> out;
    for (const Edge& e : h.edges()) {
        int x = host_of[static_cast<std::size_t>(e.u)], y = host_of[static_cast<std::size_t>(e.v)];
        if (host.has_edge(x, y)) out.push_back({std::min(x, y), std::max(x, y)});
    }
    return out;
}

void start_from(WorkingSubgraph& w, const Graph* warm_start) {
    w.clear();
    if (!warm_start) return;
    for (const Edge& e : warm_start->edges()) w.add_unchecked(e.u, e.v);
}

void fill_greedy(WorkingSubgraph& w, const std::vector<Edge>& order) {
    for (const Edge& e : order) w.try_add(e.u, e.v);
}

// Destroy-and-repair: drop a few nearby witness edges, greedily re-add host
// edges around them, keep the move unless the witness shrank.
void local_search(WorkingSubgraph& w, const Graph& host, const HeuristicParams& params, std::uint64_t seed) {
    if (w.size() == 0 || params.local_search_depth <= 0) return;
    Rng rng(seed);
    const int n = host.vertex_count();
    const long long rounds = std::min<long long>(
        20000, static_cast<long long>(params.local_search_depth) * std::max<long long>(100, static_cast<long long>(w.size())));
    std::vector<char> in_zone(static_cast<std::size_t>(n), 0);
    for (long long round = 0; round < rounds && w.size() > 0; ++round) {
        const int before = w.size();
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, params.destroy_size))));
        std::vector<Edge> removed;
        Edge first = w.edges()[rng.below(static_cast<std::uint64_t>(w.size()))];
        removed.push_back(first);
        w.remove(first.u, first.v);
        for (int t = 1; t < k; ++t) {
            int anchor = rng.below(2) ? first.u : first.v;
            std::vector<int> nbrs;
            const auto row = w.bits().row(anchor);
            for (std::size_t wi = 0; wi < row.size(); ++wi) {
                for (std::uint64_t word = row[wi]; word; word &= word - 1) {
                    nbrs.push_back(static_cast<int>(wi * 64) + std::countr_zero(word));
                }
            }
            if (nbrs.empty()) break;
            int other = nbrs[rng.below(nbrs.size())];
            removed.push_back({std::min(anchor, other), std::max(anchor, other)});
            w.remove(anchor, other);
        }
        // Zone: endpoints of removed edges and their witness neighbours.
        std::vector<int> zone;
        auto mark = [&](int v) {
            if (!in_zone[static_cast<std::size_t>(v)]) {
                in_zone[static_cast<std::size_t>(v)] = 1;
                zone.push_back(v);
            }
        };
        for (const Edge& e : removed) {
            for (int v : {e.u, e.v}) {
                mark(v);
                const auto row = w.bits().row(v);
                for (std::size_t wi = 0; wi < row.size(); ++wi) {
                    for (std::uint64_t word = row[wi]; word; word &= word - 1) {
                        mark(static_cast<int>(wi * 64) + std::countr_zero(word));
                    }
                }
            }
        }
        std::vector<Edge> candidates;
        for (std::size_t i = 0; i < zone.size(); ++i) {
            for (std::size_t j = i + 1; j < zone.size(); ++j) {
                int a = zone[i], b = zone[j];
                if (host.has_edge(a, b) && !w.has(a, b)) candidates.push_back({std::min(a, b), std::max(a, b)});
            }
        }
        for (int v : zone) in_zone[static_cast<std::size_t>(v)] = 0;
        rng.shuffle(candidates);
        std::vector<Edge> added;
        for (const Edge& e : candidates) {
            if (w.try_add(e.u, e.v)) added.push_back(e);
        }
        if (w.size() < before) {
            for (const Edge& e : added) w.remove(e.u, e.v);
            for (const Edge& e : removed) w.add_unchecked(e.u, e.v);
        }
    }
}

}  // namespace

FreeSubgraph greedy_f_free(const Graph& host, const Graph& pattern, std::uint64_t seed) {
    require_pattern_edges(pattern);
    WorkingSubgraph w(host, pattern);
    fill_greedy(w, shuffled_edges(host, seed));
    return {w.size(), w.to_graph(), w.tests()};
}

FreeSubgraph max_f_free_heuristic(const Graph& host, const Graph& pattern, const HeuristicParams& params,
                                  std::uint64_t seed, const Graph* warm_start) {
    require_pattern_edges(pattern);
    if (warm_start && warm_start->vertex_count() != host.vertex_count()) {
        throw std::invalid_argument("warm start has a different vertex count");
    }
    WorkingSubgraph w(host, pattern);
    std::size_t tests = 0;
    int best_size = -1;
    std::vector<Edge> best_edges;
    auto keep_best = [&] {
        if (w.size() > best_size) {
            best_size = w.size();
            best_edges = w.edges();
        }
    };

    const int restarts = std::max(1, params.restarts);
    for (int r = 0; r < restarts; ++r) {
        start_from(w, warm_start);
        fill_greedy(w, shuffled_edges(host, mix64(seed + 0x100 + static_cast<std::uint64_t>(r))));
        keep_best();
    }
    if (params.structured_seeds && host.vertex_count() >= 7 && contains_copy(cycle_graph(4), pattern)) {
        for (int q = 2; q * q + q + 1 <= host.vertex_count(); ++q) {
            if (!is_prime(q)) continue;
            // from scratch: warm-start edges would block most of the seed
            start_from(w, nullptr);
            std::uint64_t s = mix64(seed + 0x200 + static_cast<std::uint64_t>(q));
            for (const Edge& e : polarity_seed(host, q, s)) w.try_add(e.u, e.v);
            fill_greedy(w, shuffled_edges(host, mix64(s)));
            keep_best();
        }
    }

    start_from(w, nullptr);
    for (const Edge& e : best_edges) w.add_unchecked(e.u, e.v);
    local_search(w, host, params, mix64(seed + 0x300));
    tests += w.tests();

    FreeSubgraph out{w.size(), w.to_graph(), tests};
    return out;
}

// ---------------------------------------------------------------------------
// Predictions

PredictTheorem parse_predict_theorem(const std::string& text) {
    if (text == "auto") return PredictTheorem::automatic;
    if (text == "kst") return PredictTheorem::kst;
    if (text == "multigraph") return PredictTheorem::multigraph;
    if (text == "general") return PredictTheorem::general;
    if (text == "maxdeg") return PredictTheorem::maxdeg;
    if (text == "smallp") return PredictTheorem::smallp;
    if (text == "semibounded") return PredictTheorem::semibounded;
    throw std::invalid_argument("unknown theorem '" + text +
                                "' (expected auto|kst|multigraph|general|maxdeg|smallp|semibounded)");
}

std::string to_string(PredictTheorem t) {
    switch (t) {
        case PredictTheorem::automatic: return "auto";
        case PredictTheorem::kst: return "kst";
        case PredictTheorem::multigraph: return "multigraph";
        case PredictTheorem::general: return "general";
        case PredictTheorem::maxdeg: return "maxdeg";
        case PredictTheorem::smallp: return "smallp";
        case PredictTheorem::semibounded: return "semibounded";
    }
    return "?";
}

std::optional<std::pair<int, int>> complete_bipartite_shape(const Graph& f) {
    if (f.vertex_count() < 2 || !is_connected(f) || has_odd_cycle(f)) return std::nullopt;
    auto parts = bipartitions(f);
    if (parts.size() != 1) return std::nullopt;
    int a = popcount(parts[0].S), b = popcount(parts[0].T);
    if (f.edge_count() != a * b) return std::nullopt;
    return std::make_pair(std::min(a, b), std::max(a, b));
}

bool kst_extremal_known(int r, int t) {
    if (r < 1 || t < r) return false;
    if (r <= 3) return true;
    long long fact = 1;
    for (int i = 2; i <= r - 1; ++i) fact *= i;
    return t > fact;
}

namespace {

Rational frac(long long p, long long q) { return Rational(p, q); }

// Smallest t with ex(n,K_{r,t}) = Theta(n^{2-1/r}) known.
int known_t(int r) {
    if (r <= 3) return r;
    long long fact = 1;
    for (int i = 2; i <= r - 1; ++i) fact *= i;
    return static_cast<int>(fact + 1);
}

void finish(ExponentPrediction& p) {
    p.available = true;
    if (p.p_lower_threshold && p.p_upper_threshold && *p.p_lower_threshold > *p.p_upper_threshold) {
        p.degenerate = true;
    }
    p.provenance.emplace("sparse", "first-moment deletion below the plateau start");
}

ExponentPrediction unavailable(PredictTheorem t, std::string reason) {
    ExponentPrediction p;
    p.theorem = t;
    p.reason = std::move(reason);
    return p;
}

void set_dense(ExponentPrediction& p, int r) {
    p.dense_p_exponent = Rational(1) - frac(1, r);
    p.dense_n_exponent = Rational(2) - frac(1, r);
}

ExponentPrediction predict_kst(const Graph& f) {
    auto shape = complete_bipartite_shape(f);
    if (!shape || shape->first < 2) return unavailable(PredictTheorem::kst, "F is not K_{r,t} with 2 <= r <= t");
    auto [r, t] = *shape;
    ExponentPrediction p;
    p.theorem = PredictTheorem::kst;
    const long long d = static_cast<long long>(r) * t - 1;
    p.p_lower_threshold = -frac(r + t - 2, d);
    p.p_upper_threshold = -frac(r - 1, d);
    p.plateau_exponent = Rational(2) - frac(r + t - 2, d);
    p.plateau_proven_until = p.p_upper_threshold;
    set_dense(p, r);
    p.triple = select_triple(f);
    const std::string src = "complete bipartite K_{" + std::to_string(r) + "," + std::to_string(t) + "}";
    p.provenance = {{"p_lower_threshold", src + ": -(r+t-2)/(rt-1)"},
                    {"p_upper_threshold", src + ": -(r-1)/(rt-1)"},
                    {"plateau_exponent", src + ": 2-(r+t-2)/(rt-1)"},
                    {"dense", src + ": p^{1-1/r} n^{2-1/r}"}};
    if (kst_extremal_known(r, t)) {
        p.assumptions.push_back("ex(n,K_{r,t}) = Theta(n^{2-1/r}) holds (known for r<=3 or t>(r-1)!)");
    } else {
        p.assumptions.push_back("ASSUMED: ex(n,K_{" + std::to_string(r) + "," + std::to_string(t) +
                                "}) = Theta(n^{2-1/r}) (open for these r,t)");
    }
    finish(p);
    return p;
}

std::vector<SemiBoundedTriple> candidate_triples(const Graph& f, std::optional<SemiBoundedTriple> given, int r) {
    if (given) return {*given};
    return find_triples(f, r);
}

ExponentPrediction predict_multigraph(const Graph& f, std::optional<SemiBoundedTriple> given) {
    if (has_odd_cycle(f) || !f.fits_mask()) return unavailable(PredictTheorem::multigraph, "F is not bipartite");
    for (const auto& t : candidate_triples(f, given, 2)) {
        if (!triple_violation(f, t).empty()) continue;
        bool all_two = true;
        for (int v : mask_to_vertices(t.T)) {
            if (v != t.v_star && f.degree(v) != 2) all_two = false;
        }
        if (!all_two || popcount(t.T) < 2) continue;
        Multigraph m = multigraph_from_apex_graph(f, t);
        if (m.edge_count() < 1) continue;
        auto bal = multigraph_balanced(m);
        if (!bal.balanced) continue;
        const long long v = m.vertex_count(), e = m.edge_count();
        ExponentPrediction p;
        p.theorem = PredictTheorem::multigraph;
        p.triple = t;
        p.p_lower_threshold = -frac(v + e - 1, v + 2 * e - 1);
        p.p_upper_threshold = -frac(v - 1, v + 2 * e - 1);
        p.plateau_exponent = Rational(2) - frac(v + e - 1, v + 2 * e - 1);
        p.plateau_proven_until = p.p_upper_threshold;
        set_dense(p, 2);
        const std::string src = "subdivided balanced multigraph F_M (v(M)=" + std::to_string(v) +
                                ", e(M)=" + std::to_string(e) + ")";
        p.provenance = {{"p_lower_threshold", src + ": -(v+e-1)/(v+2e-1)"},
                        {"p_upper_threshold", src + ": -(v-1)/(v+2e-1)"},
                        {"plateau_exponent", src + ": 2-(v+e-1)/(v+2e-1)"},
                        {"dense", src + ": p^{1/2} n^{3/2}"}};
        finish(p);
        return p;
    }
    return unavailable(PredictTheorem::multigraph, "F is not F_M for a balanced multigraph M");
}

ExponentPrediction predict_general(const Graph& f, std::optional<SemiBoundedTriple> given) {
    if (has_odd_cycle(f) || !f.fits_mask()) return unavailable(PredictTheorem::general, "F is not bipartite");
    auto report = density_report(f);
    if (!report.two_balanced) return unavailable(PredictTheorem::general, "F is not 2-balanced");
    for (int r = 2; r < f.vertex_count(); ++r) {
        for (const auto& t : candidate_triples(f, given, r)) {
            if (t.r != r || !triple_violation(f, t).empty()) continue;
            bool exact = popcount(t.T) >= 2 && popcount(t.S) >= 2;
            for (int v : mask_to_vertices(t.T)) {
                if (v != t.v_star && f.degree(v) != r) exact = false;
            }
            if (!exact) continue;
            if (!general_balance_check(f, t).balanced) continue;
            const int kt = known_t(r);
            if (!contains_copy(complete_bipartite(r, kt), f)) continue;
            const long long s = popcount(t.S), tt = popcount(t.T);
            const long long d = s - 1 + r * (tt - 1);
            ExponentPrediction p;
            p.theorem = PredictTheorem::general;
            p.triple = t;
            p.p_lower_threshold = -frac(s + tt - 2, d);
            p.p_upper_threshold = -frac(s - 1, d);
            p.plateau_exponent = Rational(2) - frac(s + tt - 2, d);
            p.plateau_proven_until = p.p_upper_threshold;
            set_dense(p, r);
            const std::string src = "exact-degree balanced apex graph (|S|=" + std::to_string(s) +
                                    ", |T|=" + std::to_string(tt) + ", r=" + std::to_string(r) + ")";
            p.provenance = {{"p_lower_threshold", src + ": -(|S|+|T|-2)/(|S|-1+r(|T|-1))"},
                            {"p_upper_threshold", src + ": -(|S|-1)/(|S|-1+r(|T|-1))"},
                            {"plateau_exponent", src + ": 2-(|S|+|T|-2)/(|S|-1+r(|T|-1))"},
                            {"dense", src + ": p^{1-1/r} n^{2-1/r}"}};
            p.assumptions.push_back("contains K_{" + std::to_string(r) + "," + std::to_string(kt) +
                                    "}, whose extremal number is known to be Theta(n^{2-1/r})");
            finish(p);
            return p;
        }
        if (given) break;
    }
    return unavailable(PredictTheorem::general, "no exact-degree balanced triple with a known K_{r,t} subgraph");
}

ExponentPrediction predict_maxdeg(const Graph& f, std::optional<SemiBoundedTriple> given) {
    if (has_odd_cycle(f) || !f.fits_mask()) return unavailable(PredictTheorem::maxdeg, "F is not bipartite");
    // v* need not be adjacent to all of S here; search colorings and apexes.
    std::optional<std::tuple<int, int, SemiBoundedTriple>> best;
    auto consider = [&](VertexMask S, VertexMask T, int v) {
        int r = 2;
        for (int w : mask_to_vertices(T)) {
            if (w != v) r = std::max(r, f.degree(w));
        }
        int delta = 2;
        for (int u : mask_to_vertices(S)) {
            delta = std::max(delta, popcount(f.neighbor_mask(u) | bit(v)));
        }
        SemiBoundedTriple t{S, T, v, r};
        if (!best || std::tie(r, delta, t) < std::tie(std::get<0>(*best), std::get<1>(*best), std::get<2>(*best))) {
            best = std::make_tuple(r, delta, t);
        }
    };
    if (given) {
        consider(given->S, given->T, given->v_star);
    } else {
        for (const auto& b : all_two_colorings(f)) {
            for (int v : mask_to_vertices(b.T)) consider(b.S, b.T, v);
        }
    }
    if (!best) return unavailable(PredictTheorem::maxdeg, "no bipartition with a vertex in T");
    auto [r, delta, t] = *best;
    if (given) r = std::max(r, given->r);
    t.r = r;
    ExponentPrediction p;
    p.theorem = PredictTheorem::maxdeg;
    p.triple = t;
    p.p_upper_threshold = -frac(r - 1, static_cast<long long>(r) * delta - 1);
    set_dense(p, r);
    if (f.edge_count() >= 2 && has_cycle(f)) {
        auto m = m2(f);
        p.p_lower_threshold = -(Rational(1) / m);
        p.plateau_exponent = Rational(2) - Rational(1) / m;
        p.provenance["p_lower_threshold"] = "2-density: -1/m2(F) (conjectured plateau start)";
        p.provenance["plateau_exponent"] = "2-density: 2-1/m2(F) (conjectured)";
    }
    p.provenance["p_upper_threshold"] =
        "bounded-degree side with one exceptional vertex (r=" + std::to_string(r) + ", Delta=" + std::to_string(delta) +
        "): -(r-1)/(r*Delta-1), upper bound O(p^{1-1/r} n^{2-1/r}) above it";
    p.provenance["dense"] = "upper bound p^{1-1/r} n^{2-1/r}; tight when F contains K_{r,t} with known extremal number";
    finish(p);
    return p;
}

ExponentPrediction predict_smallp(const Graph& f, std::optional<SemiBoundedTriple> given) {
    if (f.edge_count() < 2 || has_odd_cycle(f) || !f.fits_mask() || f.vertex_count() < 3) {
        return unavailable(PredictTheorem::smallp, "needs a bipartite F with e(F) >= 2");
    }
    auto witnesses = m2_witnesses(f);
    std::vector<SemiBoundedTriple> triples;
    if (given) {
        triples.push_back(*given);
    } else {
        triples = find_triples(f, std::max(1, f.vertex_count()));
    }
    for (const auto& t : triples) {
        if (!triple_violation(f, SemiBoundedTriple{t.S, t.T, t.v_star, std::max(t.r, f.vertex_count())}).empty()) {
            continue;
        }
        bool contains_s = std::all_of(witnesses.begin(), witnesses.end(), [&](VertexMask w) { return (w & t.S) == t.S; });
        if (!contains_s) continue;
        const auto m = m2(f);
        const long long e = f.edge_count();
        ExponentPrediction p;
        p.theorem = PredictTheorem::smallp;
        p.triple = t;
        p.p_lower_threshold = -(Rational(1) / m);
        p.p_upper_threshold = frac(1, e * e) - Rational(1) / m;
        p.plateau_proven_until = p.p_upper_threshold;
        p.plateau_exponent = Rational(2) - Rational(1) / m;
        p.provenance = {{"p_lower_threshold", "2-density: -1/m2(F)"},
                        {"p_upper_threshold", "apex graph whose m2-maximizers contain S: 1/e(F)^2 - 1/m2(F)"},
                        {"plateau_exponent", "2-density: 2-1/m2(F)"}};
        finish(p);
        return p;
    }
    return unavailable(PredictTheorem::smallp, "no apex triple whose S lies in every m2-maximizer");
}

ExponentPrediction predict_semibounded(const Graph& f, std::optional<SemiBoundedTriple> given) {
    if (!has_cycle(f)) return unavailable(PredictTheorem::semibounded, "F is acyclic; the bounds require a cycle");
    if (has_odd_cycle(f)) return unavailable(PredictTheorem::semibounded, "F is not bipartite");
    require_pattern_size(f, "predict");
    std::optional<SemiBoundedTriple> t = given ? given : select_triple(f);
    if (!t) return unavailable(PredictTheorem::semibounded, "F is not r-semi-bounded for any r");
    validate_triple(f, *t);
    const auto m = m2(f);
    const auto a = a_of_F(f, *t);
    const auto b = b_of_F(f, *t);
    ExponentPrediction p;
    p.theorem = PredictTheorem::semibounded;
    p.triple = t;
    p.p_lower_threshold = -(Rational(1) / m);
    p.p_upper_threshold = -a.value;
    p.plateau_exponent = Rational(2) - Rational(1) / m;
    p.plateau_proven_until = std::min(b.value, frac(1, t->r)) - Rational(1) / m;
    set_dense(p, t->r);
    p.provenance = {{"p_lower_threshold", "2-density: -1/m2(F)"},
                    {"p_upper_threshold", "semi-bounded: -a(F), dense upper bound O(p^{1-1/r} n^{2-1/r}) above it"},
                    {"plateau_exponent", "2-density: 2-1/m2(F)"},
                    {"plateau_proven_until", "semi-bounded: min(b(F), 1/r) - 1/m2(F)"},
                    {"dense", "semi-bounded: upper bound p^{1-1/r} n^{2-1/r}"}};
    p.assumptions.push_back("dense and plateau pieces are upper bounds; matching lower bounds are not verified");
    finish(p);
    return p;
}

}  // namespace

ExponentPrediction predict(const Graph& f, std::optional<SemiBoundedTriple> triple, PredictTheorem theorem) {
    if (f.edge_count() == 0) return unavailable(theorem, "F has no edges");
    switch (theorem) {
        case PredictTheorem::kst: return predict_kst(f);
        case PredictTheorem::multigraph: return predict_multigraph(f, triple);
        case PredictTheorem::general: return predict_general(f, triple);
        case PredictTheorem::maxdeg: return predict_maxdeg(f, triple);
        case PredictTheorem::smallp: return predict_smallp(f, triple);
        case PredictTheorem::semibounded: return predict_semibounded(f, triple);
        case PredictTheorem::automatic: break;
    }
    if (!has_cycle(f)) return unavailable(PredictTheorem::automatic, "F is acyclic; no theorem applies");
    if (has_odd_cycle(f)) return unavailable(PredictTheorem::automatic, "F is not bipartite; no theorem applies");
    if (!triple) {
        auto p = predict_kst(f);
        if (p.available) return p;
    }
    for (auto fn : {predict_multigraph, predict_general, predict_semibounded}) {
        auto p = fn(f, triple);
        if (p.available) return p;
    }
    return unavailable(PredictTheorem::automatic, "F is not r-semi-bounded; no theorem applies");
}

// ---------------------------------------------------------------------------
// Fitting and sweeps

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::domain_error("fit_slope: need at least two points");
    const double k = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 1e-12 * std::max(1.0, mx * mx)) throw std::domain_error("fit_slope: x values are degenerate");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (auto [x, y] : points) {
        double res = y - (fit.intercept + fit.slope * x);
        fit.max_residual = std::max(fit.max_residual, std::abs(res));
        ss += res * res;
    }
    if (points.size() > 2) fit.slope_stderr = std::sqrt(ss / (k - 2) / sxx);
    return fit;
}

SimMethod parse_sim_method(const std::string& text) {
    if (text == "auto") return SimMethod::automatic;
    if (text == "exact") return SimMethod::exact;
    if (text == "heuristic") return SimMethod::heuristic;
    throw std::invalid_argument("unknown method '" + text + "' (expected auto|exact|heuristic)");
}

std::string to_string(SimMethod m) {
    switch (m) {
        case SimMethod::automatic: return "auto";
        case SimMethod::exact: return "exact";
        case SimMethod::heuristic: return "heuristic";
    }
    return "?";
}

std::uint64_t replicate_seed(std::uint64_t base, int n, int rep) {
    return mix64(mix64(base) ^ mix64(static_cast<std::uint64_t>(n) * 0x10001ULL + static_cast<std::uint64_t>(rep)));
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::domain_error("median of an empty list");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

namespace {

// One replicate at one n across the p grid (ascending p), warm-starting
// each heuristic run from the previous witness when coupled.
void run_chain(const SweepConfig& cfg, int n, int rep, const std::vector<std::size_t>& p_order,
               std::vector<SweepRow*>& rows) {
    const std::uint64_t seed = replicate_seed(cfg.seed, n, rep);
    std::optional<Graph> warm;
    for (std::size_t idx = 0; idx < p_order.size(); ++idx) {
        SweepRow& row = *rows[idx];
        const double x = cfg.p_exponents[p_order[idx]];
        row.n = n;
        row.p_exp = x;
        row.p = std::min(1.0, std::pow(static_cast<double>(n), x));
        row.seed = seed;
        row.replicate = rep;
        auto start = std::chrono::steady_clock::now();
        try {
            Graph host = sample_gnp(n, row.p, seed);
            row.host_edges = host.edge_count();
            bool use_exact = cfg.method == SimMethod::exact ||
                             (cfg.method == SimMethod::automatic && host.edge_count() <= cfg.exact_edge_limit);
            bool done = false;
            if (use_exact) {
                try {
                    auto r = max_f_free_exact(host, cfg.pattern, cfg.exact);
                    row.ex_est = r.edge_count;
                    row.method = SimMethod::exact;
                    warm = std::move(r.witness);
                    done = true;
                } catch (const ResourceError& e) {
                    if (cfg.method == SimMethod::exact) throw;
                }
            }
            if (!done) {
                const Graph* ws = (cfg.coupled && warm) ? &*warm : nullptr;
                auto r = max_f_free_heuristic(host, cfg.pattern, cfg.heuristic, seed, ws);
                row.ex_est = r.edge_count;
                row.method = SimMethod::heuristic;
                warm = std::move(r.witness);
            }
        } catch (const std::exception& e) {
            row.ex_est = -1;
            row.error = e.what();
            warm.reset();
        }
        if (cfg.record_timing) {
            row.time_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    }
}

}  // namespace

SweepResult sweep(const SweepConfig& cfg) {
    if (cfg.n_list.empty() || cfg.p_exponents.empty() || cfg.replicates < 1) {
        throw std::invalid_argument("sweep: n list, p grid and replicates must be nonempty");
    }
    require_pattern_edges(cfg.pattern);
    std::vector<std::size_t> p_order(cfg.p_exponents.size());
    std::iota(p_order.begin(), p_order.end(), 0);
    std::stable_sort(p_order.begin(), p_order.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.p_exponents[a] < cfg.p_exponents[b]; });

    const std::size_t np = cfg.p_exponents.size();
    const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
    SweepResult result;
    result.rows.resize(cfg.n_list.size() * np * reps);
    // rows[(ni * np + pi) * reps + rep], pi in the caller's grid order.
    auto row_at = [&](std::size_t ni, std::size_t pi, std::size_t rep) -> SweepRow& {
        return result.rows[(ni * np + pi) * reps + rep];
    };

    struct Task {
        std::size_t ni, rep;
    };
    std::vector<Task> tasks;
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni)
        for (std::size_t rep = 0; rep < reps; ++rep) tasks.push_back({ni, rep});

    auto run_task = [&](const Task& t) {
        if (cfg.coupled) {
            std::vector<SweepRow*> rows;
            for (std::size_t pi : p_order) rows.push_back(&row_at(t.ni, pi, t.rep));
            run_chain(cfg, cfg.n_list[t.ni], static_cast<int>(t.rep), p_order, rows);
        } else {
            for (std::size_t pi = 0; pi < np; ++pi) {
                std::vector<SweepRow*> rows{&row_at(t.ni, pi, t.rep)};
                run_chain(cfg, cfg.n_list[t.ni], static_cast<int>(t.rep), {pi}, rows);
            }
        }
    };

    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < tasks.size(); k = next++) run_task(tasks[k]);
        });
    }
    for (auto& th : pool) th.join();

    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        for (std::size_t pi = 0; pi < np; ++pi) {
            SweepCell cell;
            cell.n = cfg.n_list[ni];
            cell.p_exp = cfg.p_exponents[pi];
            cell.p = std::min(1.0, std::pow(static_cast<double>(cell.n), cell.p_exp));
            std::vector<double> values;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const auto& row = row_at(ni, pi, rep);
                if (row.ex_est >= 0) values.push_back(row.ex_est);
            }
            cell.ok = static_cast<int>(values.size());
            if (!values.empty()) {
                cell.median = median(values);
                cell.min = *std::min_element(values.begin(), values.end());
                cell.max = *std::max_element(values.begin(), values.end());
            }
            result.cells.push_back(cell);
        }
    }
    for (std::size_t pi = 0; pi < np; ++pi) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& c : result.cells) {
            if (c.p_exp == cfg.p_exponents[pi] && c.ok > 0 && c.median > 0) {
                pts.emplace_back(std::log(static_cast<double>(c.n)), std::log(c.median));
            }
        }
        try {
            result.slope_in_n[cfg.p_exponents[pi]] = fit_slope(pts);
        } catch (const std::domain_error&) {
        }
    }
    for (int n : cfg.n_list) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& c : result.cells) {
            if (c.n == n && c.ok > 0 && c.median > 0) pts.emplace_back(std::log(c.p), std::log(c.median));
        }
        try {
            result.slope_in_p[n] = fit_slope(pts);
        } catch (const std::domain_error&) {
        }
    }
    return result;
}

}  // namespace rturan
