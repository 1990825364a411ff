#include "rturan/embedding.hpp"

#include <algorithm>

#include "rturan/rng.hpp"

namespace rturan {

bool is_embedding(const Graph& pattern, const Graph& host, std::span<const int> map) {
    if (static_cast<int>(map.size()) != pattern.vertex_count()) return false;
    std::vector<char> seen(static_cast<std::size_t>(host.vertex_count()), 0);
    for (int h : map) {
        if (h < 0 || h >= host.vertex_count() || seen[static_cast<std::size_t>(h)]) return false;
        seen[static_cast<std::size_t>(h)] = 1;
    }
    for (const Edge& e : pattern.edges()) {
        if (!host.has_edge(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)])) return false;
    }
    return true;
}

bool is_partial_embedding(const Graph& pattern, const Graph& host, const PartialEmbedding& psi) {
    if (static_cast<int>(psi.images.size()) != pattern.vertex_count()) return false;
    std::vector<char> seen(static_cast<std::size_t>(host.vertex_count()), 0);
    for (int v = 0; v < pattern.vertex_count(); ++v) {
        if (!(psi.domain & bit(v))) continue;
        int h = psi.images[static_cast<std::size_t>(v)];
        if (h < 0 || h >= host.vertex_count() || seen[static_cast<std::size_t>(h)]) return false;
        seen[static_cast<std::size_t>(h)] = 1;
    }
    for (const Edge& e : pattern.edges()) {
        if ((psi.domain & bit(e.u)) && (psi.domain & bit(e.v)) &&
            !host.has_edge(psi.images[static_cast<std::size_t>(e.u)], psi.images[static_cast<std::size_t>(e.v)])) {
            return false;
        }
    }
    return true;
}

PartialEmbedding restrict_embedding(std::span<const int> map, VertexMask domain) {
    PartialEmbedding psi{domain, std::vector<int>(map.size(), -1)};
    for (std::size_t v = 0; v < map.size(); ++v) {
        if (domain & bit(static_cast<int>(v))) psi.images[v] = map[v];
    }
    return psi;
}

EmbeddingSearch::EmbeddingSearch(const Graph& pattern, const AdjacencyBits& host, std::uint64_t order_seed,
                                 bool shuffled)
    : pattern_(&pattern), host_(&host), shuffled_(shuffled) {
    const int n = host.vertex_count();
    rank_.resize(static_cast<std::size_t>(n));
    if (shuffled_) {
        auto perm = random_permutation(n, order_seed);
        for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    } else {
        for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(i)] = i;
    }
    full_plan_ = make_plan({});
    for (const Edge& e : pattern.edges()) {
        edge_plans_.push_back(make_plan({e.u, e.v}));
        edge_plans_.push_back(make_plan({e.v, e.u}));
    }
    image_.assign(static_cast<std::size_t>(pattern.vertex_count()), -1);
    used_.assign(static_cast<std::size_t>(host.words()), 0);
    scratch_.resize(static_cast<std::size_t>(pattern.vertex_count()) + 1);
}

EmbeddingSearch::Plan EmbeddingSearch::make_plan(std::vector<int> prefix) const {
    const Graph& f = *pattern_;
    const int k = f.vertex_count();
    std::vector<int> depth_of(static_cast<std::size_t>(k), -1);
    Plan plan;
    auto place = [&](int v) {
        depth_of[static_cast<std::size_t>(v)] = static_cast<int>(plan.order.size());
        plan.order.push_back(v);
    };
    for (int v : prefix) place(v);
    while (static_cast<int>(plan.order.size()) < k) {
        int best = -1, best_links = -1, best_degree = -1;
        for (int v = 0; v < k; ++v) {
            if (depth_of[static_cast<std::size_t>(v)] >= 0) continue;
            int links = 0;
            for (int w : f.neighbors(v)) links += depth_of[static_cast<std::size_t>(w)] >= 0;
            if (links > best_links || (links == best_links && f.degree(v) > best_degree)) {
                best = v;
                best_links = links;
                best_degree = f.degree(v);
            }
        }
        place(best);
    }
    plan.back_links.resize(plan.order.size());
    for (std::size_t d = 0; d < plan.order.size(); ++d) {
        for (int w : f.neighbors(plan.order[d])) {
            int dw = depth_of[static_cast<std::size_t>(w)];
            if (dw < static_cast<int>(d)) plan.back_links[d].push_back(dw);
        }
    }
    return plan;
}

void EmbeddingSearch::candidates(const Plan& plan, std::size_t depth, std::vector<int>& out) const {
    out.clear();
    const auto& links = plan.back_links[depth];
    const int words = host_->words();
    const int n = host_->vertex_count();
    for (int wi = 0; wi < words; ++wi) {
        std::uint64_t word;
        if (links.empty()) {
            int remaining = n - wi * 64;
            word = remaining >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << remaining) - 1);
        } else {
            word = ~std::uint64_t{0};
            for (int d : links) {
                int h = image_[static_cast<std::size_t>(plan.order[static_cast<std::size_t>(d)])];
                word &= host_->row(h)[static_cast<std::size_t>(wi)];
            }
        }
        word &= ~used_[static_cast<std::size_t>(wi)];
        while (word != 0) {
            out.push_back(wi * 64 + std::countr_zero(word));
            word &= word - 1;
        }
    }
    if (shuffled_) {
        std::sort(out.begin(), out.end(), [this](int a, int b) {
            return rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)];
        });
    }
}

bool EmbeddingSearch::exists() {
    return for_each([](std::span<const int>) { return false; }) > 0;
}

bool EmbeddingSearch::exists_through_edge(int u, int v) {
    return for_each_through_edge(u, v, [](std::span<const int>) { return false; }) > 0;
}

std::vector<Embedding> enumerate_embeddings(const Graph& pattern, const Graph& host,
                                            const EnumerationOptions& options) {
    std::vector<Embedding> out;
    if (options.cap && *options.cap == 0) return out;
    EmbeddingSearch search(pattern, host.bits(), options.order_seed, true);
    search.for_each([&](std::span<const int> map) {
        out.emplace_back(map.begin(), map.end());
        return !(options.cap && out.size() >= *options.cap);
    });
    return out;
}

std::size_t count_embeddings(const Graph& pattern, const Graph& host) {
    EmbeddingSearch search(pattern, host.bits(), 0, false);
    return search.for_each([](std::span<const int>) { return true; });
}

bool contains_copy(const Graph& pattern, const Graph& host) {
    EmbeddingSearch search(pattern, host.bits(), 0, false);
    return search.exists();
}

}  // namespace rturan
