#include "rturan/supersaturation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "rturan/rng.hpp"

namespace rturan {

std::size_t PartialKeyHash::operator()(const PartialKey& k) const noexcept {
    return boost::hash_range(k.words.begin(), k.words.end());
}

PartialKey make_key(std::span<const int> map, VertexMask domain) {
    PartialKey key;
    key.words.reserve(static_cast<std::size_t>(popcount(domain)) + 2);
    key.words.push_back(static_cast<std::uint32_t>(domain));
    key.words.push_back(static_cast<std::uint32_t>(domain >> 32));
    for (VertexMask m = domain; m != 0; m &= m - 1) {
        key.words.push_back(static_cast<std::uint32_t>(map[static_cast<std::size_t>(std::countr_zero(m))]));
    }
    return key;
}

PartialKey make_key(const PartialEmbedding& psi) { return make_key(psi.images, psi.domain); }

namespace {

VertexMask key_domain(const PartialKey& key) {
    return static_cast<VertexMask>(key.words[0]) | (static_cast<VertexMask>(key.words[1]) << 32);
}

PartialEmbedding decode_key(const PartialKey& key, int pattern_size) {
    PartialEmbedding psi{key_domain(key), std::vector<int>(static_cast<std::size_t>(pattern_size), -1)};
    std::size_t i = 2;
    for (VertexMask m = psi.domain; m != 0; m &= m - 1) {
        psi.images[static_cast<std::size_t>(std::countr_zero(m))] = static_cast<int>(key.words[i++]);
    }
    return psi;
}

bool within(double count, double bound) { return count <= bound * (1 + 1e-9); }

}  // namespace

DGoodFamily::DGoodFamily(const Graph& pattern, const SemiBoundedTriple& triple, const Graph& host,
                         BalancingContext ctx)
    : pattern_(pattern), host_(host), triple_(triple), ctx_(ctx) {
    ctx_.validate();
    SemiBoundedProfile profile(pattern, triple);
    for (VertexMask nu = 1; nu <= pattern.vertex_mask(); ++nu) {
        auto fv = profile.f(nu);
        if (!fv) continue;
        capped_.push_back(nu);
        const int size = popcount(nu);
        long double d = std::pow(static_cast<long double>(ctx_.delta), -size) *
                        std::pow(static_cast<long double>(ctx_.q), pattern.edge_count() - *fv) *
                        std::pow(static_cast<long double>(ctx_.n), pattern.vertex_count() - size);
        caps_[nu] = static_cast<double>(d);
        long double guarded = std::floor(d * (1 + 1e-9L));
        integer_caps_[nu] = guarded >= static_cast<long double>(LLONG_MAX / 2) ? LLONG_MAX / 2
                                                                               : static_cast<long long>(guarded);
        if (integer_caps_[nu] < 1) integer_caps_[nu] = d >= 1 ? 1 : -1;
    }
}

double DGoodFamily::cap(VertexMask nu) const {
    auto it = caps_.find(nu);
    return it == caps_.end() ? std::numeric_limits<double>::infinity() : it->second;
}

long long DGoodFamily::integer_cap(VertexMask nu) const {
    auto it = integer_caps_.find(nu);
    return it == integer_caps_.end() ? LLONG_MAX : it->second;
}

std::optional<VertexMask> DGoodFamily::blocking_subset(std::span<const int> map) const {
    for (VertexMask nu : capped_) {
        auto it = index_.find(make_key(map, nu));
        long long current = it == index_.end() ? 0 : it->second;
        if (current + 1 > integer_caps_.at(nu)) return nu;
    }
    return std::nullopt;
}

std::vector<VertexMask> DGoodFamily::blocking_subsets(std::span<const int> map) const {
    std::vector<VertexMask> out;
    for (VertexMask nu : capped_) {
        auto it = index_.find(make_key(map, nu));
        long long current = it == index_.end() ? 0 : it->second;
        if (current + 1 > integer_caps_.at(nu)) out.push_back(nu);
    }
    return out;
}

bool DGoodFamily::try_insert(std::span<const int> map) {
    if (blocking_subset(map)) return false;
    for (VertexMask nu : capped_) ++index_[make_key(map, nu)];
    members_.emplace_back(map.begin(), map.end());
    return true;
}

int DGoodFamily::degree(const PartialEmbedding& psi) const {
    if (pattern_.edges_within(psi.domain) >= 1) {
        auto it = index_.find(make_key(psi));
        return it == index_.end() ? 0 : it->second;
    }
    int count = 0;
    for (const auto& m : members_) {
        bool agrees = true;
        for (VertexMask d = psi.domain; d != 0 && agrees; d &= d - 1) {
            int v = std::countr_zero(d);
            agrees = m[static_cast<std::size_t>(v)] == psi.images[static_cast<std::size_t>(v)];
        }
        count += agrees;
    }
    return count;
}

DGoodFamily build_dgood(const Graph& pattern, const SemiBoundedTriple& triple, const Graph& host,
                        const BalancingContext& ctx, std::uint64_t order_seed, BuildStats* stats) {
    DGoodFamily family(pattern, triple, host, ctx);
    EmbeddingSearch search(pattern, host.bits(), order_seed, true);
    BuildStats local;
    search.for_each([&](std::span<const int> map) {
        ++local.candidates;
        if (family.try_insert(map)) {
            ++local.accepted;
        } else if (stats) {
            for (VertexMask nu : family.blocking_subsets(map)) ++local.binding[nu];
        }
        return true;
    });
    if (stats) *stats = std::move(local);
    return family;
}

int degree_of_partial(const DGoodFamily& family, const PartialEmbedding& psi) { return family.degree(psi); }

std::vector<SaturatedPartial> saturated_partials(const DGoodFamily& family) {
    std::vector<SaturatedPartial> out;
    for (const auto& [key, count] : family.partial_index()) {
        VertexMask nu = key_domain(key);
        if (count >= family.cap(nu) / 2) {
            out.push_back({nu, decode_key(key, family.pattern().vertex_count()), count});
        }
    }
    std::sort(out.begin(), out.end(), [](const SaturatedPartial& a, const SaturatedPartial& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.psi.images < b.psi.images;
    });
    return out;
}

DoubleCountingReport check_double_counting(const DGoodFamily& family) {
    DoubleCountingReport report;
    const double size = static_cast<double>(family.size());
    auto saturated = saturated_partials(family);
    std::map<VertexMask, std::vector<const SaturatedPartial*>> by_nu;
    for (const auto& s : saturated) by_nu[s.nu].push_back(&s);
    for (VertexMask nu : family.capped_subsets()) {
        const double d = family.cap(nu);
        auto it = by_nu.find(nu);
        const double xi = it == by_nu.end() ? 0.0 : static_cast<double>(it->second.size());
        double ratio = size > 0 ? xi * d / (2 * size) : (xi > 0 ? INFINITY : 0.0);
        report.worst_a_ratio = std::max(report.worst_a_ratio, ratio);
        if (!within(xi, 2 * size / d)) report.holds = false;
        if (it == by_nu.end()) continue;
        // (b): group the saturated psi on nu by their restriction to each capped nu' inside nu.
        for (VertexMask sub = (nu - 1) & nu;; sub = (sub - 1) & nu) {
            if (sub != 0 && family.pattern().edges_within(sub) >= 1) {
                std::unordered_map<PartialKey, int, PartialKeyHash> groups;
                for (const SaturatedPartial* s : it->second) ++groups[make_key(s->psi.images, sub)];
                const double bound = 2 * family.cap(sub) / d;
                for (const auto& [key, xi_sub] : groups) {
                    ++report.checked_pairs;
                    report.worst_b_ratio = std::max(report.worst_b_ratio, xi_sub / bound);
                    if (!within(xi_sub, bound)) report.holds = false;
                }
            }
            if (sub == 0) break;
        }
    }
    return report;
}

bool recount_is_dgood(const DGoodFamily& family) {
    const Graph& f = family.pattern();
    for (VertexMask nu = 1; nu <= f.vertex_mask(); ++nu) {
        if (f.edges_within(nu) == 0) continue;
        std::map<std::vector<int>, int> counts;
        auto vs = mask_to_vertices(nu);
        for (const auto& m : family.members()) {
            std::vector<int> image;
            for (int v : vs) image.push_back(m[static_cast<std::size_t>(v)]);
            ++counts[image];
        }
        for (const auto& [image, count] : counts) {
            if (!within(count, family.cap(nu))) return false;
        }
    }
    return true;
}

std::optional<Embedding> find_insertable(const DGoodFamily& family) {
    std::set<Embedding> members(family.members().begin(), family.members().end());
    std::optional<Embedding> found;
    EmbeddingSearch search(family.pattern(), family.host().bits(), 0, false);
    search.for_each([&](std::span<const int> map) {
        Embedding candidate(map.begin(), map.end());
        if (members.count(candidate)) return true;
        if (!family.blocking_subset(map)) {
            found = std::move(candidate);
            return false;
        }
        return true;
    });
    return found;
}

// ---------------------------------------------------------------------------

namespace {

int edge_index(const Graph& host, int a, int b) {
    if (a > b) std::swap(a, b);
    const auto& edges = host.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{a, b});
    if (it == edges.end() || it->u != a || it->v != b) throw std::logic_error("edge image is not a host edge");
    return static_cast<int>(it - edges.begin());
}

std::vector<int> edge_image(const Graph& pattern, const Graph& host, std::span<const int> map) {
    std::vector<int> ids;
    for (const Edge& e : pattern.edges()) {
        ids.push_back(edge_index(host, map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept { return boost::hash_range(v.begin(), v.end()); }
};

template <typename Fn>
void for_each_subset_of_size(const std::vector<int>& items, int k, Fn&& fn) {
    const int n = static_cast<int>(items.size());
    if (k > n || k < 0) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<int> chosen(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        fn(chosen);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

EdgeHypergraph to_edge_hypergraph(const DGoodFamily& family) {
    EdgeHypergraph h;
    h.vertex_count = family.host().edge_count();
    std::map<std::vector<int>, int> images;
    for (const auto& m : family.members()) ++images[edge_image(family.pattern(), family.host(), m)];
    for (auto& [ids, count] : images) {
        h.hyperedges.push_back(ids);
        h.multiplicity.push_back(count);
    }
    return h;
}

DeltaAudit delta_audit(const EdgeHypergraph& h, const DGoodFamily& family, const AuditOptions& options) {
    const Graph& f = family.pattern();
    const int k = f.edge_count();
    const double m = family.host().edge_count();
    const BalancingContext& ctx = family.context();
    DeltaAudit audit;
    audit.gamma = options.gamma;
    audit.tau = tau(f, family.triple(), ctx).value;
    const double x = audit.tau / (ctx.q * ctx.n * ctx.n);
    const double size = static_cast<double>(h.hyperedges.size());

    double work = 0;
    for (int i = 1; i <= k; ++i) work += size * binomial(k, i);
    const bool exact = work <= static_cast<double>(options.budget);
    if (!exact && !options.allow_sampling) {
        throw ResourceError("delta_audit: exact audit needs " + std::to_string(static_cast<long long>(work)) +
                            " subset visits, over budget " + std::to_string(options.budget) +
                            "; enable sampling");
    }
    audit.sampled = !exact;

    std::vector<std::vector<int>> incidence;  // host edge -> hyperedge ids
    if (!exact) {
        incidence.resize(static_cast<std::size_t>(h.vertex_count));
        for (std::size_t j = 0; j < h.hyperedges.size(); ++j) {
            for (int e : h.hyperedges[j]) incidence[static_cast<std::size_t>(e)].push_back(static_cast<int>(j));
        }
    }
    Rng rng(options.seed);

    for (int i = 1; i <= k; ++i) {
        DeltaRow row;
        row.i = i;
        if (exact) {
            std::unordered_map<std::vector<int>, long long, VecHash> counts;
            for (const auto& he : h.hyperedges) {
                for_each_subset_of_size(he, i, [&](const std::vector<int>& sigma) { ++counts[sigma]; });
            }
            for (const auto& [sigma, c] : counts) {
                if (c > row.delta || (c == row.delta && sigma < row.worst_sigma)) {
                    row.delta = c;
                    row.worst_sigma = sigma;
                }
            }
        } else if (!h.hyperedges.empty()) {
            const std::size_t samples = std::max<std::size_t>(1, options.budget / static_cast<std::size_t>(k));
            for (std::size_t s = 0; s < samples; ++s) {
                const auto& he = h.hyperedges[rng.below(h.hyperedges.size())];
                std::vector<int> pool = he;
                rng.shuffle(pool);
                std::vector<int> sigma(pool.begin(), pool.begin() + i);
                std::sort(sigma.begin(), sigma.end());
                std::vector<int> common = incidence[static_cast<std::size_t>(sigma[0])];
                for (std::size_t t = 1; t < sigma.size() && !common.empty(); ++t) {
                    const auto& other = incidence[static_cast<std::size_t>(sigma[t])];
                    std::vector<int> next;
                    std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                                          std::back_inserter(next));
                    common.swap(next);
                }
                long long c = static_cast<long long>(common.size());
                if (c > row.delta) {
                    row.delta = c;
                    row.worst_sigma = sigma;
                }
            }
        }
        row.bound = options.gamma * size / m * std::pow(audit.tau / m, i - 1);
        row.holds = within(static_cast<double>(row.delta), row.bound);
        row.shape = std::pow(ctx.q, k - 1) * std::pow(ctx.n, f.vertex_count() - 2) * std::pow(x, i - 1);
        if (size > 0) {
            audit.smallest_gamma =
                std::max(audit.smallest_gamma, row.delta * m / (size * std::pow(audit.tau / m, i - 1)));
        }
        audit.smallest_C = std::max(audit.smallest_C, row.delta / row.shape);
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

bool verify_sigma_degree_bound(const EdgeHypergraph& h, const DGoodFamily& family, int max_size) {
    const Graph& f = family.pattern();
    const Graph& host = family.host();
    std::unordered_map<std::vector<int>, long long, VecHash> lhs;
    for (const auto& he : h.hyperedges) {
        for (int i = 1; i <= std::min<int>(max_size, static_cast<int>(he.size())); ++i) {
            for_each_subset_of_size(he, i, [&](const std::vector<int>& sigma) { ++lhs[sigma]; });
        }
    }
    for (const auto& [sigma, deg_h] : lhs) {
        std::set<int> sigma_vertices;
        for (int e : sigma) {
            sigma_vertices.insert(host.edges()[static_cast<std::size_t>(e)].u);
            sigma_vertices.insert(host.edges()[static_cast<std::size_t>(e)].v);
        }
        std::unordered_set<PartialKey, PartialKeyHash> psis;
        for (const auto& m : family.members()) {
            std::vector<int> preimage(static_cast<std::size_t>(host.vertex_count()), -1);
            for (int v = 0; v < f.vertex_count(); ++v) preimage[static_cast<std::size_t>(m[static_cast<std::size_t>(v)])] = v;
            VertexMask nu = 0;
            bool covered = true;
            for (int hv : sigma_vertices) {
                int pv = preimage[static_cast<std::size_t>(hv)];
                if (pv < 0) {
                    covered = false;
                    break;
                }
                nu |= bit(pv);
            }
            if (!covered) continue;
            bool sigma_embedding = true;
            for (int e : sigma) {
                const Edge& he = host.edges()[static_cast<std::size_t>(e)];
                if (!f.has_edge(preimage[static_cast<std::size_t>(he.u)], preimage[static_cast<std::size_t>(he.v)])) {
                    sigma_embedding = false;
                    break;
                }
            }
            if (sigma_embedding) psis.insert(make_key(m, nu));
        }
        long long rhs = 0;
        for (const auto& key : psis) rhs += family.degree(decode_key(key, f.vertex_count()));
        if (deg_h > rhs) return false;
    }
    return true;
}

}  // namespace rturan
