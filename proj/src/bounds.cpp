#include "fap/bounds.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace fap {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::vector<int>> live_components(const ConstraintGraph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (!g.is_alive(s) || seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& [nb, w] : g.adj[v]) {
                if (g.is_alive(nb) && !seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Dense completion weights for one component: missing pairs cost 0.
std::vector<int> completion_weights(const ConstraintGraph& g, const std::vector<int>& comp) {
    int c = static_cast<int>(comp.size());
    std::vector<int> pos(g.n, -1);
    for (int i = 0; i < c; ++i) pos[comp[i]] = i;
    std::vector<int> w(static_cast<std::size_t>(c) * c, 0);
    for (int i = 0; i < c; ++i) {
        for (const auto& [nb, weight] : g.adj[comp[i]]) {
            int j = pos[nb];
            if (j >= 0) w[static_cast<std::size_t>(i) * c + j] = weight;
        }
    }
    return w;
}

long long component_mst(const std::vector<int>& w, int c) {
    if (c <= 1) return 0;
    // Prim over the dense completion.
    std::vector<long long> cost(c, std::numeric_limits<long long>::max());
    std::vector<char> in_tree(c, 0);
    cost[0] = 0;
    long long total = 0;
    for (int it = 0; it < c; ++it) {
        int best = -1;
        for (int v = 0; v < c; ++v)
            if (!in_tree[v] && (best < 0 || cost[v] < cost[best])) best = v;
        in_tree[best] = 1;
        total += cost[best];
        for (int v = 0; v < c; ++v) {
            if (in_tree[v]) continue;
            long long e = w[static_cast<std::size_t>(best) * c + v];
            if (e < cost[v]) cost[v] = e;
        }
    }
    return total;
}

long long component_ham_path(const std::vector<int>& w, int c) {
    if (c <= 1) return 0;
    const std::uint32_t INF = std::numeric_limits<std::uint32_t>::max() / 2;
    std::size_t masks = std::size_t{1} << c;
    std::vector<std::uint32_t> dp(masks * c, INF);
    for (int v = 0; v < c; ++v) dp[(std::size_t{1} << v) * c + v] = 0;
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
        for (int v = 0; v < c; ++v) {
            std::uint32_t cur = dp[std::size_t{mask} * c + v];
            if (cur >= INF || !(mask & (1u << v))) continue;
            for (int u = 0; u < c; ++u) {
                if (mask & (1u << u)) continue;
                std::uint32_t next = cur + static_cast<std::uint32_t>(w[static_cast<std::size_t>(v) * c + u]);
                std::uint32_t& slot = dp[(std::size_t{mask} | (1u << u)) * c + u];
                if (next < slot) slot = next;
            }
        }
    }
    std::uint32_t best = INF;
    std::uint32_t full = static_cast<std::uint32_t>(masks - 1);
    for (int v = 0; v < c; ++v) best = std::min(best, dp[std::size_t{full} * c + v]);
    return best;
}

// --- k-clique filtering and confirmation -----------------------------------

// Survivors of iteratively deleting vertices with live degree < k-1.
std::vector<int> clique_filter(const ConstraintGraph& g, int k) {
    std::vector<int> deg(g.degree);
    std::vector<char> dropped(g.n, 0);
    std::vector<int> queue;
    for (int v = 0; v < g.n; ++v) {
        if (!g.is_alive(v)) {
            dropped[v] = 1;
            continue;
        }
        if (deg[v] < k - 1) {
            dropped[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (const auto& [nb, w] : g.adj[v]) {
            if (dropped[nb]) continue;
            if (--deg[nb] < k - 1) {
                dropped[nb] = 1;
                queue.push_back(nb);
            }
        }
    }
    std::vector<int> survivors;
    for (int v = 0; v < g.n; ++v)
        if (!dropped[v]) survivors.push_back(v);
    return survivors;
}

struct Bits {
    std::vector<std::uint64_t> words;

    explicit Bits(int n = 0) : words((n + 63) / 64, 0) {}
    void set(int i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    int count() const {
        int c = 0;
        for (auto w : words) c += static_cast<int>(std::popcount(w));
        return c;
    }
    Bits and_with(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < words.size(); ++i) r.words[i] &= o.words[i];
        return r;
    }
    int first() const {
        for (std::size_t i = 0; i < words.size(); ++i)
            if (words[i]) return static_cast<int>(i * 64 + std::countr_zero(words[i]));
        return -1;
    }
};

struct CliqueSearch {
    const std::vector<Bits>& adj;
    Clock::time_point deadline;
    long long ticks = 0;
    bool timed_out = false;
    std::vector<int> stack;
    std::vector<int> found;

    bool expired() {
        if ((++ticks & 1023) == 0 && Clock::now() > deadline) timed_out = true;
        return timed_out;
    }

    // True if a clique of size `need` exists inside `cand`.
    bool run(Bits cand, int need) {
        if (need == 0) {
            found = stack;
            return true;
        }
        if (expired()) return false;
        if (cand.count() < need) return false;
        while (true) {
            int v = cand.first();
            if (v < 0) return false;
            if (cand.count() < need) return false;
            cand.reset(v);
            stack.push_back(v);
            if (run(cand.and_with(adj[v]), need - 1)) return true;
            stack.pop_back();
            if (timed_out) return false;
        }
    }
};

}  // namespace

CliqueBound clique_lower_bound(const ConstraintGraph& g, double time_cap_s) {
    CliqueBound out;
    if (g.live_count == 0) return out;

    int max_deg = 0;
    for (int v = 0; v < g.n; ++v)
        if (g.is_alive(v)) max_deg = std::max(max_deg, g.degree[v]);

    // Binary search the largest k whose filter keeps any vertex. A k-clique
    // implies a nonempty residual, so this is an upper bound on w(G).
    int lo = 1, hi = max_deg + 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (!clique_filter(g, mid).empty())
            lo = mid;
        else
            hi = mid - 1;
    }
    int k_filter = lo;

    for (int k = k_filter; k >= 1; --k) {
        std::vector<int> residual = clique_filter(g, k);
        if (residual.empty()) continue;
        int m = static_cast<int>(residual.size());
        if (m < k) continue;
        std::vector<int> pos(g.n, -1);
        for (int i = 0; i < m; ++i) pos[residual[i]] = i;
        std::vector<Bits> adj(m, Bits(m));
        for (int i = 0; i < m; ++i) {
            for (const auto& [nb, w] : g.adj[residual[i]]) {
                int j = pos[nb];
                if (j >= 0) adj[i].set(j);
            }
        }
        Bits all(m);
        for (int i = 0; i < m; ++i) all.set(i);
        CliqueSearch search{adj,
                            Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                               std::chrono::duration<double>(time_cap_s)),
                            0,
                            false,
                            {},
                            {}};
        bool hit = search.run(all, k);
        if (search.timed_out) {
            out.size = k_filter;
            out.confirmed = false;
            return out;
        }
        if (hit) {
            out.size = k;
            out.confirmed = true;
            out.witness.reserve(k);
            for (int i : search.found) out.witness.push_back(residual[i]);
            std::sort(out.witness.begin(), out.witness.end());
            return out;
        }
    }
    return out;
}

RangeBound mst_bound(const ConstraintGraph& g) {
    RangeBound b;
    for (const auto& comp : live_components(g)) {
        int c = static_cast<int>(comp.size());
        long long v = component_mst(completion_weights(g, comp), c);
        b.sum += v;
        b.max_component = std::max(b.max_component, v);
    }
    return b;
}

RangeBound hamiltonian_bound(const ConstraintGraph& g, int exact_limit) {
    RangeBound b;
    for (const auto& comp : live_components(g)) {
        int c = static_cast<int>(comp.size());
        auto w = completion_weights(g, comp);
        long long v;
        if (c <= exact_limit) {
            v = component_ham_path(w, c);
        } else {
            v = component_mst(w, c);
            b.exact = false;
        }
        b.sum += v;
        b.max_component = std::max(b.max_component, v);
    }
    return b;
}

bool triangle_check(const ConstraintGraph& g) {
    for (const auto& comp : live_components(g)) {
        int c = static_cast<int>(comp.size());
        auto w = completion_weights(g, comp);
        for (int i = 0; i < c; ++i) {
            for (int j = i + 1; j < c; ++j) {
                int wij = w[static_cast<std::size_t>(i) * c + j];
                for (int k = j + 1; k < c; ++k) {
                    int wik = w[static_cast<std::size_t>(i) * c + k];
                    int wjk = w[static_cast<std::size_t>(j) * c + k];
                    int hi = std::max({wij, wik, wjk});
                    if (2 * hi > wij + wik + wjk) return false;
                }
            }
        }
    }
    return true;
}

namespace {

bool triangle_check_edges_only(const ConstraintGraph& g) {
    for (const auto& comp : live_components(g)) {
        int c = static_cast<int>(comp.size());
        auto w = completion_weights(g, comp);
        for (int i = 0; i < c; ++i) {
            for (int j = i + 1; j < c; ++j) {
                int wij = w[static_cast<std::size_t>(i) * c + j];
                if (wij == 0) continue;
                for (int k = j + 1; k < c; ++k) {
                    int wik = w[static_cast<std::size_t>(i) * c + k];
                    int wjk = w[static_cast<std::size_t>(j) * c + k];
                    if (wik == 0 || wjk == 0) continue;
                    int hi = std::max({wij, wik, wjk});
                    if (2 * hi > wij + wik + wjk) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

BoundsReport compute_bounds(const ConstraintGraph& g, const FrequencyPlan* plan, int exact_limit,
                            double clique_cap_s) {
    BoundsReport r;
    r.n_vertices = g.live_count;
    r.n_edges = g.live_edges;
    r.n_components = static_cast<int>(live_components(g).size());
    r.clique = clique_lower_bound(g, clique_cap_s);
    r.mst = mst_bound(g);
    r.ham = hamiltonian_bound(g, exact_limit);
    r.triangle_ok = triangle_check(g);
    r.triangle_ok_edges = triangle_check_edges_only(g);
    r.range_certificate = r.triangle_ok && r.ham.exact;
    if (plan != nullptr) {
        r.has_plan = true;
        r.mst_mhz = r.mst.max_component * plan->step + plan->bandwidth;
        r.ham_mhz = r.ham.max_component * plan->step + plan->bandwidth;
    }
    return r;
}

}  // namespace fap
