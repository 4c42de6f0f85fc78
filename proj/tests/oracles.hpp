// Test-only brute-force references. Everything here is independent of the
// library's solver / bound implementations: plain enumeration over small
// search spaces.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

// Dense symmetric weight matrix helper used by all graph oracles.
struct DenseGraph {
    int n = 0;
    std::vector<int> w;  // n*n, 0 = no constraint

    explicit DenseGraph(int n_) : n(n_), w(static_cast<std::size_t>(n_) * n_, 0) {}
    int at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
    void set(int i, int j, int v) {
        w[static_cast<std::size_t>(i) * n + j] = v;
        w[static_cast<std::size_t>(j) * n + i] = v;
    }
};

// Largest subset of pairwise-adjacent vertices, by subset enumeration.
inline int max_clique_bruteforce(const DenseGraph& g) {
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        bool clique = true;
        for (std::size_t a = 0; a < members.size() && clique; ++a)
            for (std::size_t b = a + 1; b < members.size() && clique; ++b)
                if (g.at(members[a], members[b]) < 1) clique = false;
        if (clique) best = std::max(best, static_cast<int>(members.size()));
    }
    return best;
}

// Minimum spanning tree weight over the metric completion (absent edges cost
// 0), by enumerating all edge subsets of size n-1 and testing connectivity.
inline long long mst_completion_bruteforce(const DenseGraph& g) {
    if (g.n <= 1) return 0;
    struct Edge {
        int a, b, w;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) edges.push_back({i, j, g.at(i, j)});
    int m = static_cast<int>(edges.size());
    long long best = std::numeric_limits<long long>::max();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != g.n - 1) continue;
        std::vector<int> parent(g.n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        long long total = 0;
        int merges = 0;
        for (int e = 0; e < m; ++e) {
            if (!(mask & (1u << e))) continue;
            int ra = find(edges[e].a), rb = find(edges[e].b);
            if (ra != rb) {
                parent[ra] = rb;
                ++merges;
            }
            total += edges[e].w;
        }
        if (merges == g.n - 1) best = std::min(best, total);
    }
    return best;
}

// Minimum Hamiltonian path cost over the metric completion, by permutations.
inline long long ham_path_completion_bruteforce(const DenseGraph& g) {
    if (g.n <= 1) return 0;
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    long long best = std::numeric_limits<long long>::max();
    do {
        long long cost = 0;
        for (int i = 0; i + 1 < g.n; ++i) cost += g.at(perm[i], perm[i + 1]);
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Minimum achievable index span over all feasible assignments of a COMPLETE
// constraint graph (every pair weight >= 1). In any feasible assignment the
// indices are distinct, so the sorted order is a permutation; for a fixed
// order the tightest positions come from the longest-path recurrence over
// all constrained pairs.
inline long long min_span_complete_bruteforce(const DenseGraph& g) {
    if (g.n <= 1) return 0;
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    long long best = std::numeric_limits<long long>::max();
    do {
        std::vector<long long> pos(g.n, 0);
        for (int j = 1; j < g.n; ++j) {
            long long p = 0;
            for (int i = 0; i < j; ++i) p = std::max(p, pos[i] + g.at(perm[i], perm[j]));
            pos[j] = p;
        }
        best = std::min(best, pos[g.n - 1]);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Minimum achievable index span by direct search over assignments with
// indices in [1, cap]; handles sparse graphs and zero-weight pairs.
inline long long min_span_dfs(const DenseGraph& g, int cap) {
    std::vector<int> index(g.n, 0);
    long long best = std::numeric_limits<long long>::max();
    auto dfs = [&](auto&& self, int v, int lo, int hi) -> void {
        if (v == g.n) {
            best = std::min(best, static_cast<long long>(hi - lo));
            return;
        }
        for (int k = 1; k <= cap; ++k) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (std::abs(index[u] - k) < g.at(u, v)) ok = false;
            if (!ok) continue;
            int nlo = v == 0 ? k : std::min(lo, k);
            int nhi = v == 0 ? k : std::max(hi, k);
            if (nhi - nlo >= best) continue;
            index[v] = k;
            self(self, v + 1, nlo, nhi);
        }
    };
    dfs(dfs, 0, 0, 0);
    return best;
}

// Minimum number of distinct indices over all feasible assignments with
// indices in [1, n_f]; branch and bound on the distinct count.
inline int min_used_bruteforce(const DenseGraph& g, int n_f) {
    std::vector<int> index(g.n, 0);
    int best = g.n + 1;
    auto dfs = [&](auto&& self, int v, int used) -> void {
        if (used >= best) return;
        if (v == g.n) {
            best = used;
            return;
        }
        for (int k = 1; k <= n_f; ++k) {
            bool ok = true;
            bool is_new = true;
            for (int u = 0; u < v && ok; ++u) {
                if (std::abs(index[u] - k) < g.at(u, v)) ok = false;
                if (index[u] == k) is_new = false;
            }
            if (!ok) continue;
            index[v] = k;
            self(self, v + 1, used + (is_new ? 1 : 0));
        }
        index[v] = 0;
    };
    dfs(dfs, 0, 0);
    return best <= g.n ? best : -1;  // -1: infeasible
}

// Closed-form NFD of two identical rectangular masks of width w.
inline double rect_nfd_closed_form(double w, double delta_f) {
    double overlap = std::max(0.0, w - delta_f);
    if (overlap <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(w / overlap);
}

// Band-count oracle: walk i upward until the band no longer fits.
inline int plan_count_loop(double f_start, double f_end, double bandwidth, double step) {
    int count = 0;
    for (int i = 1;; ++i) {
        double center = f_start + bandwidth / 2.0 + (i - 1) * step;
        if (center + bandwidth / 2.0 > f_end + 1e-9) break;
        count = i;
    }
    return count;
}

}  // namespace oracle
