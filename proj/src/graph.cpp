#include "fap/graph.hpp"

#include <algorithm>
#include <string>

namespace fap {

ConstraintGraph ConstraintGraph::from_separation(const SeparationMatrix& sep) {
    ConstraintGraph g;
    g.n = sep.n;
    g.ids = sep.link_ids;
    g.adj.assign(g.n, {});
    g.alive.assign(g.n, 1);
    g.degree.assign(g.n, 0);
    g.weighted_degree.assign(g.n, 0);
    g.live_count = g.n;
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            int w = sep.at(i, j);
            if (w >= 1) {
                g.adj[i].push_back({j, w});
                g.adj[j].push_back({i, w});
                ++g.degree[i];
                ++g.degree[j];
                g.weighted_degree[i] += w;
                g.weighted_degree[j] += w;
                ++g.live_edges;
            }
        }
    }
    return g;
}

int ConstraintGraph::weight(int u, int v) const {
    for (const auto& [nb, w] : adj[u])
        if (nb == v) return w;
    return 0;
}

int ConstraintGraph::highest_degree_vertex(int rank, Rng* rng, bool weighted) const {
    if (live_count == 0) throw Error(ErrorCode::empty_graph, "vertex selection on empty graph");
    if (rank != 1 && rank != 2) throw Error(ErrorCode::invalid_parameters, "rank must be 1 or 2");

    auto deg = [&](int v) { return weighted ? weighted_degree[v] : static_cast<long long>(degree[v]); };
    long long d1 = -1, d2 = -1;  // highest and second-distinct live degrees
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        long long d = deg(v);
        if (d > d1) {
            d2 = d1;
            d1 = d;
        } else if (d < d1 && d > d2) {
            d2 = d;
        }
    }
    long long tier = (rank == 1 || d2 < 0) ? d1 : d2;

    if (rng == nullptr) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (alive[v] && deg(v) == tier && (best < 0 || ids[v] < ids[best])) best = v;
        return best;
    }
    int count = 0;
    for (int v = 0; v < n; ++v)
        if (alive[v] && deg(v) == tier) ++count;
    int pick = uniform_int(*rng, 0, count - 1);
    for (int v = 0; v < n; ++v) {
        if (alive[v] && deg(v) == tier && pick-- == 0) return v;
    }
    throw Error(ErrorCode::empty_graph, "tier scan exhausted");  // unreachable
}

void ConstraintGraph::remove_vertex(int v) {
    if (v < 0 || v >= n || !alive[v])
        throw Error(ErrorCode::unknown_vertex, "remove of dead or unknown vertex " + std::to_string(v));
    alive[v] = 0;
    --live_count;
    for (const auto& [nb, w] : adj[v]) {
        if (alive[nb]) {
            --degree[nb];
            weighted_degree[nb] -= w;
            --live_edges;
        }
    }
    degree[v] = 0;
    weighted_degree[v] = 0;
}

void ConstraintGraph::restore_vertex(int v) {
    if (v < 0 || v >= n || alive[v])
        throw Error(ErrorCode::unknown_vertex, "restore of live or unknown vertex " + std::to_string(v));
    alive[v] = 1;
    ++live_count;
    int d = 0;
    long long wd = 0;
    for (const auto& [nb, w] : adj[v]) {
        if (alive[nb]) {
            ++degree[nb];
            weighted_degree[nb] += w;
            ++d;
            wd += w;
            ++live_edges;
        }
    }
    degree[v] = d;
    weighted_degree[v] = wd;
}

}  // namespace fap
