#pragma once

#include <utility>
#include <vector>

#include "fap/nfd.hpp"
#include "fap/rng.hpp"

namespace fap {

// Undirected constraint graph over link positions: one edge per unordered
// pair with quantized separation >= 1. Vertices can be removed and restored
// (solver rollback); degree always counts live neighbors only.
struct ConstraintGraph {
    int n = 0;
    std::vector<int> ids;                                 // vertex -> link id
    std::vector<std::vector<std::pair<int, int>>> adj;    // vertex -> (neighbor, weight)
    std::vector<char> alive;
    std::vector<int> degree;
    std::vector<long long> weighted_degree;  // sum of live incident weights
    int live_count = 0;
    long long live_edges = 0;

    static ConstraintGraph from_separation(const SeparationMatrix& sep);

    bool is_alive(int v) const { return alive[v] != 0; }
    int weight(int u, int v) const;

    // rank 1: uniformly random vertex of maximum live degree; rank 2: of the
    // second-distinct degree value (rank-1 tier when only one value exists).
    // Without an rng the lowest link id in the tier wins. Degree means edge
    // count by default; the weighted flag orders by incident weight sum.
    int highest_degree_vertex(int rank, Rng* rng, bool weighted = false) const;

    void remove_vertex(int v);
    void restore_vertex(int v);
};

}  // namespace fap
