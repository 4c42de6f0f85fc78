#pragma once

#include <vector>

#include "fap/graph.hpp"
#include "fap/model.hpp"

namespace fap {

struct CliqueBound {
    int size = 0;
    // True when an explicit clique of this size was found; false means the
    // degree filter admitted a residual but exact confirmation timed out,
    // in which case `size` is only the filter value, not a certified w(G).
    bool confirmed = true;
    std::vector<int> witness;  // vertex positions, empty when unconfirmed
};

// Span lower bound in index units. Components are independent in frequency,
// so the usable bound on a solution's span is max_component; sum is reported
// alongside for connected graphs (where the two coincide).
struct RangeBound {
    long long sum = 0;
    long long max_component = 0;
    bool exact = true;
};

struct BoundsReport {
    int n_vertices = 0;
    long long n_edges = 0;
    int n_components = 0;
    CliqueBound clique;
    RangeBound mst;
    RangeBound ham;
    bool triangle_ok = false;        // metric completion within each component
    bool triangle_ok_edges = false;  // triangles made of real edges only
    // Triangle condition plus an exact Hamiltonian bound: H equals the
    // minimum achievable span.
    bool range_certificate = false;
    bool has_plan = false;
    double mst_mhz = 0.0;  // max_component converted to a range in MHz
    double ham_mhz = 0.0;
};

// Largest k certified by the degree filter (iteratively drop vertices with
// live degree < k-1, binary search on k) plus an exact k-clique confirmation
// capped at time_cap_s per k.
CliqueBound clique_lower_bound(const ConstraintGraph& g, double time_cap_s = 2.0);

// Per-component minimum spanning tree over the metric completion (pairs
// without an edge cost 0).
RangeBound mst_bound(const ConstraintGraph& g);

// Per-component minimum-weight Hamiltonian path over the metric completion,
// by subset DP for components up to exact_limit vertices; larger components
// fall back to their MST value with exact = false.
RangeBound hamiltonian_bound(const ConstraintGraph& g, int exact_limit = 16);

// True iff within every component, every vertex triple of the metric
// completion satisfies the triangle inequality.
bool triangle_check(const ConstraintGraph& g);

BoundsReport compute_bounds(const ConstraintGraph& g, const FrequencyPlan* plan = nullptr,
                            int exact_limit = 16, double clique_cap_s = 2.0);

}  // namespace fap
