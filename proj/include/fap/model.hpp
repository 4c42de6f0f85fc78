#pragma once

#include <map>
#include <vector>

#include "fap/errors.hpp"

namespace fap {

struct Node {
    int id = 0;
    double x = 0.0;  // km
    double y = 0.0;  // km
};

// Directed communication link tx -> rx.
struct Link {
    int id = 0;
    int tx = 0;
    int rx = 0;
};

struct Topology {
    std::vector<Node> nodes;
    std::vector<Link> links;

    const Node& node(int id) const;
    const Link& link(int id) const;

    // Enforces: unique ids, finite coordinates, tx != rx, endpoints exist,
    // and at most one outgoing / one incoming link per node.
    void validate() const;
};

// Overlapping band grid: band i has center f_start + B/2 + (i-1)*step,
// i = 1..count. count is the largest i whose band still fits below f_end.
struct FrequencyPlan {
    double f_start = 0.0;    // MHz
    double f_end = 0.0;      // MHz
    double bandwidth = 0.0;  // MHz (B)
    double step = 0.0;       // MHz (delta_f)
    int count = 0;           // N_f

    double center_frequency(int index) const;  // 1-based
    double mid_band() const { return center_frequency((count + 1) / 2); }
};

FrequencyPlan build_plan(double f_start, double f_end, double bandwidth, double step);

// Link id -> frequency index in [1, N_f].
struct Assignment {
    std::map<int, int> freq_index;

    bool empty() const { return freq_index.empty(); }
    std::size_t size() const { return freq_index.size(); }

    // Sorted distinct assigned indices.
    std::vector<int> used_indices() const;
    int used_count() const { return static_cast<int>(used_indices().size()); }
    // max - min in index units; 0 for a single index.
    int span() const;
};

// R = (max - min) * delta_f + B, in MHz.
double range_of(const Assignment& a, const FrequencyPlan& plan);

struct SolutionMetrics {
    int used_count = 0;
    double range_mhz = 0.0;
    bool feasible = false;
    int fail_count = 0;
};

}  // namespace fap
