#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/solvers.hpp"

namespace fap {

struct GeneratorConfig {
    double area_w_km = 100.0;
    double area_h_km = 100.0;
    int n_links = 1;
    double cluster_radius_km = 0.5;  // clusters are ~1 km across
    double max_link_length_km = 20.0;
    int n_clusters = -1;  // < 0: n_links / 5, at least 1
    std::uint64_t seed = 1;
    // Also emit the reverse direction of every link, reusing the same node
    // pair (the drawn-link convention where one drawn link is two system
    // links). Reverse pairs share nodes and are marked un-co-assignable by
    // the constraint derivation.
    bool bidirectional = false;
};

// Clustered random topology: cluster centers uniform in the area, nodes
// uniform in their cluster disc, one dedicated tx/rx node pair per link with
// length <= max_link_length. Deterministic under seed.
Topology generate_topology(const GeneratorConfig& config);

// Independent verifier: one index per link inside [1, N_f], every pairwise
// separation met, range cap honored. Shares no code with the solvers.
SolutionMetrics check_feasibility(const Assignment& a, const SeparationMatrix& sep,
                                  const FrequencyPlan& plan,
                                  std::optional<double> range_cap_mhz = std::nullopt);

struct BenchmarkRecord {
    std::string method;
    double time_limit_s = 0.0;
    int replication = 0;
    std::uint64_t stream_seed = 0;
    int used_count = 0;
    double range_mhz = 0.0;
    bool feasible = false;
    double wall_time_s = 0.0;
    int iterations = 0;
    std::vector<std::pair<double, int>> trace;  // (elapsed_s, best used so far)
};

struct BenchmarkConfig {
    std::vector<Strategy> methods;
    std::vector<double> time_limits_s;  // ascending
    int replications = 1;
    std::uint64_t seed = 1;
    int max_iters = 0;  // 0: bounded by time only
    SolverConfig solver;  // n_cog, range cap, BF for the single runs
};

// For each (method, limit, replication): repeated seeded single runs within
// the wall-clock budget, tracking the best solution so far by used count
// (ties by range). The iteration seed stream depends only on (method,
// replication), so a longer budget replays a shorter one as a prefix.
std::vector<BenchmarkRecord> run_benchmark(const SeparationMatrix& sep, const FrequencyPlan& plan,
                                           const BenchmarkConfig& config);

struct BenchmarkSummary {
    std::string method;
    double time_limit_s = 0.0;
    int feasible_runs = 0;
    int total_runs = 0;
    double mean_used = 0.0;
    int min_used = 0;
    int max_used = 0;
};

std::vector<BenchmarkSummary> summarize_benchmark(const std::vector<BenchmarkRecord>& records);

// Worker count for benchmark replications; reads FAP_WORKERS, default 1.
int worker_count();

}  // namespace fap
