#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fap/graph.hpp"
#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/rng.hpp"

namespace fap {

enum class Strategy { hedge, cog, hybrid, ga };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct SolverConfig {
    Strategy strategy = Strategy::hedge;
    int n_cog = 0;                        // hybrid switch point
    int replications = 1;
    std::uint64_t seed = 1;
    double balancing_factor = 0.5;        // BF in [0, 1]
    std::optional<double> range_cap_mhz;  // T_R
    int max_rollbacks = -1;               // < 0: default 2 * N_l
    bool randomize = true;                // ordering enhancement
    bool weighted_degree = false;         // order vertices by incident weight sum
    double time_limit_s = 0.0;            // 0: no limit on enhanced_solve
};

// Infeasibility is a value, not an exception: the blocking link and its
// constraint neighbors identify where the assignment got stuck.
struct SolveResult {
    std::optional<Assignment> assignment;
    int blocking_link = -1;
    std::vector<int> blocking_neighbors;

    bool feasible() const { return assignment.has_value(); }
};

// Next frequency for `link` given a partial assignment: used indices first
// (usage count descending, index ascending), then unused indices ascending;
// the first candidate clearing every assigned partner's separation and the
// range cap wins.
std::optional<int> assign_freq_to(int link_id, const Assignment& partial, const SeparationMatrix& sep,
                                  const FrequencyPlan& plan,
                                  std::optional<double> range_cap_mhz = std::nullopt);

// Highest-degree-first greedy with rollback. With an rng, odd assignment
// steps draw from the highest-degree tier and even steps from the second
// tier; without one the run is fully deterministic.
SolveResult hedge(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                  Rng* rng = nullptr);

// Color first (ignoring separation magnitudes), then map color classes to
// frequencies. With an rng the class order of phase 2 is shuffled.
SolveResult cog(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                Rng* rng = nullptr);

// COG until n_cog links are assigned, HEDGE for the remainder.
SolveResult hybrid(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                   Rng* rng = nullptr);

SolveResult run_strategy(Strategy s, const SeparationMatrix& sep, const FrequencyPlan& plan,
                         const SolverConfig& config, Rng* rng = nullptr);

struct PoolEntry {
    Assignment assignment;
    SolutionMetrics metrics;
    std::uint64_t seed = 0;
    std::string strategy;
    double psi = 0.0;
    bool pareto = false;
};

struct SolutionPool {
    std::vector<PoolEntry> entries;
    int attempted = 0;
    int infeasible_runs = 0;
    int best = -1;

    bool empty() const { return entries.empty(); }
    const PoolEntry& best_entry() const;
};

// Normalized two-term score of Eq.-16 form; degenerate terms (max == min
// over the pool) contribute 0. Smaller is better.
std::vector<double> psi_scores(const std::vector<int>& used_counts, const std::vector<double>& ranges,
                               double balancing_factor);

double score(const SolutionPool& pool, int index, double balancing_factor);

// Recomputes psi, pareto flags and the best entry; call after edits.
void rescore_pool(SolutionPool& pool, double balancing_factor);

// Adds an entry unless an identical assignment is already present.
bool pool_insert(SolutionPool& pool, PoolEntry entry, double balancing_factor);

// Seeded replications of the base strategy; infeasible runs are dropped and
// the deduplicated pool is scored. Replication r uses seed ^ r.
SolutionPool enhanced_solve(const SeparationMatrix& sep, const FrequencyPlan& plan,
                            const SolverConfig& config, Strategy base);

}  // namespace fap
