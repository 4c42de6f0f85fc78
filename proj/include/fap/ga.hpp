#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/rng.hpp"
#include "fap/solvers.hpp"

namespace fap {

// Genome position = link position in the separation matrix; values are
// frequency indices in [1, N_f]. fitness = |A| * (N_fail + modifier),
// smaller is better; N_fail counts links with a violated separation.
struct Individual {
    std::vector<int> genome;
    double fitness = 0.0;
    bool separation_ok = false;
    int n_fail = 0;
    int used = 0;
    int span = 0;
};

struct GaConfig {
    int population = 50;
    int generations = 200;
    double modifier = 1.0;
    double mutation_rate = 0.2;
    double elite_fraction = 0.2;
    std::uint64_t seed = 1;
};

// Fills n_fail / used / span / fitness from the genome.
void evaluate(Individual& ind, const SeparationMatrix& sep, double modifier);
double fitness(const Individual& ind, const SeparationMatrix& sep, double modifier);

// Seed plus individuals produced by random swap, change (to the most- and
// least-used index), add-frequency and permutation operations. Infeasible
// offspring are kept; fitness penalizes them.
std::vector<Individual> init_population(const Assignment& seed_solution, const GaConfig& config,
                                        const SeparationMatrix& sep, const FrequencyPlan& plan,
                                        Rng& rng);

// Each gene copied from either parent with probability 1/2.
Individual crossover(const Individual& a, const Individual& b, Rng& rng);

// Merges a random used frequency (never the highest) into the next higher
// used one: |A| drops by exactly 1; a single-frequency genome is unchanged.
Individual mutate(const Individual& ind, Rng& rng);

struct GaResult {
    SolutionPool pool;
    std::vector<double> best_fitness;  // population best per generation
};

// Elitist generational loop seeded from a feasible solution. The returned
// pool holds every checker-verified feasible individual encountered,
// including the seed itself.
GaResult run_ga(const SeparationMatrix& sep, const FrequencyPlan& plan, const Assignment& seed_solution,
                const GaConfig& config, double balancing_factor = 0.5,
                std::optional<double> range_cap_mhz = std::nullopt);

}  // namespace fap
