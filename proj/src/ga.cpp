#include "fap/ga.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "fap/toolkit.hpp"

namespace fap {

namespace {

std::vector<int> genome_from_assignment(const Assignment& a, const SeparationMatrix& sep) {
    std::vector<int> genome(sep.n, 0);
    for (const auto& [id, k] : a.freq_index) genome[sep.index_of(id)] = k;
    for (int v = 0; v < sep.n; ++v)
        if (genome[v] == 0)
            throw Error(ErrorCode::bad_input, "seed solution misses link " + std::to_string(sep.link_ids[v]));
    return genome;
}

Assignment assignment_from_genome(const std::vector<int>& genome, const SeparationMatrix& sep) {
    Assignment a;
    for (int v = 0; v < sep.n; ++v) a.freq_index[sep.link_ids[v]] = genome[v];
    return a;
}

std::vector<int> distinct_sorted(const std::vector<int>& genome) {
    std::vector<int> u(genome);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

// (count, index) extremes of usage; ties go to the smaller index.
std::pair<int, int> usage_extremes(const std::vector<int>& genome) {
    std::map<int, int> usage;
    for (int k : genome) ++usage[k];
    int most = 0, least = 0, most_c = -1, least_c = -1;
    for (const auto& [k, c] : usage) {
        if (c > most_c) {
            most_c = c;
            most = k;
        }
        if (least_c < 0 || c < least_c) {
            least_c = c;
            least = k;
        }
    }
    return {most, least};
}

}  // namespace

void evaluate(Individual& ind, const SeparationMatrix& sep, double modifier) {
    const int n = sep.n;
    std::vector<char> failed(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int d = sep.at(i, j);
            if (d >= 1 && std::abs(ind.genome[i] - ind.genome[j]) < d) {
                failed[i] = 1;
                failed[j] = 1;
            }
        }
    }
    ind.n_fail = 0;
    for (char f : failed) ind.n_fail += f;
    ind.separation_ok = ind.n_fail == 0;
    auto used = distinct_sorted(ind.genome);
    ind.used = static_cast<int>(used.size());
    ind.span = used.empty() ? 0 : used.back() - used.front();
    ind.fitness = ind.used * (ind.n_fail + modifier);
}

double fitness(const Individual& ind, const SeparationMatrix& sep, double modifier) {
    Individual copy = ind;
    evaluate(copy, sep, modifier);
    return copy.fitness;
}

namespace {

enum class SeedOp { swap_links, change_most, change_least, add_frequency, permute };

Individual apply_seed_op(const Individual& seed, SeedOp op, const SeparationMatrix& sep,
                         const FrequencyPlan& plan, Rng& rng) {
    Individual out;
    out.genome = seed.genome;
    const int n = static_cast<int>(out.genome.size());
    switch (op) {
        case SeedOp::swap_links: {
            if (n >= 2) {
                int a = uniform_int(rng, 0, n - 1);
                int b = uniform_int(rng, 0, n - 2);
                if (b >= a) ++b;
                std::swap(out.genome[a], out.genome[b]);
            }
            break;
        }
        case SeedOp::change_most: {
            int v = uniform_int(rng, 0, n - 1);
            out.genome[v] = usage_extremes(out.genome).first;
            break;
        }
        case SeedOp::change_least: {
            int v = uniform_int(rng, 0, n - 1);
            out.genome[v] = usage_extremes(out.genome).second;
            break;
        }
        case SeedOp::add_frequency: {
            int v = uniform_int(rng, 0, n - 1);
            // Candidate indices not currently used anywhere and clearing
            // every separation against the other links.
            std::vector<std::pair<int, int>> iv;
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                int d = sep.at(v, u);
                if (d >= 1) iv.push_back({out.genome[u] - d + 1, out.genome[u] + d - 1});
            }
            std::sort(iv.begin(), iv.end());
            std::vector<std::pair<int, int>> merged;
            for (const auto& [a, b] : iv) {
                if (!merged.empty() && a <= merged.back().second + 1)
                    merged.back().second = std::max(merged.back().second, b);
                else
                    merged.push_back({a, b});
            }
            auto used = distinct_sorted(out.genome);
            std::vector<int> candidates;
            int k = 1;
            std::size_t mi = 0;
            auto ui = used.begin();
            while (k <= plan.count) {
                while (mi < merged.size() && merged[mi].second < k) ++mi;
                if (mi < merged.size() && merged[mi].first <= k) {
                    k = merged[mi].second + 1;
                    continue;
                }
                while (ui != used.end() && *ui < k) ++ui;
                if (ui != used.end() && *ui == k) {
                    ++k;
                    continue;
                }
                candidates.push_back(k);
                ++k;
            }
            if (!candidates.empty())
                out.genome[v] = candidates[uniform_int(rng, 0, static_cast<int>(candidates.size()) - 1)];
            break;
        }
        case SeedOp::permute:
            std::shuffle(out.genome.begin(), out.genome.end(), rng);
            break;
    }
    return out;
}

}  // namespace

std::vector<Individual> init_population(const Assignment& seed_solution, const GaConfig& config,
                                        const SeparationMatrix& sep, const FrequencyPlan& plan,
                                        Rng& rng) {
    if (config.population < 1) throw Error(ErrorCode::invalid_parameters, "population must be >= 1");
    Individual seed;
    seed.genome = genome_from_assignment(seed_solution, sep);
    evaluate(seed, sep, config.modifier);
    if (!seed.separation_ok) throw Error(ErrorCode::bad_input, "GA seed solution violates separations");

    std::vector<Individual> pop;
    pop.reserve(config.population);
    pop.push_back(seed);
    const SeedOp ops[] = {SeedOp::swap_links, SeedOp::change_most, SeedOp::change_least,
                          SeedOp::add_frequency, SeedOp::permute};
    while (static_cast<int>(pop.size()) < config.population) {
        SeedOp op = ops[uniform_int(rng, 0, 4)];
        Individual ind = apply_seed_op(seed, op, sep, plan, rng);
        evaluate(ind, sep, config.modifier);
        pop.push_back(std::move(ind));
    }
    return pop;
}

Individual crossover(const Individual& a, const Individual& b, Rng& rng) {
    if (a.genome.size() != b.genome.size())
        throw Error(ErrorCode::invalid_parameters, "crossover genome length mismatch");
    Individual child;
    child.genome.resize(a.genome.size());
    for (std::size_t i = 0; i < child.genome.size(); ++i)
        child.genome[i] = (rng() & 1) ? a.genome[i] : b.genome[i];
    return child;
}

Individual mutate(const Individual& ind, Rng& rng) {
    Individual out;
    out.genome = ind.genome;
    auto used = distinct_sorted(out.genome);
    if (used.size() < 2) return out;
    int pick = uniform_int(rng, 0, static_cast<int>(used.size()) - 2);
    int from = used[pick], to = used[pick + 1];
    for (int& k : out.genome)
        if (k == from) k = to;
    return out;
}

GaResult run_ga(const SeparationMatrix& sep, const FrequencyPlan& plan, const Assignment& seed_solution,
                const GaConfig& config, double balancing_factor, std::optional<double> range_cap_mhz) {
    if (config.population < 2) throw Error(ErrorCode::invalid_parameters, "GA population must be >= 2");
    if (config.elite_fraction * config.population < 1.0)
        throw Error(ErrorCode::invalid_parameters, "elite_fraction * population must be >= 1");
    if (!(config.modifier > 0.0)) throw Error(ErrorCode::invalid_parameters, "modifier must be > 0");
    if (config.mutation_rate < 0.0 || config.mutation_rate > 1.0)
        throw Error(ErrorCode::invalid_parameters, "mutation rate must lie in [0, 1]");

    Rng rng(config.seed);
    GaResult result;
    std::set<std::vector<int>> seen;

    auto offer = [&](const Individual& ind) {
        ++result.pool.attempted;
        if (!ind.separation_ok) {
            ++result.pool.infeasible_runs;
            return;
        }
        if (!seen.insert(ind.genome).second) return;
        Assignment a = assignment_from_genome(ind.genome, sep);
        SolutionMetrics m = check_feasibility(a, sep, plan, range_cap_mhz);
        if (!m.feasible) {
            ++result.pool.infeasible_runs;
            return;
        }
        PoolEntry e;
        e.assignment = std::move(a);
        e.metrics = m;
        e.seed = config.seed;
        e.strategy = "ga";
        result.pool.entries.push_back(std::move(e));
    };

    if (config.generations == 0) {
        Individual seed;
        seed.genome = genome_from_assignment(seed_solution, sep);
        evaluate(seed, sep, config.modifier);
        offer(seed);
        result.best_fitness.push_back(seed.fitness);
        rescore_pool(result.pool, balancing_factor);
        return result;
    }

    std::vector<Individual> pop = init_population(seed_solution, config, sep, plan, rng);
    for (const auto& ind : pop) offer(ind);

    auto by_fitness = [](const Individual& a, const Individual& b) {
        if (a.fitness != b.fitness) return a.fitness < b.fitness;
        if (a.span != b.span) return a.span < b.span;
        return a.genome < b.genome;
    };

    std::sort(pop.begin(), pop.end(), by_fitness);
    result.best_fitness.push_back(pop.front().fitness);

    int elites = std::max(1, static_cast<int>(config.elite_fraction * config.population));
    for (int gen = 0; gen < config.generations; ++gen) {
        std::vector<Individual> next(pop.begin(), pop.begin() + std::min<std::size_t>(elites, pop.size()));
        while (static_cast<int>(next.size()) < config.population) {
            int pa = uniform_int(rng, 0, elites - 1);
            int pb = uniform_int(rng, 0, elites - 1);
            Individual child = crossover(pop[pa], pop[pb], rng);
            if (uniform_real(rng, 0.0, 1.0) < config.mutation_rate) child = mutate(child, rng);
            evaluate(child, sep, config.modifier);
            offer(child);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        std::sort(pop.begin(), pop.end(), by_fitness);
        result.best_fitness.push_back(pop.front().fitness);
    }

    rescore_pool(result.pool, balancing_factor);
    return result;
}

}  // namespace fap
