#include "fap/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "fap/bounds.hpp"
#include "fap/toolkit.hpp"

namespace fap {

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::hedge: return "hedge";
        case Strategy::cog: return "cog";
        case Strategy::hybrid: return "hybrid";
        case Strategy::ga: return "ga";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "hedge") return Strategy::hedge;
    if (name == "cog") return Strategy::cog;
    if (name == "hybrid") return Strategy::hybrid;
    if (name == "ga") return Strategy::ga;
    throw Error(ErrorCode::bad_input, "unknown strategy '" + name + "'");
}

namespace {

struct Workspace {
    const SeparationMatrix& sep;
    const FrequencyPlan& plan;
    std::optional<double> range_cap;
    std::vector<int> assigned;  // position -> index, 0 = unassigned
    std::map<int, int> usage;   // index -> holder count
    int assigned_count = 0;

    Workspace(const SeparationMatrix& s, const FrequencyPlan& p, std::optional<double> cap)
        : sep(s), plan(p), range_cap(cap), assigned(s.n, 0) {}

    void assign(int v, int k) {
        assigned[v] = k;
        ++usage[k];
        ++assigned_count;
    }
    void unassign(int v) {
        int k = assigned[v];
        assigned[v] = 0;
        auto it = usage.find(k);
        if (--it->second == 0) usage.erase(it);
        --assigned_count;
    }
    int cur_min() const { return usage.begin()->first; }
    int cur_max() const { return usage.rbegin()->first; }
};

// Smallest admissible index for a set of vertices that will share one
// frequency. prefer_used walks the used indices first (Alg.-2 ordering);
// otherwise the plain ascending scan applies.
std::optional<int> pick_frequency(const Workspace& ws, const std::vector<int>& members,
                                  bool prefer_used) {
    int lo = 1, hi = ws.plan.count;
    if (ws.range_cap) {
        double cap = *ws.range_cap;
        if (ws.plan.bandwidth > cap + 1e-6) return std::nullopt;
        int max_span = static_cast<int>(std::floor((cap - ws.plan.bandwidth) / ws.plan.step + 1e-6));
        if (ws.assigned_count > 0) {
            lo = std::max(lo, ws.cur_max() - max_span);
            hi = std::min(hi, ws.cur_min() + max_span);
        }
    }
    if (lo > hi) return std::nullopt;

    std::vector<std::pair<int, int>> iv;  // forbidden [a, b]
    const int n = ws.sep.n;
    for (int v : members) {
        for (int u = 0; u < n; ++u) {
            int m = ws.assigned[u];
            if (m == 0 || u == v) continue;
            int d = ws.sep.at(v, u);
            if (d >= 1) iv.push_back({m - d + 1, m + d - 1});
        }
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<int, int>> merged;
    for (const auto& [a, b] : iv) {
        if (!merged.empty() && a <= merged.back().second + 1)
            merged.back().second = std::max(merged.back().second, b);
        else
            merged.push_back({a, b});
    }
    auto covered = [&](int k) {
        auto it = std::upper_bound(merged.begin(), merged.end(),
                                   std::make_pair(k, std::numeric_limits<int>::max()));
        return it != merged.begin() && (it - 1)->second >= k;
    };

    if (prefer_used) {
        std::vector<std::pair<int, int>> cand;  // (-count, index)
        cand.reserve(ws.usage.size());
        for (const auto& [k, c] : ws.usage) cand.push_back({-c, k});
        std::sort(cand.begin(), cand.end());
        for (const auto& [nc, k] : cand)
            if (k >= lo && k <= hi && !covered(k)) return k;
    }
    int k = lo;
    for (const auto& [a, b] : merged) {
        if (b < k) continue;
        if (a > k) break;
        k = b + 1;
    }
    if (k <= hi) return k;
    return std::nullopt;
}

int rollback_budget(const SolverConfig& config, int n_links) {
    return config.max_rollbacks >= 0 ? config.max_rollbacks : 2 * n_links;
}

SolveResult infeasible_at(const ConstraintGraph& g, int v) {
    SolveResult r;
    r.blocking_link = g.ids[v];
    for (const auto& [u, w] : g.adj[v]) r.blocking_neighbors.push_back(g.ids[u]);
    std::sort(r.blocking_neighbors.begin(), r.blocking_neighbors.end());
    return r;
}

SolveResult finish(const ConstraintGraph& g, const Workspace& ws) {
    SolveResult r;
    Assignment a;
    for (int v = 0; v < ws.sep.n; ++v)
        if (ws.assigned[v] != 0) a.freq_index[g.ids[v]] = ws.assigned[v];
    r.assignment = std::move(a);
    return r;
}

// Core HEDGE loop; also completes hybrid runs after the COG phase.
SolveResult hedge_loop(ConstraintGraph& g, Workspace& ws, const SolverConfig& config, Rng* rng,
                       int rollbacks) {
    while (g.live_count > 0) {
        int step_index = ws.assigned_count + 1;
        int rank = (rng != nullptr && step_index % 2 == 0) ? 2 : 1;
        int v = g.highest_degree_vertex(rank, rng, config.weighted_degree);
        auto k = pick_frequency(ws, {v}, true);
        if (k) {
            ws.assign(v, *k);
            g.remove_vertex(v);
            continue;
        }
        if (rollbacks == 0) return infeasible_at(g, v);
        --rollbacks;
        // Clear the blocking vertex's assigned neighbors and give it priority.
        for (const auto& [u, w] : g.adj[v]) {
            if (ws.assigned[u] != 0) {
                ws.unassign(u);
                g.restore_vertex(u);
            }
        }
        k = pick_frequency(ws, {v}, true);
        if (!k) return infeasible_at(g, v);
        ws.assign(v, *k);
        g.remove_vertex(v);
    }
    return finish(g, ws);
}

struct Coloring {
    std::vector<int> color;                 // position -> color, -1 uncolored
    std::vector<std::vector<int>> members;  // color ids double as first-use order

    explicit Coloring(int n) : color(n, -1) {}
};

void color_phase(ConstraintGraph& g, const SeparationMatrix& sep, Rng* rng, int stop_after,
                 bool weighted, Coloring& col) {
    int colored = 0;
    while (g.live_count > 0 && (stop_after < 0 || colored < stop_after)) {
        int v = g.highest_degree_vertex(1, rng, weighted);
        std::vector<std::pair<int, int>> cand;  // (-usage, color)
        cand.reserve(col.members.size());
        for (int c = 0; c < static_cast<int>(col.members.size()); ++c)
            cand.push_back({-static_cast<int>(col.members[c].size()), c});
        std::sort(cand.begin(), cand.end());
        int chosen = -1;
        for (const auto& [nu, c] : cand) {
            bool conflict = false;
            for (int u : col.members[c]) {
                if (sep.at(v, u) >= 1) {
                    conflict = true;
                    break;
                }
            }
            if (!conflict) {
                chosen = c;
                break;
            }
        }
        if (chosen < 0) {
            chosen = static_cast<int>(col.members.size());
            col.members.push_back({});
        }
        col.color[v] = chosen;
        col.members[chosen].push_back(v);
        g.remove_vertex(v);
        ++colored;
    }
}

bool frequency_phase(Workspace& ws, const Coloring& col, const ConstraintGraph& g, Rng* rng,
                     SolveResult& fail) {
    std::vector<int> order(col.members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (col.members[a].size() != col.members[b].size())
            return col.members[a].size() > col.members[b].size();
        return a < b;
    });
    if (rng != nullptr) std::shuffle(order.begin(), order.end(), *rng);

    for (int c : order) {
        auto k = pick_frequency(ws, col.members[c], false);
        if (!k) {
            fail = infeasible_at(g, col.members[c].front());
            return false;
        }
        for (int v : col.members[c]) ws.assign(v, *k);
    }
    return true;
}

}  // namespace

std::optional<int> assign_freq_to(int link_id, const Assignment& partial, const SeparationMatrix& sep,
                                  const FrequencyPlan& plan, std::optional<double> range_cap_mhz) {
    Workspace ws(sep, plan, range_cap_mhz);
    for (const auto& [id, k] : partial.freq_index) {
        if (k < 1 || k > plan.count)
            throw Error(ErrorCode::invalid_parameters, "assignment index outside plan");
        ws.assign(sep.index_of(id), k);
    }
    int v = sep.index_of(link_id);
    if (ws.assigned[v] != 0) throw Error(ErrorCode::invalid_parameters, "link already assigned");
    return pick_frequency(ws, {v}, true);
}

SolveResult hedge(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                  Rng* rng) {
    ConstraintGraph g = ConstraintGraph::from_separation(sep);
    Workspace ws(sep, plan, config.range_cap_mhz);
    return hedge_loop(g, ws, config, rng, rollback_budget(config, sep.n));
}

SolveResult cog(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                Rng* rng) {
    ConstraintGraph g = ConstraintGraph::from_separation(sep);
    Workspace ws(sep, plan, config.range_cap_mhz);
    Coloring col(sep.n);
    color_phase(g, sep, rng, -1, config.weighted_degree, col);
    SolveResult fail;
    if (!frequency_phase(ws, col, g, rng, fail)) return fail;
    return finish(g, ws);
}

SolveResult hybrid(const SeparationMatrix& sep, const FrequencyPlan& plan, const SolverConfig& config,
                   Rng* rng) {
    if (config.n_cog < 0 || config.n_cog > sep.n)
        throw Error(ErrorCode::invalid_parameters, "n_cog outside [0, N_l]");
    if (config.n_cog == 0) return hedge(sep, plan, config, rng);
    if (config.n_cog >= sep.n) return cog(sep, plan, config, rng);

    ConstraintGraph g = ConstraintGraph::from_separation(sep);
    Workspace ws(sep, plan, config.range_cap_mhz);
    Coloring col(sep.n);
    color_phase(g, sep, rng, config.n_cog, config.weighted_degree, col);
    SolveResult fail;
    if (!frequency_phase(ws, col, g, rng, fail)) return fail;
    return hedge_loop(g, ws, config, rng, rollback_budget(config, sep.n));
}

SolveResult run_strategy(Strategy s, const SeparationMatrix& sep, const FrequencyPlan& plan,
                         const SolverConfig& config, Rng* rng) {
    switch (s) {
        case Strategy::hedge: return hedge(sep, plan, config, rng);
        case Strategy::cog: return cog(sep, plan, config, rng);
        case Strategy::hybrid: return hybrid(sep, plan, config, rng);
        case Strategy::ga: break;
    }
    throw Error(ErrorCode::invalid_parameters, "ga is driven by run_ga, not run_strategy");
}

const PoolEntry& SolutionPool::best_entry() const {
    if (best < 0 || best >= static_cast<int>(entries.size()))
        throw Error(ErrorCode::bad_input, "empty solution pool");
    return entries[best];
}

std::vector<double> psi_scores(const std::vector<int>& used_counts, const std::vector<double>& ranges,
                               double balancing_factor) {
    if (used_counts.size() != ranges.size())
        throw Error(ErrorCode::invalid_parameters, "psi inputs must have equal length");
    std::vector<double> out(used_counts.size(), 0.0);
    if (used_counts.empty()) return out;
    auto [u_min_it, u_max_it] = std::minmax_element(used_counts.begin(), used_counts.end());
    auto [r_min_it, r_max_it] = std::minmax_element(ranges.begin(), ranges.end());
    double u_min = *u_min_it, u_span = *u_max_it - *u_min_it;
    double r_min = *r_min_it, r_span = *r_max_it - *r_min_it;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double u_term = u_span > 0.0 ? (used_counts[i] - u_min) / u_span : 0.0;
        double r_term = r_span > 0.0 ? (ranges[i] - r_min) / r_span : 0.0;
        out[i] = balancing_factor * u_term + (1.0 - balancing_factor) * r_term;
    }
    return out;
}

double score(const SolutionPool& pool, int index, double balancing_factor) {
    if (pool.empty()) throw Error(ErrorCode::invalid_parameters, "score on empty pool");
    std::vector<int> used;
    std::vector<double> ranges;
    for (const auto& e : pool.entries) {
        used.push_back(e.metrics.used_count);
        ranges.push_back(e.metrics.range_mhz);
    }
    return psi_scores(used, ranges, balancing_factor)[index];
}

void rescore_pool(SolutionPool& pool, double balancing_factor) {
    pool.best = -1;
    if (pool.entries.empty()) return;
    std::vector<int> used;
    std::vector<double> ranges;
    for (const auto& e : pool.entries) {
        used.push_back(e.metrics.used_count);
        ranges.push_back(e.metrics.range_mhz);
    }
    auto psi = psi_scores(used, ranges, balancing_factor);
    for (std::size_t i = 0; i < psi.size(); ++i) pool.entries[i].psi = psi[i];

    // Dominance sweep over (used, range) in one sorted pass.
    std::vector<int> order(pool.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (used[a] != used[b]) return used[a] < used[b];
        return ranges[a] < ranges[b];
    });
    double best_below = std::numeric_limits<double>::infinity();  // min range among smaller used
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        double group_min = ranges[order[i]];
        while (j < order.size() && used[order[j]] == used[order[i]]) {
            int e = order[j];
            bool dominated = best_below <= ranges[e] || group_min < ranges[e];
            pool.entries[e].pareto = !dominated;
            ++j;
        }
        best_below = std::min(best_below, group_min);
        i = j;
    }

    for (std::size_t i = 0; i < pool.entries.size(); ++i) {
        if (pool.best < 0) {
            pool.best = static_cast<int>(i);
            continue;
        }
        const auto& a = pool.entries[i];
        const auto& b = pool.entries[pool.best];
        auto key = [](const PoolEntry& e) {
            return std::make_tuple(e.psi, e.metrics.used_count, e.metrics.range_mhz);
        };
        if (key(a) < key(b)) pool.best = static_cast<int>(i);
    }
}

namespace {

std::vector<std::pair<int, int>> pool_key(const Assignment& a) {
    return {a.freq_index.begin(), a.freq_index.end()};
}

}  // namespace

bool pool_insert(SolutionPool& pool, PoolEntry entry, double balancing_factor) {
    auto key = pool_key(entry.assignment);
    for (const auto& e : pool.entries)
        if (pool_key(e.assignment) == key) return false;
    pool.entries.push_back(std::move(entry));
    rescore_pool(pool, balancing_factor);
    return true;
}

SolutionPool enhanced_solve(const SeparationMatrix& sep, const FrequencyPlan& plan,
                            const SolverConfig& config, Strategy base) {
    if (config.replications < 1)
        throw Error(ErrorCode::invalid_parameters, "replications must be >= 1");
    if (config.balancing_factor < 0.0 || config.balancing_factor > 1.0)
        throw Error(ErrorCode::invalid_parameters, "balancing factor must lie in [0, 1]");
    SolutionPool pool;
    std::set<std::vector<std::pair<int, int>>> seen;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < config.replications; ++r) {
        if (config.time_limit_s > 0.0 && r > 0) {
            double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (elapsed >= config.time_limit_s) break;
        }
        ++pool.attempted;
        std::uint64_t run_seed = replication_seed(config.seed, static_cast<std::uint64_t>(r));
        Rng rng(run_seed);
        SolveResult res = run_strategy(base, sep, plan, config, config.randomize ? &rng : nullptr);
        if (!res.feasible()) {
            ++pool.infeasible_runs;
            continue;
        }
        SolutionMetrics metrics = check_feasibility(*res.assignment, sep, plan, config.range_cap_mhz);
        assert(metrics.feasible);
        if (!metrics.feasible) {
            ++pool.infeasible_runs;
            continue;
        }
        if (!seen.insert(pool_key(*res.assignment)).second) continue;
        PoolEntry e;
        e.assignment = std::move(*res.assignment);
        e.metrics = metrics;
        e.seed = run_seed;
        e.strategy = strategy_name(base);
        pool.entries.push_back(std::move(e));
    }
    rescore_pool(pool, config.balancing_factor);

#ifndef NDEBUG
    // Lower-bound sandwich on desk-scale instances.
    if (!pool.entries.empty() && sep.n <= 24) {
        ConstraintGraph g = ConstraintGraph::from_separation(sep);
        auto clique = clique_lower_bound(g, 0.5);
        auto mst = mst_bound(g);
        auto ham = hamiltonian_bound(g);
        for (const auto& e : pool.entries) {
            if (clique.confirmed) assert(clique.size <= e.metrics.used_count);
            if (ham.exact) {
                assert(mst.max_component <= ham.max_component);
                assert(ham.max_component <= e.assignment.span());
            }
        }
    }
#endif
    return pool;
}

}  // namespace fap
