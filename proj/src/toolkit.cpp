#include "fap/toolkit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <string>

namespace fap {

Topology generate_topology(const GeneratorConfig& config) {
    if (config.n_links < 1) throw Error(ErrorCode::invalid_parameters, "generator needs n_links >= 1");
    double diag = std::hypot(config.area_w_km, config.area_h_km);
    if (config.max_link_length_km > diag)
        throw Error(ErrorCode::invalid_parameters, "max link length exceeds the area diagonal");
    if (!(config.cluster_radius_km >= 0.0))
        throw Error(ErrorCode::invalid_parameters, "cluster radius must be >= 0");

    Rng rng(split_seed(config.seed, 0));
    int n_clusters = config.n_clusters > 0 ? config.n_clusters : std::max(1, config.n_links / 5);
    std::vector<std::pair<double, double>> centers(n_clusters);
    for (auto& c : centers) {
        c.first = uniform_real(rng, 0.0, config.area_w_km);
        c.second = uniform_real(rng, 0.0, config.area_h_km);
    }
    auto point_in_cluster = [&](int c) {
        double r = config.cluster_radius_km * std::sqrt(uniform_real(rng, 0.0, 1.0));
        double phi = uniform_real(rng, 0.0, 2.0 * M_PI);
        return std::pair<double, double>{centers[c].first + r * std::cos(phi),
                                         centers[c].second + r * std::sin(phi)};
    };

    Topology topo;
    const int kRetries = 2000;
    for (int i = 0; i < config.n_links; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kRetries && !placed; ++attempt) {
            int ca = uniform_int(rng, 0, n_clusters - 1);
            int cb = uniform_int(rng, 0, n_clusters - 1);
            auto [tx_x, tx_y] = point_in_cluster(ca);
            auto [rx_x, rx_y] = point_in_cluster(cb);
            double d = std::hypot(tx_x - rx_x, tx_y - rx_y);
            if (d <= 0.0 || d > config.max_link_length_km) continue;
            int tx_id = 2 * i, rx_id = 2 * i + 1;
            topo.nodes.push_back({tx_id, tx_x, tx_y});
            topo.nodes.push_back({rx_id, rx_x, rx_y});
            topo.links.push_back({i, tx_id, rx_id});
            placed = true;
        }
        if (!placed)
            throw Error(ErrorCode::placement_failure,
                        "could not place link " + std::to_string(i) + " within " +
                            std::to_string(kRetries) + " attempts");
    }
    if (config.bidirectional) {
        int base = config.n_links;
        for (int i = 0; i < config.n_links; ++i)
            topo.links.push_back({base + i, 2 * i + 1, 2 * i});
    }
    topo.validate();
    return topo;
}

SolutionMetrics check_feasibility(const Assignment& a, const SeparationMatrix& sep,
                                  const FrequencyPlan& plan, std::optional<double> range_cap_mhz) {
    SolutionMetrics m;
    const int n = sep.n;
    std::vector<int> index(n, 0);
    std::vector<char> failed(n, 0);

    for (const auto& [id, k] : a.freq_index) {
        bool known = false;
        for (int v = 0; v < n; ++v) {
            if (sep.link_ids[v] == id) {
                index[v] = k;
                known = true;
                break;
            }
        }
        if (!known) throw Error(ErrorCode::bad_input, "assignment names unknown link " + std::to_string(id));
    }

    // Exactly one in-plan frequency per link.
    for (int v = 0; v < n; ++v)
        if (index[v] < 1 || index[v] > plan.count) failed[v] = 1;

    // Pairwise separations.
    for (int i = 0; i < n; ++i) {
        if (index[i] < 1) continue;
        for (int j = i + 1; j < n; ++j) {
            if (index[j] < 1) continue;
            int d = sep.at(i, j);
            if (d >= 1 && std::abs(index[i] - index[j]) < d) {
                failed[i] = 1;
                failed[j] = 1;
            }
        }
    }

    int lo = 0, hi = 0;
    for (int v = 0; v < n; ++v) {
        if (index[v] < 1) continue;
        if (lo == 0 || index[v] < lo) lo = index[v];
        if (index[v] > hi) hi = index[v];
    }
    std::vector<int> used;
    for (int v = 0; v < n; ++v)
        if (index[v] >= 1) used.push_back(index[v]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    m.used_count = static_cast<int>(used.size());
    m.range_mhz = used.empty() ? 0.0 : (hi - lo) * plan.step + plan.bandwidth;

    // A violated range cap marks the extreme holders as failing, keeping
    // fail_count == 0 equivalent to feasibility.
    if (range_cap_mhz && !used.empty() && m.range_mhz > *range_cap_mhz + 1e-6) {
        for (int v = 0; v < n; ++v)
            if (index[v] == lo || index[v] == hi) failed[v] = 1;
    }

    for (char f : failed) m.fail_count += f;
    m.feasible = m.fail_count == 0;
    return m;
}

int worker_count() {
    const char* env = std::getenv("FAP_WORKERS");
    if (env == nullptr) return 1;
    int v = std::atoi(env);
    return v >= 1 ? v : 1;
}

namespace {

BenchmarkRecord run_one_record(const SeparationMatrix& sep, const FrequencyPlan& plan,
                               const BenchmarkConfig& config, Strategy method, double limit, int rep) {
    BenchmarkRecord rec;
    rec.method = strategy_name(method);
    rec.time_limit_s = limit;
    rec.replication = rep;
    rec.stream_seed = split_seed(config.seed, static_cast<std::uint64_t>(rep));

    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

    SolverConfig run_cfg = config.solver;
    run_cfg.randomize = true;

    int best_used = -1;
    double best_range = 0.0;
    for (int iter = 0;; ++iter) {
        if (config.max_iters > 0 && iter >= config.max_iters) break;
        if (limit > 0.0 && iter > 0 && elapsed() >= limit) break;
        std::uint64_t iter_seed = replication_seed(rec.stream_seed, static_cast<std::uint64_t>(iter));
        Rng rng(iter_seed);
        SolveResult res = run_strategy(method, sep, plan, run_cfg, &rng);
        rec.iterations = iter + 1;
        if (!res.feasible()) continue;
        SolutionMetrics m = check_feasibility(*res.assignment, sep, plan, run_cfg.range_cap_mhz);
        if (!m.feasible) continue;
        if (best_used < 0 || m.used_count < best_used ||
            (m.used_count == best_used && m.range_mhz < best_range)) {
            if (best_used < 0 || m.used_count < best_used) rec.trace.push_back({elapsed(), m.used_count});
            best_used = m.used_count;
            best_range = m.range_mhz;
        }
    }
    rec.wall_time_s = elapsed();
    rec.feasible = best_used >= 0;
    rec.used_count = std::max(best_used, 0);
    rec.range_mhz = best_range;
    return rec;
}

}  // namespace

std::vector<BenchmarkRecord> run_benchmark(const SeparationMatrix& sep, const FrequencyPlan& plan,
                                           const BenchmarkConfig& config) {
    if (config.methods.empty()) throw Error(ErrorCode::invalid_parameters, "benchmark needs methods");
    if (config.time_limits_s.empty())
        throw Error(ErrorCode::invalid_parameters, "benchmark needs time limits");
    if (!std::is_sorted(config.time_limits_s.begin(), config.time_limits_s.end()))
        throw Error(ErrorCode::invalid_parameters, "time limits must be ascending");
    if (config.replications < 1)
        throw Error(ErrorCode::invalid_parameters, "benchmark needs replications >= 1");

    struct Task {
        Strategy method;
        double limit;
        int rep;
    };
    std::vector<Task> tasks;
    for (Strategy m : config.methods)
        for (double limit : config.time_limits_s)
            for (int r = 0; r < config.replications; ++r) tasks.push_back({m, limit, r});

    std::vector<BenchmarkRecord> records(tasks.size());
    int workers = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t)
            records[t] = run_one_record(sep, plan, config, tasks[t].method, tasks[t].limit, tasks[t].rep);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> slots;
        for (int w = 0; w < workers; ++w) {
            slots.push_back(std::async(std::launch::async, [&] {
                while (true) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= tasks.size()) return;
                    records[t] =
                        run_one_record(sep, plan, config, tasks[t].method, tasks[t].limit, tasks[t].rep);
                }
            }));
        }
        for (auto& s : slots) s.get();
    }
    return records;
}

std::vector<BenchmarkSummary> summarize_benchmark(const std::vector<BenchmarkRecord>& records) {
    std::map<std::pair<std::string, double>, BenchmarkSummary> acc;
    for (const auto& r : records) {
        auto& s = acc[{r.method, r.time_limit_s}];
        s.method = r.method;
        s.time_limit_s = r.time_limit_s;
        ++s.total_runs;
        if (!r.feasible) continue;
        if (s.feasible_runs == 0) {
            s.min_used = r.used_count;
            s.max_used = r.used_count;
        }
        s.min_used = std::min(s.min_used, r.used_count);
        s.max_used = std::max(s.max_used, r.used_count);
        s.mean_used += r.used_count;
        ++s.feasible_runs;
    }
    std::vector<BenchmarkSummary> out;
    for (auto& [key, s] : acc) {
        if (s.feasible_runs > 0) s.mean_used /= s.feasible_runs;
        out.push_back(s);
    }
    return out;
}

}  // namespace fap
