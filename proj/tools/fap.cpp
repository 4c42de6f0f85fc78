#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fap/bounds.hpp"
#include "fap/ga.hpp"
#include "fap/io.hpp"
#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/propagation.hpp"
#include "fap/solvers.hpp"
#include "fap/toolkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBadInput = 3;

struct PlanFlags {
    double f_start = 7007.5;
    double f_end = 7607.5;
    double bandwidth = 15.0;
    double step = 0.15;

    void attach(CLI::App* cmd) {
        cmd->add_option("--f-start", f_start, "Plan start frequency [MHz]");
        cmd->add_option("--f-end", f_end, "Plan end frequency [MHz]");
        cmd->add_option("--bandwidth", bandwidth, "Band bandwidth B [MHz]");
        cmd->add_option("--delta-f", step, "Band grid step [MHz]");
    }
    fap::FrequencyPlan build() const { return fap::build_plan(f_start, f_end, bandwidth, step); }
};

struct InstanceFlags {
    std::string csv;
    std::string celar;
    PlanFlags plan_flags;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* owner) {
        cmd = owner;
        auto* a = cmd->add_option("-i,--input", csv, "Separation CSV (from `constraints`)");
        auto* b = cmd->add_option("--celar", celar, "CELAR-style constraint file (i j > s)");
        a->excludes(b);
        plan_flags.attach(cmd);
    }

    fap::SeparationFile load() const {
        bool plan_overridden = cmd->count("--f-start") || cmd->count("--f-end") ||
                               cmd->count("--bandwidth") || cmd->count("--delta-f");
        if (!celar.empty()) {
            fap::SeparationFile f;
            f.sep = fap::load_celar_constraints(celar);
            f.plan = plan_flags.build();
            return f;
        }
        if (csv.empty()) throw fap::Error(fap::ErrorCode::bad_input, "need --input or --celar");
        fap::SeparationFile f = fap::load_separation_csv(csv);
        if (plan_overridden) f.plan = plan_flags.build();
        return f;
    }
};

std::uint64_t parse_seed(const std::string& s) { return std::stoull(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency assignment toolkit: NFD-derived separation constraints, greedy and "
                 "genetic solvers, and combinatorial bounds"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate a clustered random topology");
    fap::GeneratorConfig gen_cfg;
    PlanFlags gen_plan;
    std::string gen_out = "topology.json";
    std::string gen_seed = "1";
    gen->add_option("--n-links", gen_cfg.n_links, "Number of directed links")->required();
    gen->add_option("--area", gen_cfg.area_w_km, "Square area side [km]");
    gen->add_option("--clusters", gen_cfg.n_clusters, "Cluster count (default n_links/5)");
    gen->add_option("--cluster-radius", gen_cfg.cluster_radius_km, "Cluster radius [km]");
    gen->add_option("--max-link-length", gen_cfg.max_link_length_km, "Maximum link length [km]");
    gen->add_flag("--bidirectional", gen_cfg.bidirectional,
                  "Emit the reverse link of every pair (shared nodes)");
    gen->add_option("--seed", gen_seed, "Topology seed");
    gen->add_option("-o,--output", gen_out, "Output topology JSON");
    gen_plan.attach(gen);
    gen->callback([&] {
        gen_cfg.area_h_km = gen_cfg.area_w_km;
        gen_cfg.seed = parse_seed(gen_seed);
        fap::TopologyFile t;
        t.topology = fap::generate_topology(gen_cfg);
        t.plan = gen_plan.build();
        t.seed = gen_cfg.seed;
        fap::save_topology(gen_out, t);
        std::cout << "wrote " << gen_out << ": " << t.topology.nodes.size() << " nodes, "
                  << t.topology.links.size() << " links, N_f=" << t.plan->count << "\n";
    });

    // --- constraints ---------------------------------------------------------
    auto* con = app.add_subcommand("constraints", "Derive the separation matrix from a topology");
    std::string con_in, con_out = "separation.csv";
    std::string con_pattern, con_tx_mask, con_rx_mask;
    double con_floor = -120.0;
    double con_f_ref = 0.0;
    double con_tx_power_dbm = 30.0;
    double con_tx_power_w = 0.0;
    double con_sensitivity = -79.12;
    con->add_option("-i,--input", con_in, "Topology JSON")->required();
    con->add_option("-o,--output", con_out, "Output separation CSV");
    con->add_option("--pattern", con_pattern, "Antenna pattern file (angle_deg attenuation_dB)");
    con->add_option("--tx-mask", con_tx_mask, "Transmitter mask file (offset_MHz level_dB)");
    con->add_option("--rx-mask", con_rx_mask, "Receiver filter file (offset_MHz level_dB)");
    con->add_option("--mask-floor", con_floor, "Mask floor [dB]");
    con->add_option("--f-ref", con_f_ref, "Path-loss reference frequency [MHz], default mid-band");
    auto* dbm_opt = con->add_option("--tx-power-dbm", con_tx_power_dbm, "Transmit power [dBm]");
    con->add_option("--tx-power-w", con_tx_power_w, "Transmit power [W], converted on ingestion")
        ->excludes(dbm_opt);
    con->add_option("--sensitivity-dbm", con_sensitivity, "Receiver sensitivity T_s [dBm]");
    con->callback([&] {
        if (con_tx_power_w > 0.0) con_tx_power_dbm = 10.0 * std::log10(con_tx_power_w) + 30.0;
        fap::TopologyFile t = fap::load_topology(con_in);
        if (!t.plan) throw fap::Error(fap::ErrorCode::bad_input, "topology file carries no plan block");
        fap::AntennaPattern pattern = con_pattern.empty() ? fap::AntennaPattern::default_pattern()
                                                          : fap::load_antenna_pattern(con_pattern);
        fap::SpectralMask tx_mask = con_tx_mask.empty()
                                        ? fap::SpectralMask::default_mask(t.plan->bandwidth, con_floor)
                                        : fap::load_mask(con_tx_mask, con_floor);
        fap::SpectralMask rx_mask = con_rx_mask.empty() ? tx_mask : fap::load_mask(con_rx_mask, con_floor);
        double f_ref = con_f_ref > 0.0 ? con_f_ref : t.plan->mid_band();
        fap::LinkBudgetParams params{con_tx_power_dbm, con_sensitivity};
        fap::InterferenceMatrix di = fap::build_interference_matrix(t.topology, f_ref, params, pattern);
        fap::NfdCurve curve =
            fap::build_nfd_curve(tx_mask, rx_mask, t.plan->step, (t.plan->count - 1) * t.plan->step);
        fap::SeparationMatrix sep = fap::build_separation_matrix(di, curve, *t.plan);
        fap::save_separation_csv(con_out, sep, *t.plan, t.seed);
        std::cout << "wrote " << con_out << ": " << sep.n << " links, " << sep.constraint_count()
                  << " constraints, " << sep.sentinel_pairs() << " sentinel pair(s)\n";
    });

    // --- solve ---------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Run a solver and emit the best assignment");
    InstanceFlags solve_in;
    solve_in.attach(solve);
    std::string solve_strategy = "hedge";
    std::string solve_seed = "1";
    fap::SolverConfig s_cfg;
    fap::GaConfig ga_cfg;
    double solve_range_cap = 0.0;
    bool solve_raw = false;
    std::string emit_pool, emit_best;
    solve->add_option("--strategy", solve_strategy, "hedge | cog | hybrid | ga");
    solve->add_option("--n-cog", s_cfg.n_cog, "Hybrid: links assigned by COG first");
    solve->add_option("--replications", s_cfg.replications, "Randomized replications");
    solve->add_option("--seed", solve_seed, "Master seed");
    solve->add_option("--bf", s_cfg.balancing_factor, "Balancing factor BF in [0,1]");
    solve->add_option("--range-cap-mhz", solve_range_cap, "Range constraint T_R [MHz], 0 = none");
    solve->add_option("--time-limit-s", s_cfg.time_limit_s, "Wall-clock budget, 0 = none");
    solve->add_option("--max-rollbacks", s_cfg.max_rollbacks, "HEDGE rollback budget, -1 = 2*N_l");
    solve->add_flag("--raw", solve_raw, "Disable the randomized ordering enhancement");
    solve->add_flag("--weighted-degree", s_cfg.weighted_degree,
                    "Order vertices by incident separation sum instead of edge count");
    solve->add_option("--emit-pool", emit_pool, "Write the scored solution pool CSV");
    solve->add_option("--emit-best", emit_best, "Write the best assignment JSON");
    solve->add_option("--ga-pop", ga_cfg.population, "GA population");
    solve->add_option("--ga-gens", ga_cfg.generations, "GA generations");
    solve->add_option("--ga-modifier", ga_cfg.modifier, "GA fitness modifier");
    solve->add_option("--ga-mutation", ga_cfg.mutation_rate, "GA mutation rate");
    solve->add_option("--ga-elite", ga_cfg.elite_fraction, "GA elite fraction");
    solve->callback([&] {
        fap::SeparationFile inst = solve_in.load();
        s_cfg.seed = parse_seed(solve_seed);
        s_cfg.randomize = !solve_raw;
        if (solve_range_cap > 0.0) s_cfg.range_cap_mhz = solve_range_cap;
        fap::Strategy strat = fap::parse_strategy(solve_strategy);

        fap::SolutionPool pool;
        if (strat == fap::Strategy::ga) {
            fap::SolverConfig seed_cfg = s_cfg;
            seed_cfg.randomize = false;
            fap::SolveResult seed_run = fap::hedge(inst.sep, inst.plan, seed_cfg);
            if (!seed_run.feasible()) {
                std::cerr << "infeasible: HEDGE seed blocked at link " << seed_run.blocking_link << "\n";
                std::exit(kExitInfeasible);
            }
            ga_cfg.seed = s_cfg.seed;
            fap::GaResult ga = fap::run_ga(inst.sep, inst.plan, *seed_run.assignment, ga_cfg,
                                           s_cfg.balancing_factor, s_cfg.range_cap_mhz);
            pool = std::move(ga.pool);
        } else {
            pool = fap::enhanced_solve(inst.sep, inst.plan, s_cfg, strat);
        }
        if (pool.empty()) {
            std::cerr << "infeasible: no replication produced a feasible assignment\n";
            std::exit(kExitInfeasible);
        }
        const fap::PoolEntry& best = pool.best_entry();
        std::cout << "pool: " << pool.entries.size() << " distinct feasible solution(s) from "
                  << pool.attempted << " run(s)\n";
        std::cout << "best: used=" << best.metrics.used_count << " range=" << best.metrics.range_mhz
                  << " MHz psi=" << best.psi << " seed=" << best.seed << "\n";
        if (!emit_pool.empty()) fap::save_pool_csv(emit_pool, pool, s_cfg.seed);
        if (!emit_best.empty())
            fap::save_assignment(emit_best, best.assignment, best.metrics, best.strategy, best.seed);
    });

    // --- bound ----------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "Lower bounds and the range-optimality certificate");
    InstanceFlags bound_in;
    bound_in.attach(bound);
    int bound_exact_limit = 16;
    double bound_clique_cap = 2.0;
    std::string bound_csv;
    bound->add_option("--exact-limit", bound_exact_limit,
                      "Largest component solved by the exact Hamiltonian DP");
    bound->add_option("--clique-cap-s", bound_clique_cap, "Time cap for exact clique confirmation");
    bound->add_option("--csv", bound_csv, "Also write the report as a CSV row");
    bound->callback([&] {
        fap::SeparationFile inst = bound_in.load();
        fap::ConstraintGraph g = fap::ConstraintGraph::from_separation(inst.sep);
        fap::BoundsReport r = fap::compute_bounds(g, &inst.plan, bound_exact_limit, bound_clique_cap);
        std::cout << fap::bounds_report_text(r);
        if (!bound_csv.empty()) fap::save_bounds_csv(bound_csv, r, inst.seed);
    });

    // --- check ----------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Verify an assignment with the independent checker");
    InstanceFlags check_in;
    check_in.attach(check);
    std::string check_assignment;
    double check_range_cap = 0.0;
    check->add_option("-a,--assignment", check_assignment, "Assignment JSON")->required();
    check->add_option("--range-cap-mhz", check_range_cap, "Range constraint T_R [MHz], 0 = none");
    check->callback([&] {
        fap::SeparationFile inst = check_in.load();
        fap::Assignment a = fap::load_assignment(check_assignment);
        std::optional<double> cap;
        if (check_range_cap > 0.0) cap = check_range_cap;
        fap::SolutionMetrics m = fap::check_feasibility(a, inst.sep, inst.plan, cap);
        std::cout << "feasible=" << (m.feasible ? "true" : "false") << " used=" << m.used_count
                  << " range=" << m.range_mhz << " MHz n_fail=" << m.fail_count << "\n";
        if (!m.feasible) std::exit(kExitInfeasible);
    });

    // --- bench ----------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Time-limited benchmark with best-so-far traces");
    InstanceFlags bench_in;
    bench_in.attach(bench);
    std::vector<std::string> bench_methods{"hedge"};
    std::vector<double> bench_limits{1.0};
    fap::BenchmarkConfig b_cfg;
    std::string bench_seed = "1";
    double bench_range_cap = 0.0;
    std::string bench_out = "bench.csv", bench_summary;
    bench->add_option("--methods", bench_methods, "Strategies to benchmark")->delimiter(',');
    bench->add_option("--time-limits", bench_limits, "Ascending wall-clock budgets [s]")->delimiter(',');
    bench->add_option("--replications", b_cfg.replications, "Replications per (method, limit)");
    bench->add_option("--seed", bench_seed, "Master seed");
    bench->add_option("--max-iters", b_cfg.max_iters, "Iteration cap per record, 0 = time only");
    bench->add_option("--n-cog", b_cfg.solver.n_cog, "Hybrid switch point");
    bench->add_option("--range-cap-mhz", bench_range_cap, "Range constraint T_R [MHz], 0 = none");
    bench->add_option("-o,--output", bench_out, "Records CSV");
    bench->add_option("--summary", bench_summary, "Summary CSV (mean/min/max per method and limit)");
    bench->callback([&] {
        fap::SeparationFile inst = bench_in.load();
        b_cfg.seed = parse_seed(bench_seed);
        if (bench_range_cap > 0.0) b_cfg.solver.range_cap_mhz = bench_range_cap;
        for (const auto& m : bench_methods) b_cfg.methods.push_back(fap::parse_strategy(m));
        b_cfg.time_limits_s = bench_limits;
        auto records = fap::run_benchmark(inst.sep, inst.plan, b_cfg);
        fap::save_benchmark_csv(bench_out, records, b_cfg.seed);
        if (!bench_summary.empty())
            fap::save_benchmark_summary_csv(bench_summary, fap::summarize_benchmark(records), b_cfg.seed);
        int feasible = 0;
        for (const auto& r : records) feasible += r.feasible ? 1 : 0;
        std::cout << "wrote " << bench_out << ": " << records.size() << " record(s), " << feasible
                  << " feasible\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    } catch (const fap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
