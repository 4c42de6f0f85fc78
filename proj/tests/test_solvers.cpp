#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "fap/solvers.hpp"
#include "fap/toolkit.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fap;
using testutil::make_plan;
using testutil::make_sep;

namespace {

// Reference scan for assign_freq_to: first k in 1..N_f clearing every
// assigned partner, used indices (by usage desc, index asc) tried first.
std::optional<int> assign_scan(int link, const Assignment& partial, const SeparationMatrix& sep,
                               const FrequencyPlan& plan) {
    std::map<int, int> usage;
    for (const auto& [id, k] : partial.freq_index) ++usage[k];
    auto admissible = [&](int k) {
        for (const auto& [id, m] : partial.freq_index) {
            int d = sep.at(sep.index_of(link), sep.index_of(id));
            if (d >= 1 && std::abs(k - m) < d) return false;
        }
        return true;
    };
    std::vector<std::pair<int, int>> used;
    for (const auto& [k, c] : usage) used.push_back({-c, k});
    std::sort(used.begin(), used.end());
    for (const auto& [nc, k] : used)
        if (admissible(k)) return k;
    for (int k = 1; k <= plan.count; ++k)
        if (!usage.count(k) && admissible(k)) return k;
    return std::nullopt;
}

}  // namespace

TEST_CASE("assign_freq_to follows the usage-then-ascending candidate order") {
    FrequencyPlan plan = make_plan(9);
    SeparationMatrix sep = make_sep(3, {{0, 2, 4}, {1, 2, 4}});

    SUBCASE("no assigned partners: lowest index") {
        Assignment none;
        CHECK(assign_freq_to(0, none, sep, plan) == 1);
    }
    SUBCASE("partner at 1 with separation 4") {
        Assignment partial;
        partial.freq_index = {{0, 1}};
        CHECK(assign_freq_to(2, partial, sep, plan) == 5);
    }
    SUBCASE("partners at 1 and 9, separation 4 from both") {
        Assignment partial;
        partial.freq_index = {{0, 1}, {1, 9}};
        auto got = assign_freq_to(2, partial, sep, plan);
        CHECK(got == 5);
        CHECK(got == assign_scan(2, partial, sep, plan));
    }
    SUBCASE("reuse prefers the most-used admissible index") {
        SeparationMatrix loose = make_sep(4, {});
        Assignment partial;
        partial.freq_index = {{0, 7}, {1, 7}, {2, 3}};
        CHECK(assign_freq_to(3, partial, loose, plan) == 7);
    }
    SUBCASE("failure is a value, not an exception") {
        SeparationMatrix tight = make_sep(2, {{0, 1, 9}});
        Assignment partial;
        partial.freq_index = {{0, 5}};
        CHECK_FALSE(assign_freq_to(1, partial, tight, plan).has_value());
    }
}

TEST_CASE("assign_freq_to matches the reference scan on random partials") {
    Rng rng(606);
    for (int t = 0; t < 200; ++t) {
        int n = uniform_int(rng, 2, 8);
        FrequencyPlan plan = make_plan(uniform_int(rng, 4, 14));
        SeparationMatrix sep = testutil::random_sep(rng, n, 0.6, 4);
        Assignment partial;
        for (int v = 1; v < n; ++v)
            if (rng() & 1) partial.freq_index[v] = uniform_int(rng, 1, plan.count);
        CHECK(assign_freq_to(0, partial, sep, plan) == assign_scan(0, partial, sep, plan));
    }
}

TEST_CASE("hedge on named instances") {
    SolverConfig cfg;

    SUBCASE("three mutually separated links") {
        FrequencyPlan plan = make_plan(40);
        SeparationMatrix sep = make_sep(3, {{0, 1, 2}, {1, 2, 2}, {0, 2, 2}});
        SolveResult r = hedge(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(r.assignment->used_indices() == std::vector<int>{1, 3, 5});
        CHECK(r.assignment->span() == 4);
        // Brute force confirms span 4 is optimal.
        CHECK(oracle::min_span_complete_bruteforce(testutil::dense_from_sep(sep)) == 4);
    }
    SUBCASE("edgeless instances reuse one frequency") {
        FrequencyPlan plan = make_plan(40);
        SeparationMatrix sep = make_sep(6, {});
        SolveResult r = hedge(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(r.assignment->used_count() == 1);
        CHECK(r.assignment->used_indices() == std::vector<int>{1});
    }
    SUBCASE("K2 with separation N_f is infeasible and names the blocker") {
        FrequencyPlan plan = make_plan(10);
        SeparationMatrix sep = make_sep(2, {{0, 1, 10}});
        SolveResult r = hedge(sep, plan, cfg);
        CHECK_FALSE(r.feasible());
        CHECK(r.blocking_link >= 0);
        CHECK(r.blocking_neighbors.size() == 1);
    }
    SUBCASE("rollback clears the blocking neighborhood") {
        // Star whose hub is low-degree... forced late: leaves all at distinct
        // far-apart indices leave no room for the hub unless neighbors move.
        FrequencyPlan plan = make_plan(7);
        SeparationMatrix sep =
            make_sep(4, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
        SolveResult r = hedge(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(check_feasibility(*r.assignment, sep, plan).feasible);
    }
}

TEST_CASE("cog colors first, then maps classes to frequencies") {
    SolverConfig cfg;
    FrequencyPlan plan = make_plan(40);

    SUBCASE("non-adjacent links share color and frequency") {
        SeparationMatrix sep = make_sep(2, {});
        SolveResult r = cog(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(r.assignment->used_count() == 1);
    }
    SUBCASE("uniform triangle spreads to 1, 4, 7") {
        SeparationMatrix sep = make_sep(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
        SolveResult r = cog(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(r.assignment->used_indices() == std::vector<int>{1, 4, 7});
        CHECK(oracle::min_span_complete_bruteforce(testutil::dense_from_sep(sep)) == 6);
    }
    SUBCASE("edgeless collapses to one class") {
        SeparationMatrix sep = make_sep(5, {});
        SolveResult r = cog(sep, plan, cfg);
        REQUIRE(r.feasible());
        CHECK(r.assignment->used_count() == 1);
    }
}

TEST_CASE("hybrid degenerates to its parents at the switch extremes") {
    Rng gen(11);
    SeparationMatrix sep = testutil::random_sep(gen, 10, 0.5, 3);
    FrequencyPlan plan = make_plan(60);

    SolverConfig cfg;
    cfg.n_cog = 0;
    Rng r1(99), r2(99);
    SolveResult h = hybrid(sep, plan, cfg, &r1);
    SolveResult base = hedge(sep, plan, cfg, &r2);
    REQUIRE(h.feasible());
    REQUIRE(base.feasible());
    CHECK(h.assignment->freq_index == base.assignment->freq_index);

    cfg.n_cog = sep.n;
    Rng r3(99), r4(99);
    SolveResult full = hybrid(sep, plan, cfg, &r3);
    SolveResult c = cog(sep, plan, cfg, &r4);
    REQUIRE(full.feasible());
    REQUIRE(c.feasible());
    CHECK(full.assignment->freq_index == c.assignment->freq_index);

    cfg.n_cog = sep.n + 1;
    CHECK_THROWS_AS(hybrid(sep, plan, cfg), Error);
}

TEST_CASE("psi scoring normalizes both terms") {
    std::vector<int> used = {65, 68, 74};
    std::vector<double> ranges = {422.3, 408.0, 387.3};
    auto bf1 = psi_scores(used, ranges, 1.0);
    CHECK(bf1[0] == doctest::Approx(0.0));
    CHECK(bf1[1] == doctest::Approx(1.0 / 3.0));
    CHECK(bf1[2] == doctest::Approx(1.0));

    auto bf0 = psi_scores(used, ranges, 0.0);  // range only
    CHECK(bf0[2] == doctest::Approx(0.0));
    CHECK(bf0[0] == doctest::Approx(1.0));

    auto single = psi_scores({42}, {100.0}, 0.7);
    CHECK(single[0] == doctest::Approx(0.0));

    // argmin is invariant under affine rescaling of the raw metrics.
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        int n = uniform_int(rng, 2, 10);
        std::vector<int> u(n);
        std::vector<double> r(n);
        for (int i = 0; i < n; ++i) {
            u[i] = uniform_int(rng, 5, 80);
            r[i] = uniform_real(rng, 20.0, 500.0);
        }
        double bf = uniform_real(rng, 0.0, 1.0);
        auto base = psi_scores(u, r, bf);
        double a = uniform_real(rng, 0.5, 4.0), b = uniform_real(rng, -10.0, 10.0);
        std::vector<int> u2(n);
        std::vector<double> r2(n);
        for (int i = 0; i < n; ++i) {
            u2[i] = u[i] * 3 + 7;
            r2[i] = r[i] * a + b;
        }
        auto scaled = psi_scores(u2, r2, bf);
        auto argmin = [](const std::vector<double>& xs) {
            return std::min_element(xs.begin(), xs.end()) - xs.begin();
        };
        CHECK(argmin(base) == argmin(scaled));
    }
}

TEST_CASE("enhanced_solve pools seeded replications") {
    Rng gen(1000);
    SeparationMatrix sep = testutil::random_sep(gen, 12, 0.45, 4);
    FrequencyPlan plan = make_plan(80);

    SUBCASE("one raw replication reproduces the base run") {
        SolverConfig cfg;
        cfg.replications = 1;
        cfg.randomize = false;
        SolutionPool pool = enhanced_solve(sep, plan, cfg, Strategy::hedge);
        REQUIRE(pool.entries.size() == 1);
        SolveResult raw = hedge(sep, plan, cfg);
        CHECK(pool.entries[0].assignment.freq_index == raw.assignment->freq_index);
        CHECK(pool.entries[0].psi == 0.0);
    }
    SUBCASE("fixed seed and replications give identical pools") {
        SolverConfig cfg;
        cfg.replications = 40;
        cfg.seed = 777;
        SolutionPool a = enhanced_solve(sep, plan, cfg, Strategy::hedge);
        SolutionPool b = enhanced_solve(sep, plan, cfg, Strategy::hedge);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            CHECK(a.entries[i].assignment.freq_index == b.entries[i].assignment.freq_index);
            CHECK(a.entries[i].psi == b.entries[i].psi);
            CHECK(a.entries[i].seed == b.entries[i].seed);
            CHECK(a.entries[i].pareto == b.entries[i].pareto);
        }
        CHECK(a.best == b.best);
    }
    SUBCASE("pool best never loses to the raw solution scored in the same pool") {
        SolverConfig cfg;
        cfg.replications = 30;
        cfg.seed = 4242;
        SolutionPool pool = enhanced_solve(sep, plan, cfg, Strategy::hedge);
        REQUIRE_FALSE(pool.empty());
        SolverConfig raw_cfg = cfg;
        raw_cfg.randomize = false;
        SolveResult raw = hedge(sep, plan, raw_cfg);
        REQUIRE(raw.feasible());
        PoolEntry e;
        e.assignment = *raw.assignment;
        e.metrics = check_feasibility(e.assignment, sep, plan);
        e.seed = cfg.seed;
        e.strategy = "hedge-raw";
        pool_insert(pool, e, cfg.balancing_factor);
        double raw_psi = -1.0;
        for (const auto& entry : pool.entries)
            if (entry.assignment.freq_index == raw.assignment->freq_index) raw_psi = entry.psi;
        REQUIRE(raw_psi >= 0.0);
        CHECK(pool.best_entry().psi <= raw_psi + 1e-12);
    }
    SUBCASE("every pool entry passes the independent checker") {
        SolverConfig cfg;
        cfg.replications = 25;
        cfg.range_cap_mhz = 25.0;
        SolutionPool pool = enhanced_solve(sep, plan, cfg, Strategy::hybrid);
        for (const auto& e : pool.entries) {
            SolutionMetrics m = check_feasibility(e.assignment, sep, plan, cfg.range_cap_mhz);
            CHECK(m.feasible);
            CHECK(m.used_count == e.metrics.used_count);
            CHECK(m.range_mhz == doctest::Approx(e.metrics.range_mhz));
        }
    }
}

TEST_CASE("pareto flags match the quadratic dominance definition") {
    Rng rng(3030);
    for (int t = 0; t < 50; ++t) {
        SolutionPool pool;
        int entries = uniform_int(rng, 1, 25);
        for (int i = 0; i < entries; ++i) {
            PoolEntry e;
            e.assignment.freq_index = {{0, i + 1}};
            e.metrics.used_count = uniform_int(rng, 1, 6);
            e.metrics.range_mhz = uniform_int(rng, 1, 6) * 5.0;
            pool.entries.push_back(std::move(e));
        }
        rescore_pool(pool, 0.5);
        for (int i = 0; i < entries; ++i) {
            bool dominated = false;
            for (int j = 0; j < entries; ++j) {
                if (i == j) continue;
                const auto& a = pool.entries[i].metrics;
                const auto& b = pool.entries[j].metrics;
                if (b.used_count <= a.used_count && b.range_mhz <= a.range_mhz &&
                    (b.used_count < a.used_count || b.range_mhz < a.range_mhz))
                    dominated = true;
            }
            CHECK(pool.entries[i].pareto == !dominated);
        }
    }
}

TEST_CASE("range cap restricts every returned solution") {
    Rng gen(2);
    FrequencyPlan plan = make_plan(200, 0.15, 15.0);
    SeparationMatrix sep = testutil::random_sep(gen, 8, 0.7, 30);
    SolverConfig cfg;
    cfg.replications = 20;
    cfg.range_cap_mhz = 24.0;  // span cap of 60 index units
    SolutionPool pool = enhanced_solve(sep, plan, cfg, Strategy::hedge);
    for (const auto& e : pool.entries) CHECK(e.metrics.range_mhz <= 24.0 + 1e-9);

    // A cap below the bandwidth leaves nothing assignable.
    SolverConfig hopeless = cfg;
    hopeless.range_cap_mhz = 10.0;
    SolutionPool empty_pool = enhanced_solve(sep, plan, hopeless, Strategy::hedge);
    CHECK(empty_pool.empty());
    CHECK(empty_pool.infeasible_runs == empty_pool.attempted);
}

TEST_CASE("solver outputs never beat the exhaustive optimum") {
    Rng rng(13);
    for (int t = 0; t < 25; ++t) {
        int n = uniform_int(rng, 2, 7);
        int n_f = uniform_int(rng, 4, 12);
        SeparationMatrix sep = testutil::random_sep(rng, n, 0.5, 3);
        FrequencyPlan plan = make_plan(n_f);
        int best = oracle::min_used_bruteforce(testutil::dense_from_sep(sep), n_f);
        SolverConfig cfg;
        cfg.replications = 40;
        cfg.seed = rng();
        cfg.balancing_factor = 1.0;
        SolutionPool pool = enhanced_solve(sep, plan, cfg, Strategy::hedge);
        if (best < 0) continue;  // infeasible instance: nothing to compare
        if (pool.empty()) continue;
        CHECK(pool.best_entry().metrics.used_count >= best);
    }
}
