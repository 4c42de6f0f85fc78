#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fap/bounds.hpp"
#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/propagation.hpp"
#include "fap/solvers.hpp"
#include "fap/toolkit.hpp"

namespace fap {

inline constexpr const char* kFileFormatVersion = "fap-v1";

// --- topology + plan (JSON) -------------------------------------------------

struct TopologyFile {
    Topology topology;
    std::optional<FrequencyPlan> plan;
    std::uint64_t seed = 0;
};

void save_topology(const std::string& path, const TopologyFile& t);
TopologyFile load_topology(const std::string& path);

// --- assignment (JSON): {link_id: freq_index} plus a metrics block ----------

void save_assignment(const std::string& path, const Assignment& a, const SolutionMetrics& metrics,
                     const std::string& strategy, std::uint64_t seed);
Assignment load_assignment(const std::string& path);

// --- antenna pattern / spectral mask (two-column text) -----------------------

AntennaPattern load_antenna_pattern(const std::string& path);
void save_antenna_pattern(const std::string& path, const AntennaPattern& p);

SpectralMask load_mask(const std::string& path, double floor_db = -120.0);
void save_mask(const std::string& path, const SpectralMask& m);

// --- separation constraints (CSV, also a solver input) -----------------------

// Rows i,j,S_MHz,sep_quantized for i < j with sep >= 1; the metadata comment
// carries the plan and link count so the file is self-contained.
void save_separation_csv(const std::string& path, const SeparationMatrix& sep,
                         const FrequencyPlan& plan, std::uint64_t seed);

struct SeparationFile {
    SeparationMatrix sep;
    FrequencyPlan plan;
    std::uint64_t seed = 0;
};

SeparationFile load_separation_csv(const std::string& path);

// CELAR-style constraint reader: lines `i j > s` (with optional extra tokens,
// as in the RLFAP ctr files `i j D > s`) become symmetric constraints with
// sep = s + 1 index units; `>= s` maps to sep = s.
SeparationMatrix load_celar_constraints(const std::string& path);

// --- solution pool / benchmark / bounds CSV ----------------------------------

void save_pool_csv(const std::string& path, const SolutionPool& pool, std::uint64_t master_seed);

void save_benchmark_csv(const std::string& path, const std::vector<BenchmarkRecord>& records,
                        std::uint64_t seed);
void save_benchmark_summary_csv(const std::string& path, const std::vector<BenchmarkSummary>& summaries,
                                std::uint64_t seed);

std::string bounds_report_text(const BoundsReport& r);
void save_bounds_csv(const std::string& path, const BoundsReport& r, std::uint64_t seed);

}  // namespace fap
