#pragma once

#include <utility>
#include <vector>

#include "fap/model.hpp"
#include "fap/propagation.hpp"

namespace fap {

// Piecewise-linear spectral density in dB relative to the peak, symmetric
// about the center. Samples cover offsets >= 0 starting at (0, 0); the mask
// sits at floor_db beyond the last sample.
struct SpectralMask {
    std::vector<std::pair<double, double>> samples;  // (offset_MHz, level_dB <= 0)
    double floor_db = -120.0;

    double level_db(double offset_mhz) const;
    double linear(double offset_mhz) const;
    // Offset beyond which the mask sits at the floor.
    double support() const { return samples.empty() ? 0.0 : samples.back().first; }
    void validate() const;

    // Flat over +-B/2, then -40 dB/MHz rolloff down to the floor.
    static SpectralMask default_mask(double bandwidth_mhz, double floor_db = -120.0);
};

// NFD(k * step) tabulated for k = 0..size-1, monotonized by running maximum
// so that the inverse is well defined.
struct NfdCurve {
    double step = 0.0;  // MHz
    std::vector<double> nfd_db;

    double max_nfd() const { return nfd_db.empty() ? 0.0 : nfd_db.back(); }
    double delta_f(int k) const { return k * step; }
};

// 10*log10(P_c / P_a): trapezoidal integration of the linear-scale mask
// product over the merged breakpoint grid of both masks, each interval
// refined to at most grid_step spacing (curve tabulation uses step/4).
double compute_nfd(const SpectralMask& tx_mask, const SpectralMask& rx_filter, double delta_f_mhz,
                   double grid_step_mhz = 0.0375);

NfdCurve build_nfd_curve(const SpectralMask& tx_mask, const SpectralMask& rx_filter, double step_mhz,
                         double max_delta_f_mhz);

// Smallest tabulated delta-f whose NFD meets the target; 0 for targets <= 0.
// Throws unreachable_target when the curve cannot discriminate that much.
double invert_nfd(const NfdCurve& curve, double target_db);

// Symmetric quantized separation constraints; sep is in index units, s_mhz
// keeps the raw separation. Node-sharing (sentinel) pairs carry sep = N_f.
struct SeparationMatrix {
    int n = 0;
    std::vector<int> link_ids;
    std::vector<int> sep;        // n*n
    std::vector<double> s_mhz;   // n*n
    std::vector<char> sentinel;  // n*n

    int at(int i, int j) const { return sep[static_cast<std::size_t>(i) * n + j]; }
    double s_at(int i, int j) const { return s_mhz[static_cast<std::size_t>(i) * n + j]; }
    bool is_sentinel(int i, int j) const { return sentinel[static_cast<std::size_t>(i) * n + j] != 0; }
    int sentinel_pairs() const;
    int constraint_count() const;  // unordered pairs with sep >= 1
    int index_of(int link_id) const;

    void set(int i, int j, int d, double s, bool is_sentinel_pair = false);
};

int quantize_separation(double s_mhz, double step_mhz);

SeparationMatrix build_separation_matrix(const InterferenceMatrix& di, const NfdCurve& curve,
                                         const FrequencyPlan& plan);

}  // namespace fap
