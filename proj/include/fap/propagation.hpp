#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fap/model.hpp"

namespace fap {

// Piecewise-linear attenuation over |angle| in [0, 180] degrees.
// Samples must start at (0, 0) with strictly increasing angles; the pattern
// holds the last value beyond the last sample and is symmetric in +-angle.
struct AntennaPattern {
    std::vector<std::pair<double, double>> samples;  // (angle_deg, attenuation_dB)

    double attenuation(double angle_deg) const;
    void validate() const;

    // A = 0 dB at boresight, linear to 25 dB at 60 deg, flat beyond.
    static AntennaPattern default_pattern();
};

struct LinkBudgetParams {
    double tx_power_dbm = 30.0;       // 1 W
    double sensitivity_dbm = -79.12;  // T_s
};

// Dense delta-I matrix over ordered link pairs; diagonal unused. +inf marks
// node-sharing pairs that can never be co-assigned.
struct InterferenceMatrix {
    int n = 0;
    std::vector<int> link_ids;
    std::vector<double> delta_i;  // n*n, dB

    double at(int i, int j) const { return delta_i[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return delta_i[static_cast<std::size_t>(i) * n + j]; }
    bool is_sentinel(int i, int j) const { return std::isinf(at(i, j)); }
    int sentinel_pairs() const;

    static constexpr double kSentinel = std::numeric_limits<double>::infinity();
};

// 32.4 + 20 log10(f/MHz) + 20 log10(d/km)
double path_loss_db(double f_mhz, double d_km);

// 58 - A(phi_t) - A(phi_r), angles folded into [0, 180].
double antenna_gain_db(const AntennaPattern& pattern, double phi_t_deg, double phi_r_deg);

// Interference to tackle from link i to link j: received power at rx(j) from
// tx(i), minus receiver sensitivity. The tx boresight points at rx(i), the
// rx boresight at tx(j).
double interference_to_tackle(const Topology& topo, int link_i, int link_j, double f_ref_mhz,
                              const LinkBudgetParams& params, const AntennaPattern& pattern);

InterferenceMatrix build_interference_matrix(const Topology& topo, double f_ref_mhz,
                                             const LinkBudgetParams& params,
                                             const AntennaPattern& pattern);

}  // namespace fap
