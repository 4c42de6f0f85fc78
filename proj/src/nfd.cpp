#include "fap/nfd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fap {

double SpectralMask::level_db(double offset_mhz) const {
    double a = std::fabs(offset_mhz);
    if (samples.empty()) return floor_db;
    if (a >= samples.back().first) return floor_db;
    auto it = std::upper_bound(samples.begin(), samples.end(), a,
                               [](double v, const auto& s) { return v < s.first; });
    if (it == samples.begin()) return samples.front().second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double t = (a - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
}

double SpectralMask::linear(double offset_mhz) const { return std::pow(10.0, level_db(offset_mhz) / 10.0); }

void SpectralMask::validate() const {
    if (samples.empty()) throw Error(ErrorCode::bad_input, "spectral mask has no samples");
    if (samples.front().first != 0.0 || samples.front().second != 0.0)
        throw Error(ErrorCode::bad_input, "spectral mask must start at (0, 0)");
    double prev = -1.0;
    for (const auto& [off, lvl] : samples) {
        if (!(off > prev)) throw Error(ErrorCode::bad_input, "mask offsets must be strictly increasing");
        if (!(lvl <= 0.0) || !std::isfinite(lvl))
            throw Error(ErrorCode::bad_input, "mask levels must be finite and <= 0 dB");
        prev = off;
    }
    if (!std::isfinite(floor_db) || floor_db > 0.0)
        throw Error(ErrorCode::bad_input, "mask floor must be finite and <= 0 dB");
}

SpectralMask SpectralMask::default_mask(double bandwidth_mhz, double floor_db) {
    // -40 dB/MHz rolloff from the band edge down to the floor.
    double edge = bandwidth_mhz / 2.0;
    double rolloff_width = -floor_db / 40.0;
    SpectralMask m;
    m.floor_db = floor_db;
    m.samples = {{0.0, 0.0}, {edge, 0.0}, {edge + rolloff_width, floor_db}};
    return m;
}

namespace {

// Integral of tx(f - shift) * rx(f) over the union of both supports.
double mask_product_integral(const SpectralMask& tx, const SpectralMask& rx, double shift,
                             double grid_step) {
    double lo = std::min(-rx.support(), shift - tx.support());
    double hi = std::max(rx.support(), shift + tx.support());

    std::vector<double> breaks;
    for (const auto& [off, lvl] : rx.samples) {
        breaks.push_back(off);
        breaks.push_back(-off);
    }
    for (const auto& [off, lvl] : tx.samples) {
        breaks.push_back(shift + off);
        breaks.push_back(shift - off);
    }
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double total = 0.0;
    double prev_f = lo;
    double prev_y = tx.linear(lo - shift) * rx.linear(lo);
    for (double b : breaks) {
        if (b <= lo || b > hi) continue;
        double seg = b - prev_f;
        int steps = std::max(1, static_cast<int>(std::ceil(seg / grid_step)));
        double h = seg / steps;
        for (int s = 1; s <= steps; ++s) {
            double f = prev_f + s * h;
            double y = tx.linear(f - shift) * rx.linear(f);
            total += 0.5 * (prev_y + y) * h;
            prev_y = y;
        }
        prev_f = b;
    }
    return total;
}

}  // namespace

double compute_nfd(const SpectralMask& tx_mask, const SpectralMask& rx_filter, double delta_f_mhz,
                   double grid_step_mhz) {
    if (delta_f_mhz < 0.0) throw Error(ErrorCode::invalid_parameters, "NFD requires delta_f >= 0");
    if (!(grid_step_mhz > 0.0)) throw Error(ErrorCode::invalid_parameters, "NFD requires grid_step > 0");
    if (delta_f_mhz == 0.0) return 0.0;  // P_a == P_c by definition

    double p_c = mask_product_integral(tx_mask, rx_filter, 0.0, grid_step_mhz);
    if (!(p_c > 0.0) || !std::isfinite(p_c))
        throw Error(ErrorCode::degenerate_mask, "co-channel mask product integrates to zero");
    double p_a = mask_product_integral(tx_mask, rx_filter, delta_f_mhz, grid_step_mhz);
    if (!(p_a > 0.0) || !std::isfinite(p_a))
        throw Error(ErrorCode::degenerate_mask, "offset mask product integrates to zero");
    return 10.0 * std::log10(p_c / p_a);
}

NfdCurve build_nfd_curve(const SpectralMask& tx_mask, const SpectralMask& rx_filter, double step_mhz,
                         double max_delta_f_mhz) {
    tx_mask.validate();
    rx_filter.validate();
    if (!(step_mhz > 0.0)) throw Error(ErrorCode::invalid_parameters, "curve step must be > 0");

    NfdCurve curve;
    curve.step = step_mhz;
    int entries = static_cast<int>(std::floor(max_delta_f_mhz / step_mhz + 1e-9)) + 1;
    curve.nfd_db.reserve(entries);

    // Beyond this shift the supports are disjoint and NFD is constant.
    double saturation = tx_mask.support() + rx_filter.support();
    double grid_step = step_mhz / 4.0;
    double saturated_value = 0.0;
    bool have_saturated = false;

    for (int k = 0; k < entries; ++k) {
        double df = k * step_mhz;
        double value;
        if (have_saturated) {
            value = saturated_value;
        } else {
            value = compute_nfd(tx_mask, rx_filter, df, grid_step);
            if (df >= saturation) {
                saturated_value = value;
                have_saturated = true;
            }
        }
        curve.nfd_db.push_back(value);
    }

    // Running maximum: masks with ripples may produce local dips, and the
    // inversion needs a non-decreasing table. Never under-separates.
    for (std::size_t k = 1; k < curve.nfd_db.size(); ++k)
        curve.nfd_db[k] = std::max(curve.nfd_db[k], curve.nfd_db[k - 1]);
    return curve;
}

double invert_nfd(const NfdCurve& curve, double target_db) {
    if (target_db <= 0.0) return 0.0;
    if (curve.nfd_db.empty() || target_db > curve.max_nfd())
        throw Error(ErrorCode::unreachable_target,
                    "required NFD of " + std::to_string(target_db) + " dB exceeds curve maximum of " +
                        std::to_string(curve.max_nfd()) + " dB");
    auto it = std::lower_bound(curve.nfd_db.begin(), curve.nfd_db.end(), target_db);
    return static_cast<double>(it - curve.nfd_db.begin()) * curve.step;
}

int SeparationMatrix::sentinel_pairs() const {
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (is_sentinel(i, j)) ++c;
    return c;
}

int SeparationMatrix::constraint_count() const {
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (at(i, j) >= 1) ++c;
    return c;
}

int SeparationMatrix::index_of(int link_id) const {
    for (int i = 0; i < n; ++i)
        if (link_ids[i] == link_id) return i;
    throw Error(ErrorCode::bad_input, "link id " + std::to_string(link_id) + " not in separation matrix");
}

void SeparationMatrix::set(int i, int j, int d, double s, bool is_sentinel_pair) {
    sep[static_cast<std::size_t>(i) * n + j] = d;
    sep[static_cast<std::size_t>(j) * n + i] = d;
    s_mhz[static_cast<std::size_t>(i) * n + j] = s;
    s_mhz[static_cast<std::size_t>(j) * n + i] = s;
    sentinel[static_cast<std::size_t>(i) * n + j] = is_sentinel_pair ? 1 : 0;
    sentinel[static_cast<std::size_t>(j) * n + i] = is_sentinel_pair ? 1 : 0;
}

int quantize_separation(double s_mhz, double step_mhz) {
    if (s_mhz <= 0.0) return 0;
    // Tabulated separations are exact multiples of the step; the slack only
    // absorbs the division rounding.
    return static_cast<int>(std::ceil(s_mhz / step_mhz - 1e-9));
}

SeparationMatrix build_separation_matrix(const InterferenceMatrix& di, const NfdCurve& curve,
                                         const FrequencyPlan& plan) {
    SeparationMatrix sm;
    sm.n = di.n;
    sm.link_ids = di.link_ids;
    std::size_t cells = static_cast<std::size_t>(sm.n) * sm.n;
    sm.sep.assign(cells, 0);
    sm.s_mhz.assign(cells, 0.0);
    sm.sentinel.assign(cells, 0);

    for (int i = 0; i < sm.n; ++i) {
        for (int j = i + 1; j < sm.n; ++j) {
            if (di.is_sentinel(i, j) || di.is_sentinel(j, i)) {
                sm.set(i, j, plan.count, std::numeric_limits<double>::infinity(), true);
                continue;
            }
            double s_ij, s_ji;
            try {
                s_ij = invert_nfd(curve, di.at(i, j));
                s_ji = invert_nfd(curve, di.at(j, i));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::unreachable_target)
                    throw Error(ErrorCode::unreachable_target,
                                "links " + std::to_string(sm.link_ids[i]) + " and " +
                                    std::to_string(sm.link_ids[j]) + ": " + e.what());
                throw;
            }
            double s = std::max(s_ij, s_ji);
            sm.set(i, j, quantize_separation(s, plan.step), s);
        }
    }
    return sm;
}

}  // namespace fap
