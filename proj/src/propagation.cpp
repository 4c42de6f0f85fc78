#include "fap/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fap {

namespace {

double fold_angle(double deg) {
    double a = std::fabs(std::fmod(deg, 360.0));
    return a > 180.0 ? 360.0 - a : a;
}

struct Vec2 {
    double x, y;
};

double distance_km(const Node& a, const Node& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Angle between two direction vectors, in [0, 180] degrees.
double angle_between_deg(Vec2 u, Vec2 v) {
    double dot = u.x * v.x + u.y * v.y;
    double cross = u.x * v.y - u.y * v.x;
    return std::fabs(std::atan2(cross, dot)) * 180.0 / M_PI;
}

}  // namespace

double AntennaPattern::attenuation(double angle_deg) const {
    double a = fold_angle(angle_deg);
    if (samples.empty()) return 0.0;
    if (a <= samples.front().first) return samples.front().second;
    if (a >= samples.back().first) return samples.back().second;
    auto it = std::upper_bound(samples.begin(), samples.end(), a,
                               [](double v, const auto& s) { return v < s.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double t = (a - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
}

void AntennaPattern::validate() const {
    if (samples.empty()) throw Error(ErrorCode::bad_input, "antenna pattern has no samples");
    if (samples.front().first != 0.0 || samples.front().second != 0.0)
        throw Error(ErrorCode::bad_input, "antenna pattern must start at (0, 0)");
    double prev = -1.0;
    for (const auto& [angle, att] : samples) {
        if (!(angle > prev)) throw Error(ErrorCode::bad_input, "antenna angles must be strictly increasing");
        if (angle > 180.0) throw Error(ErrorCode::bad_input, "antenna angle beyond 180 deg");
        if (!(att >= 0.0) || !std::isfinite(att))
            throw Error(ErrorCode::bad_input, "antenna attenuation must be finite and >= 0");
        prev = angle;
    }
}

AntennaPattern AntennaPattern::default_pattern() {
    return AntennaPattern{{{0.0, 0.0}, {60.0, 25.0}, {180.0, 25.0}}};
}

int InterferenceMatrix::sentinel_pairs() const {
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && is_sentinel(i, j)) ++c;
    return c;
}

double path_loss_db(double f_mhz, double d_km) {
    if (!(f_mhz > 0.0)) throw Error(ErrorCode::nonpositive_frequency, "path loss requires f > 0");
    if (!(d_km > 0.0)) throw Error(ErrorCode::nonpositive_distance, "path loss requires d > 0");
    return 32.4 + 20.0 * std::log10(f_mhz) + 20.0 * std::log10(d_km);
}

double antenna_gain_db(const AntennaPattern& pattern, double phi_t_deg, double phi_r_deg) {
    return 58.0 - pattern.attenuation(phi_t_deg) - pattern.attenuation(phi_r_deg);
}

namespace {

double tackle_from_nodes(const Node& tx_i, const Node& rx_i, const Node& tx_j, const Node& rx_j,
                         int link_i, int link_j, double f_ref_mhz, const LinkBudgetParams& params,
                         const AntennaPattern& pattern) {
    double d = distance_km(tx_i, rx_j);
    if (!(d > 0.0))
        throw Error(ErrorCode::co_located_nodes, "tx of link " + std::to_string(link_i) +
                                                     " co-located with rx of link " + std::to_string(link_j));
    if (!(distance_km(tx_i, rx_i) > 0.0))
        throw Error(ErrorCode::co_located_nodes, "link " + std::to_string(link_i) + " has zero length");
    if (!(distance_km(tx_j, rx_j) > 0.0))
        throw Error(ErrorCode::co_located_nodes, "link " + std::to_string(link_j) + " has zero length");

    // Victim direction as seen from the interfering transmitter, and the
    // interferer direction as seen from the victim receiver.
    Vec2 tx_boresight{rx_i.x - tx_i.x, rx_i.y - tx_i.y};
    Vec2 tx_to_victim{rx_j.x - tx_i.x, rx_j.y - tx_i.y};
    Vec2 rx_boresight{tx_j.x - rx_j.x, tx_j.y - rx_j.y};
    Vec2 rx_to_interferer{tx_i.x - rx_j.x, tx_i.y - rx_j.y};
    double phi_t = angle_between_deg(tx_boresight, tx_to_victim);
    double phi_r = angle_between_deg(rx_boresight, rx_to_interferer);

    double p_rx = params.tx_power_dbm + antenna_gain_db(pattern, phi_t, phi_r) - path_loss_db(f_ref_mhz, d);
    return p_rx - params.sensitivity_dbm;
}

}  // namespace

double interference_to_tackle(const Topology& topo, int link_i, int link_j, double f_ref_mhz,
                              const LinkBudgetParams& params, const AntennaPattern& pattern) {
    const Link& li = topo.link(link_i);
    const Link& lj = topo.link(link_j);
    return tackle_from_nodes(topo.node(li.tx), topo.node(li.rx), topo.node(lj.tx), topo.node(lj.rx),
                             link_i, link_j, f_ref_mhz, params, pattern);
}

InterferenceMatrix build_interference_matrix(const Topology& topo, double f_ref_mhz,
                                             const LinkBudgetParams& params,
                                             const AntennaPattern& pattern) {
    topo.validate();
    pattern.validate();
    InterferenceMatrix m;
    m.n = static_cast<int>(topo.links.size());
    m.link_ids.reserve(m.n);
    for (const auto& l : topo.links) m.link_ids.push_back(l.id);
    m.delta_i.assign(static_cast<std::size_t>(m.n) * m.n, 0.0);

    std::vector<const Node*> tx(m.n), rx(m.n);
    for (int i = 0; i < m.n; ++i) {
        tx[i] = &topo.node(topo.links[i].tx);
        rx[i] = &topo.node(topo.links[i].rx);
    }

    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            if (i == j) continue;
            const Link& li = topo.links[i];
            const Link& lj = topo.links[j];
            // A node cannot receive on top of its own transmission: pairs
            // sharing a node are never co-assignable at any offset.
            if (li.tx == lj.rx || li.rx == lj.tx || li.tx == lj.tx || li.rx == lj.rx) {
                m.at(i, j) = InterferenceMatrix::kSentinel;
                continue;
            }
            m.at(i, j) =
                tackle_from_nodes(*tx[i], *rx[i], *tx[j], *rx[j], li.id, lj.id, f_ref_mhz, params, pattern);
        }
    }
    return m;
}

}  // namespace fap
