#include "fap/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace fap {

const Node& Topology::node(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw Error(ErrorCode::bad_input, "unknown node id " + std::to_string(id));
}

const Link& Topology::link(int id) const {
    for (const auto& l : links)
        if (l.id == id) return l;
    throw Error(ErrorCode::bad_input, "unknown link id " + std::to_string(id));
}

void Topology::validate() const {
    std::set<int> node_ids;
    for (const auto& n : nodes) {
        if (n.id < 0) throw Error(ErrorCode::bad_input, "negative node id");
        if (!node_ids.insert(n.id).second)
            throw Error(ErrorCode::bad_input, "duplicate node id " + std::to_string(n.id));
        if (!std::isfinite(n.x) || !std::isfinite(n.y))
            throw Error(ErrorCode::bad_input, "non-finite coordinates on node " + std::to_string(n.id));
    }
    std::set<int> link_ids;
    std::set<int> outgoing, incoming;
    for (const auto& l : links) {
        if (l.id < 0) throw Error(ErrorCode::bad_input, "negative link id");
        if (!link_ids.insert(l.id).second)
            throw Error(ErrorCode::bad_input, "duplicate link id " + std::to_string(l.id));
        if (l.tx == l.rx)
            throw Error(ErrorCode::bad_input, "link " + std::to_string(l.id) + " has tx == rx");
        if (!node_ids.count(l.tx) || !node_ids.count(l.rx))
            throw Error(ErrorCode::bad_input, "link " + std::to_string(l.id) + " references unknown node");
        if (!outgoing.insert(l.tx).second)
            throw Error(ErrorCode::bad_input,
                        "node " + std::to_string(l.tx) + " has more than one outgoing link");
        if (!incoming.insert(l.rx).second)
            throw Error(ErrorCode::bad_input,
                        "node " + std::to_string(l.rx) + " has more than one incoming link");
    }
}

double FrequencyPlan::center_frequency(int index) const {
    if (index < 1 || index > count)
        throw Error(ErrorCode::invalid_parameters,
                    "frequency index " + std::to_string(index) + " outside [1, " + std::to_string(count) + "]");
    return f_start + bandwidth / 2.0 + (index - 1) * step;
}

FrequencyPlan build_plan(double f_start, double f_end, double bandwidth, double step) {
    if (!(step > 0.0) || !(bandwidth > 0.0))
        throw Error(ErrorCode::invalid_parameters, "plan requires step > 0 and bandwidth > 0");
    if (f_end < f_start + bandwidth)
        throw Error(ErrorCode::invalid_parameters, "no band fits: f_end < f_start + bandwidth");
    FrequencyPlan plan;
    plan.f_start = f_start;
    plan.f_end = f_end;
    plan.bandwidth = bandwidth;
    plan.step = step;
    // Largest i with f_start + B/2 + (i-1)*step + B/2 <= f_end. The small
    // slack absorbs binary rounding of decimal MHz values.
    double slots = (f_end - f_start - bandwidth) / step;
    plan.count = static_cast<int>(std::floor(slots + 1e-9)) + 1;
    return plan;
}

std::vector<int> Assignment::used_indices() const {
    std::vector<int> used;
    used.reserve(freq_index.size());
    for (const auto& [id, k] : freq_index) used.push_back(k);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return used;
}

int Assignment::span() const {
    if (freq_index.empty()) throw Error(ErrorCode::empty_assignment, "span of empty assignment");
    int lo = freq_index.begin()->second, hi = lo;
    for (const auto& [id, k] : freq_index) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    return hi - lo;
}

double range_of(const Assignment& a, const FrequencyPlan& plan) {
    if (a.empty()) throw Error(ErrorCode::empty_assignment, "range of empty assignment");
    return a.span() * plan.step + plan.bandwidth;
}

}  // namespace fap
