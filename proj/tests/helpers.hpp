#pragma once

#include <tuple>
#include <vector>

#include "fap/model.hpp"
#include "fap/nfd.hpp"
#include "fap/rng.hpp"
#include "oracles.hpp"

namespace testutil {

// Separation matrix over links 0..n-1 from (i, j, sep) triples.
inline fap::SeparationMatrix make_sep(int n, const std::vector<std::tuple<int, int, int>>& constraints,
                                      double step = 0.15) {
    fap::SeparationMatrix sep;
    sep.n = n;
    sep.link_ids.resize(n);
    for (int i = 0; i < n; ++i) sep.link_ids[i] = i;
    std::size_t cells = static_cast<std::size_t>(n) * n;
    sep.sep.assign(cells, 0);
    sep.s_mhz.assign(cells, 0.0);
    sep.sentinel.assign(cells, 0);
    for (const auto& [i, j, d] : constraints) sep.set(i, j, d, d * step);
    return sep;
}

// Plan with exactly n_f bands.
inline fap::FrequencyPlan make_plan(int n_f, double step = 0.15, double bandwidth = 15.0) {
    return fap::build_plan(0.0, bandwidth + (n_f - 1) * step, bandwidth, step);
}

inline oracle::DenseGraph dense_from_sep(const fap::SeparationMatrix& sep) {
    oracle::DenseGraph g(sep.n);
    for (int i = 0; i < sep.n; ++i)
        for (int j = i + 1; j < sep.n; ++j) g.set(i, j, sep.at(i, j));
    return g;
}

// Random instance: each pair constrained with probability density, weights
// uniform in [1, max_w].
inline fap::SeparationMatrix random_sep(fap::Rng& rng, int n, double density, int max_w) {
    std::vector<std::tuple<int, int, int>> cons;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (fap::uniform_real(rng, 0.0, 1.0) < density)
                cons.push_back({i, j, fap::uniform_int(rng, 1, max_w)});
        }
    }
    return make_sep(n, cons);
}

// Complete graph whose weights sit in [w, 2w]: every triangle satisfies the
// triangle inequality.
inline fap::SeparationMatrix random_metric_complete(fap::Rng& rng, int n, int w) {
    std::vector<std::tuple<int, int, int>> cons;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cons.push_back({i, j, fap::uniform_int(rng, w, 2 * w)});
    return make_sep(n, cons);
}

}  // namespace testutil
