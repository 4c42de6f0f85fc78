#include <cmath>

#include "doctest.h"
#include "fap/nfd.hpp"
#include "fap/rng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fap;

namespace {

// Near-rectangular mask of total width w: flat top, 1e-7 MHz edge.
SpectralMask rect_mask(double w, double floor_db = -120.0) {
    SpectralMask m;
    m.floor_db = floor_db;
    m.samples = {{0.0, 0.0}, {w / 2.0, 0.0}, {w / 2.0 + 1e-7, floor_db}};
    return m;
}

SpectralMask random_mask(Rng& rng) {
    SpectralMask m;
    m.samples.push_back({0.0, 0.0});
    double off = 0.0, lvl = 0.0;
    int extra = uniform_int(rng, 1, 5);
    for (int s = 0; s < extra; ++s) {
        off += uniform_real(rng, 0.2, 4.0);
        lvl -= uniform_real(rng, 0.0, 40.0);
        m.samples.push_back({off, lvl});
    }
    return m;
}

}  // namespace

TEST_CASE("mask interpolation and validation") {
    SpectralMask m = SpectralMask::default_mask(15.0);
    CHECK(m.level_db(0.0) == doctest::Approx(0.0));
    CHECK(m.level_db(7.5) == doctest::Approx(0.0));
    CHECK(m.level_db(-7.5) == doctest::Approx(0.0));  // symmetric
    CHECK(m.level_db(8.5) == doctest::Approx(-40.0)); // -40 dB/MHz rolloff
    CHECK(m.level_db(100.0) == doctest::Approx(-120.0));
    CHECK_NOTHROW(m.validate());

    SpectralMask bad{{{0.0, -1.0}, {1.0, -10.0}}};
    CHECK_THROWS_AS(bad.validate(), Error);
    SpectralMask positive{{{0.0, 0.0}, {1.0, 3.0}}};
    CHECK_THROWS_AS(positive.validate(), Error);
}

TEST_CASE("NFD is exactly zero at zero offset") {
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        SpectralMask d = random_mask(rng), h = random_mask(rng);
        CHECK(compute_nfd(d, h, 0.0, 0.05) == 0.0);
    }
}

TEST_CASE("rectangular masks match the closed-form overlap") {
    const double w = 2.0;
    SpectralMask m = rect_mask(w);
    double half = compute_nfd(m, m, w / 2.0, 0.01);
    CHECK(half == doctest::Approx(oracle::rect_nfd_closed_form(w, w / 2.0)).epsilon(1e-4));
    CHECK(half == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-4));

    // Zero overlap: only the floors remain. At the exact touch point the
    // finite mask edges still graze, so test just past it and far beyond.
    CHECK(compute_nfd(m, m, w, 0.01) > half);
    CHECK(compute_nfd(m, m, w + 0.001, 0.01) > 100.0);
    CHECK(compute_nfd(m, m, 2.0 * w, 0.01) > 100.0);
}

TEST_CASE("curve is non-decreasing and inverts conservatively") {
    SpectralMask m = SpectralMask::default_mask(15.0);
    NfdCurve curve = build_nfd_curve(m, m, 0.15, 40.0);
    CHECK(curve.nfd_db.front() == 0.0);
    for (std::size_t k = 1; k < curve.nfd_db.size(); ++k)
        CHECK(curve.nfd_db[k] >= curve.nfd_db[k - 1]);
    for (std::size_t k = 0; k < curve.nfd_db.size(); ++k)
        CHECK(invert_nfd(curve, curve.nfd_db[k]) <= curve.delta_f(static_cast<int>(k)) + 1e-12);
}

TEST_CASE("random peaked masks produce non-negative curves") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        SpectralMask d = random_mask(rng), h = random_mask(rng);
        NfdCurve curve = build_nfd_curve(d, h, 0.25, 15.0);
        for (double v : curve.nfd_db) CHECK(v >= 0.0);
    }
}

TEST_CASE("invert_nfd picks the smallest tabulated offset meeting the target") {
    NfdCurve curve;
    curve.step = 0.15;
    curve.nfd_db = {0.0, 4.0, 9.0, 15.0, 20.0, 24.0};  // NFD(0.45)=15, NFD(0.6)=20
    CHECK(invert_nfd(curve, -5.0) == 0.0);
    CHECK(invert_nfd(curve, 0.0) == 0.0);
    CHECK(invert_nfd(curve, 18.0) == doctest::Approx(0.6));
    CHECK(invert_nfd(curve, 15.0) == doctest::Approx(0.45));
    CHECK_THROWS_AS(invert_nfd(curve, 25.0), Error);
}

TEST_CASE("quantization ceils onto the index grid") {
    CHECK(quantize_separation(0.6, 0.15) == 4);
    CHECK(quantize_separation(0.1500001, 0.15) == 2);
    CHECK(quantize_separation(0.15, 0.15) == 1);
    CHECK(quantize_separation(0.0, 0.15) == 0);
    CHECK(quantize_separation(-3.0, 0.15) == 0);

    // S <= sep * step < S + step for positive S.
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        double step = uniform_real(rng, 0.01, 1.0);
        double s = uniform_real(rng, 0.0, 30.0);
        int d = quantize_separation(s, step);
        CHECK(d * step >= s - 1e-7);
        CHECK(d * step < s + step + 1e-7);
    }
}

TEST_CASE("separation matrix from directional inversions") {
    FrequencyPlan plan = testutil::make_plan(100);
    NfdCurve curve;
    curve.step = plan.step;
    curve.nfd_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};

    InterferenceMatrix di;
    di.n = 3;
    di.link_ids = {0, 1, 2};
    di.delta_i.assign(9, -10.0);  // below threshold by default
    di.at(0, 1) = 20.0;           // needs 0.6 MHz
    di.at(1, 0) = 12.0;           // needs 0.45 MHz -> max is 0.6
    SeparationMatrix sep = build_separation_matrix(di, curve, plan);
    CHECK(sep.at(0, 1) == 4);
    CHECK(sep.at(1, 0) == 4);
    CHECK(sep.s_at(0, 1) == doctest::Approx(0.6));
    CHECK(sep.at(0, 2) == 0);  // both directions below threshold
    CHECK(sep.at(1, 2) == 0);
    for (int i = 0; i < 3; ++i) CHECK(sep.at(i, i) == 0);

    SUBCASE("sentinel pairs map to N_f") {
        di.at(0, 2) = InterferenceMatrix::kSentinel;
        SeparationMatrix s2 = build_separation_matrix(di, curve, plan);
        CHECK(s2.at(0, 2) == plan.count);
        CHECK(s2.is_sentinel(0, 2));
        CHECK(s2.is_sentinel(2, 0));
    }

    SUBCASE("unreachable targets name the offending pair") {
        di.at(2, 1) = 80.0;
        CHECK_THROWS_WITH_AS(build_separation_matrix(di, curve, plan),
                             doctest::Contains("links 1 and 2"), Error);
    }
}

TEST_CASE("separation matrices are symmetric with zero diagonal") {
    Rng rng(88);
    FrequencyPlan plan = testutil::make_plan(500);
    SpectralMask m = SpectralMask::default_mask(15.0);
    NfdCurve curve = build_nfd_curve(m, m, plan.step, 60.0);
    for (int t = 0; t < 5; ++t) {
        int n = uniform_int(rng, 2, 6);
        InterferenceMatrix di;
        di.n = n;
        di.link_ids.resize(n);
        for (int i = 0; i < n; ++i) di.link_ids[i] = i;
        di.delta_i.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) di.at(i, j) = uniform_real(rng, -30.0, curve.max_nfd() - 1.0);
        SeparationMatrix sep = build_separation_matrix(di, curve, plan);
        for (int i = 0; i < n; ++i) {
            CHECK(sep.at(i, i) == 0);
            for (int j = 0; j < n; ++j) CHECK(sep.at(i, j) == sep.at(j, i));
        }
    }
}
