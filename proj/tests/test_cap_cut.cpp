#include <doctest.h>

#include <cmath>

#include "droplab/cap_cut.hpp"
#include "droplab/errors.hpp"
#include "oracles.hpp"

using namespace droplab;

TEST_CASE("disk cap cut matches the circular-segment oracle") {
    const auto disk = regular_ngon(4096, 1.0);
    const Vec2 x0{1.0, 0.0};
    for (double eps : {0.2, 0.1, 0.05}) {
        const auto cut = cut_cap(disk, x0, eps);
        CHECK(cut.gamma_eps == doctest::Approx(oracles::disk_cap_gamma(1.0, eps)).epsilon(1e-4));
        CHECK(cut.delta_v == doctest::Approx(oracles::disk_cap_area(1.0, eps)).epsilon(2e-3));
        // Sandwich from the inscribed triangle / two covering triangles.
        const double base = eps * eps * std::sin(cut.gamma_eps) * std::cos(cut.gamma_eps);
        CHECK(cut.delta_v >= base * (1 - 1e-9));
        CHECK(cut.delta_v <= 2 * base * (1 + 1e-9));
    }
    // delta_v / (eps^2 gamma) stays in a fixed window across the sweep.
    double lo = 1e300, hi = 0;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const auto cut = cut_cap(disk, x0, eps);
        const double ratio = cut.delta_v / (eps * eps * cut.gamma_eps);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.2);
    CHECK(lo > 1.0);
    CHECK(hi < 2.0);
}

TEST_CASE("square corner cut is the exact right triangle") {
    const auto square = rectangle_body(1.0, 1.0);
    for (double eps : {0.2, 0.1, 0.01}) {
        const auto cut = cut_cap(square, {0, 0}, eps);
        CHECK(cut.gamma_eps == doctest::Approx(M_PI / 4).epsilon(1e-12));
        CHECK(cut.delta_v == doctest::Approx(eps * eps / 2).epsilon(1e-12));
        const double chord = eps * std::sqrt(2.0);
        CHECK(cut.delta_p == doctest::Approx(2 * eps - chord).epsilon(1e-12));
    }
}

TEST_CASE("perimeter inequality holds exactly on every cut") {
    Rng rng(5150);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 4 + static_cast<int>(rng.uniform() * 10);
        std::vector<Vec2> pts;
        for (int i = 0; i < k; ++i) {
            const double t = 2 * M_PI * (i + 0.3 * rng.uniform()) / k;
            const double r = 0.6 + 0.7 * rng.uniform();
            pts.push_back({r * std::cos(t), r * std::sin(t)});
        }
        ConvexBody2 body;
        try {
            body = make_convex_body(pts);
        } catch (const ValidationError&) {
            continue;
        }
        // Random boundary point.
        const auto& v = body.vertices;
        const std::size_t e = static_cast<std::size_t>(rng.uniform() * v.size());
        const double t = rng.uniform();
        const Vec2 x0 = v[e] + t * (v[(e + 1) % v.size()] - v[e]);
        const double e0 = eps0_bound(body, x0);
        for (double f : {1.0, 0.5, 0.1}) {
            const auto cut = cut_cap(body, x0, f * e0);
            CHECK(cut.delta_v >= 0.0);
            CHECK(cut.delta_p >= 2 * cut.eps * (1 - std::cos(cut.gamma_eps)) - 1e-12);
        }
    }
}

TEST_CASE("eps too large is rejected") {
    const auto thin = rectangle_body(10.0, 0.1);
    // From the middle of the long side, a radius above the thickness hits the
    // opposite wall: four intersection points.
    CHECK_THROWS_AS(cut_cap(thin, {5.0, 0.0}, 0.5), ValidationError);
    CHECK_NOTHROW(cut_cap(thin, {5.0, 0.0}, 0.05));
    const double e0 = eps0_bound(thin, {5.0, 0.0});
    CHECK(e0 <= 0.1);
    CHECK(e0 >= 0.02);
}

TEST_CASE("x0 off the boundary is rejected") {
    const auto square = rectangle_body(1.0, 1.0);
    CHECK_THROWS_AS(cut_cap(square, {0.5, 0.5}, 0.1), ValidationError);
}

TEST_CASE("smoothness diagnostic separates the square from fine polygons") {
    const auto disk = regular_ngon(512, 1.0);
    const auto rep_disk = smoothness_diagnostic(disk, {0.2, 0.1, 0.05}, 32);
    CHECK(rep_disk.corner_indices.empty());
    // The ratio approaches the segment-area constant 2/(3R).
    CHECK(rep_disk.sup_ratio < 1.5);

    const auto square = rectangle_body(1.0, 1.0);
    const auto rep_sq = smoothness_diagnostic(square, {0.2, 0.1, 0.05}, 16);
    CHECK(!rep_sq.corner_indices.empty());
    for (int idx : rep_sq.corner_indices) {
        CHECK(rep_sq.points[idx].growth_exponent == doctest::Approx(2.0).epsilon(0.05));
    }

    // Corner ratio grows like 1/eps.
    const auto& corner = rep_sq.points[rep_sq.corner_indices.front()];
    REQUIRE(corner.ratio.size() == 3);
    CHECK(corner.ratio[2] / corner.ratio[0] == doctest::Approx(4.0).epsilon(0.05));

    // Rounding the corners off restores bounded ratios once eps probes below
    // the rounding radius.
    std::vector<Vec2> rounded;
    const double r = 0.1;
    for (int c = 0; c < 4; ++c) {
        const double cx = c == 0 || c == 3 ? r : 1 - r;
        const double cy = c < 2 ? r : 1 - r;
        const double t0 = M_PI + c * M_PI / 2;
        for (int j = 0; j <= 32; ++j) {
            const double t = t0 + j * (M_PI / 2) / 32;
            rounded.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
        }
    }
    const auto soft = make_convex_body(rounded);
    const auto rep_soft = smoothness_diagnostic(soft, {0.04, 0.02, 0.01}, 64);
    CHECK(rep_soft.corner_indices.empty());
}
