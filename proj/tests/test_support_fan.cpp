#include <doctest.h>

#include <cmath>

#include "droplab/errors.hpp"
#include "droplab/support_fan.hpp"

using namespace droplab;

TEST_CASE("constant fan gives the regular polygon with that apothem") {
    SupportFan fan{64, std::vector<double>(64, 1.0)};
    const auto body = support_to_polygon(fan);
    CHECK(body.size() == 64);
    const double R = 1.0 / std::cos(M_PI / 64);  // circumradius for apothem 1
    for (const auto& v : body.vertices) CHECK(norm(v) == doctest::Approx(R).epsilon(1e-12));
}

TEST_CASE("axis-aligned fan of four normals gives the unit square") {
    SupportFan fan{4, std::vector<double>(4, 0.5)};
    const auto body = support_to_polygon(fan);
    CHECK(body.size() == 4);
    CHECK(area(body) == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& v : body.vertices) {
        CHECK(std::abs(v.x) == doctest::Approx(0.5));
        CHECK(std::abs(v.y) == doctest::Approx(0.5));
    }
}

TEST_CASE("round trip on seeded feasible fans") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int M = 16 + 8 * (trial % 5);
        SupportFan fan{M, std::vector<double>(M)};
        for (auto& h : fan.h) h = 1.0 + 0.4 * (rng.uniform() - 0.5);
        fan = project_to_feasible(fan);
        // Skip fans the projection flattened into near-degenerate edges;
        // support recovery is only exact when every facet survives.
        const auto l = edge_lengths(fan);
        bool strict = true;
        for (double li : l) strict = strict && li > 1e-6;
        if (!strict) continue;

        const auto body = support_to_polygon(fan);
        const auto back = polygon_to_support(body, M);
        double scale = 0.0;
        for (double h : fan.h) scale = std::max(scale, std::abs(h));
        for (int i = 0; i < M; ++i)
            CHECK(std::abs(back.h[i] - fan.h[i]) <= 1e-10 * scale);
    }
}

TEST_CASE("infeasible fan reports the offending index") {
    SupportFan fan{32, std::vector<double>(32, 1.0)};
    fan.h[5] = 2.0;  // spike: neighbours cannot support it
    const int bad = fan_violation_index(fan);
    CHECK(bad >= 0);
    CHECK_THROWS_WITH_AS(support_to_polygon(fan),
                         doctest::Contains("violates convexity"), ValidationError);
}

TEST_CASE("cone projection returns a feasible fan near the input") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int M = 48;
        SupportFan fan{M, std::vector<double>(M)};
        for (auto& h : fan.h) h = 1.0 + 0.8 * (rng.uniform() - 0.5);
        const auto proj = project_to_feasible(fan);
        CHECK(fan_violation_index(proj, 1e-8) == -1);
    }
}

TEST_CASE("fan json round trip") {
    SupportFan fan{8, {1, 1.1, 1, 0.9, 1, 1.05, 1, 0.95}};
    const auto text = fan_to_json(fan);
    const auto back = fan_from_json(text);
    CHECK(back.M == fan.M);
    for (int i = 0; i < fan.M; ++i) CHECK(back.h[i] == doctest::Approx(fan.h[i]));
}
