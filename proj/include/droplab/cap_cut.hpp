#pragma once

#include <vector>

#include "droplab/convex_body.hpp"

namespace droplab {

// Result of chopping the cap around a boundary point x0 at radius eps: the
// circle about x0 meets the boundary at x1, x2; the body is clipped by the
// chord through them on the side away from x0.
struct CapCutReport {
    double eps = 0.0;
    double gamma_eps = 0.0;  // base angle of the isosceles triangle (x0, x1, x2)
    double delta_v = 0.0;    // area removed
    double delta_p = 0.0;    // perimeter decrease
    Vec2 x1{0, 0}, x2{0, 0};
    ConvexBody2 body_cut;
};

// Number of points where the circle of radius eps about x0 meets the boundary.
int circle_boundary_intersections(const ConvexBody2& body, Vec2 x0, double eps,
                                  std::vector<Vec2>* points = nullptr);

// Largest radius for which the intersection stays two points, halved
// (bisection estimate).
double eps0_bound(const ConvexBody2& body, Vec2 x0);

CapCutReport cut_cap(const ConvexBody2& body, Vec2 x0, double eps);

// Sweeps boundary sample points and cut radii, reporting delta_v / eps^3.
// Bounded ratios behave like a C^{1,1} boundary at the polygon scale; at a
// corner delta_v ~ eps^2, so the ratio grows like 1/eps and the growth
// exponent of delta_v drops toward 2.
struct SmoothnessPoint {
    Vec2 x0{0, 0};
    std::vector<double> eps;
    std::vector<double> ratio;   // delta_v / eps^3
    double max_ratio = 0.0;
    double growth_exponent = 0.0;  // slope of log delta_v vs log eps
    bool corner_like = false;
};

struct SmoothnessReport {
    std::vector<SmoothnessPoint> points;
    double sup_ratio = 0.0;
    std::vector<int> corner_indices;
};

SmoothnessReport smoothness_diagnostic(const ConvexBody2& body,
                                       const std::vector<double>& eps_sweep = {},
                                       int sample_budget = 128);

}  // namespace droplab
