#pragma once

#include <string>
#include <vector>

#include "droplab/convex_body.hpp"

namespace droplab {

// Support numbers h_i on the fixed fan of outward normals theta_i = 2*pi*i/M.
// A fan describes a convex polygon iff every derived edge length is
// nonnegative; that condition is linear in h, which is what makes this the
// optimizer's decision variable.
struct SupportFan {
    int M = 0;
    std::vector<double> h;
};

// Edge length of the facet with normal theta_i:
//   l_i = (h_{i-1} + h_{i+1} - 2 h_i cos(2*pi/M)) / sin(2*pi/M).
std::vector<double> edge_lengths(const SupportFan& fan);

// Index of the most violated edge-length constraint, or -1 if feasible.
int fan_violation_index(const SupportFan& fan, double tol = 1e-12);

ConvexBody2 support_to_polygon(const SupportFan& fan);
SupportFan polygon_to_support(const ConvexBody2& body, int M);

// Euclidean projection onto the convexity cone {l_i(h) >= 0}; dual coordinate
// ascent on the banded circulant system.
SupportFan project_to_feasible(const SupportFan& fan, double tol = 1e-12, int max_sweeps = 4000);

// Vertices of the (possibly degenerate) support polygon, one per fan index:
// vertex i is the intersection of the supporting lines i and i+1. Used by the
// optimizer's differentiable meshing, where zero-length edges must keep their
// place in the indexing.
std::vector<Vec2> fan_vertices(const SupportFan& fan);

SupportFan fan_from_json(const std::string& text);
std::string fan_to_json(const SupportFan& fan);

// Fan whose polygon is the regular M-gon of the given area (disk surrogate).
SupportFan disk_fan(int M, double target_area = 1.0);

}  // namespace droplab
