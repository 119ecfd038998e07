#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "droplab/vec2.hpp"

namespace droplab {

// Convex polygon with vertices in counterclockwise order. Construction
// normalizes the vertex list (CCW orientation, consecutive duplicates merged,
// collinear interior vertices removed) and rejects non-convex or degenerate
// input.
struct ConvexBody2 {
    std::vector<Vec2> vertices;

    std::size_t size() const { return vertices.size(); }
};

inline constexpr double kConvexityTol = 1e-12;  // scaled by diam^2 in checks

ConvexBody2 make_convex_body(std::vector<Vec2> points);

double area(const ConvexBody2& body);
double perimeter(const ConvexBody2& body);
double diameter(const ConvexBody2& body);
// Minimal width over all directions (rotating-calipers style over edge normals).
double min_width(const ConvexBody2& body);
Vec2 centroid(const ConvexBody2& body);

bool contains_point(const ConvexBody2& body, Vec2 p, double tol = 1e-9);
double distance_to_boundary(const ConvexBody2& body, Vec2 p);
// Closest point on the boundary polyline.
Vec2 project_to_boundary(const ConvexBody2& body, Vec2 p);

ConvexBody2 translate(const ConvexBody2& body, Vec2 t);
ConvexBody2 rotate(const ConvexBody2& body, double angle);
ConvexBody2 scale(const ConvexBody2& body, double factor);

// Symmetric Hausdorff distance; exact for convex polygons (the max of the
// distance function over a convex polygon is attained at a vertex).
double hausdorff_distance(const ConvexBody2& a, const ConvexBody2& b);

// Named generator shapes. "disk" is a regular n-gon with circumradius r.
ConvexBody2 regular_ngon(int k, double circumradius, Vec2 center = {0, 0});
ConvexBody2 rectangle_body(double lx, double ly, Vec2 corner = {0, 0});

// Polygon text format: one "x y" vertex per line, bodies separated by blank
// lines.
std::vector<ConvexBody2> read_bodies(std::istream& in);
std::vector<ConvexBody2> read_bodies_file(const std::string& path);
void write_bodies(std::ostream& out, const std::vector<ConvexBody2>& bodies);
void write_bodies_file(const std::string& path, const std::vector<ConvexBody2>& bodies);

}  // namespace droplab
