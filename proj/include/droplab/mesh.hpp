#pragma once

#include <vector>

#include "droplab/convex_body.hpp"

namespace droplab {

// Panel discretization of the boundary. Nodes are panel midpoints, weights
// panel arclengths; polygon vertices are always panel endpoints.
struct BoundaryMesh {
    std::vector<Vec2> nodes;
    std::vector<double> weights;
    std::vector<Vec2> panel_a, panel_b;  // panel endpoints
    std::vector<double> arclength;       // arclength coordinate of each node
    std::vector<int> edge_of;            // polygon edge index of each panel

    int size() const { return static_cast<int>(nodes.size()); }
};

inline constexpr int kMinMeshNodes = 16;

// Arclength-uniform panels, at least one per polygon edge; the panel count is
// exactly max(n, #edges).
BoundaryMesh build_mesh(const ConvexBody2& body, int n);

// Same panel layout rebuilt on another body with the same edge count. Keeps
// node positions a smooth function of the vertices, which the shape gradient
// relies on.
BoundaryMesh build_mesh_with_counts(const std::vector<Vec2>& vertices,
                                    const std::vector<int>& per_edge_counts);

std::vector<int> mesh_counts(const ConvexBody2& body, int n);

}  // namespace droplab
