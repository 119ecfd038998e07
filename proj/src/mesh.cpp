#include "droplab/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "droplab/errors.hpp"

namespace droplab {

std::vector<int> mesh_counts(const ConvexBody2& body, int n) {
    const auto& v = body.vertices;
    const int ne = static_cast<int>(v.size());
    const double per = perimeter(body);
    std::vector<double> len(ne);
    for (int i = 0; i < ne; ++i) len[i] = dist(v[i], v[(i + 1) % ne]);

    std::vector<int> counts(ne);
    int total = 0;
    for (int i = 0; i < ne; ++i) {
        counts[i] = std::max(1, static_cast<int>(std::llround(len[i] * n / per)));
        total += counts[i];
    }
    // Nudge to exactly max(n, ne) panels, keeping panels arclength-uniform.
    const int target = std::max(n, ne);
    while (total < target) {
        int k = 0;
        double worst = -1;
        for (int i = 0; i < ne; ++i) {
            const double plen = len[i] / counts[i];
            if (plen > worst) {
                worst = plen;
                k = i;
            }
        }
        ++counts[k];
        ++total;
    }
    while (total > target) {
        int k = -1;
        double best = 1e300;
        for (int i = 0; i < ne; ++i) {
            if (counts[i] <= 1) continue;
            const double plen = len[i] / (counts[i] - 1);
            if (plen < best) {
                best = plen;
                k = i;
            }
        }
        if (k < 0) break;
        --counts[k];
        --total;
    }
    return counts;
}

BoundaryMesh build_mesh_with_counts(const std::vector<Vec2>& vertices,
                                    const std::vector<int>& per_edge_counts) {
    const int ne = static_cast<int>(vertices.size());
    BoundaryMesh mesh;
    double s = 0.0;
    for (int i = 0; i < ne; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % ne];
        const int k = per_edge_counts[i];
        const double elen = dist(a, b);
        for (int j = 0; j < k; ++j) {
            const double t0 = static_cast<double>(j) / k;
            const double t1 = static_cast<double>(j + 1) / k;
            mesh.panel_a.push_back(a + t0 * (b - a));
            mesh.panel_b.push_back(a + t1 * (b - a));
            mesh.nodes.push_back(a + 0.5 * (t0 + t1) * (b - a));
            mesh.weights.push_back(elen / k);
            mesh.arclength.push_back(s + elen * 0.5 * (t0 + t1));
            mesh.edge_of.push_back(i);
        }
        s += elen;
    }
    return mesh;
}

BoundaryMesh build_mesh(const ConvexBody2& body, int n) {
    if (n < kMinMeshNodes) throw ValidationError("build_mesh: n must be at least 16");
    return build_mesh_with_counts(body.vertices, mesh_counts(body, n));
}

}  // namespace droplab
