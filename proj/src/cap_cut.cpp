#include "droplab/cap_cut.hpp"

#include <algorithm>
#include <cmath>

#include "droplab/errors.hpp"

namespace droplab {

namespace {

// Roots t in [0,1) of |a + t(b-a) - x0| = eps, written around the closest
// approach so radii far below the segment scale do not cancel away.
void circle_segment_roots(Vec2 a, Vec2 b, Vec2 x0, double eps, std::vector<Vec2>& out) {
    const Vec2 d = b - a;
    const double A = norm2(d);
    if (A == 0) return;
    const double tc = dot(x0 - a, d) / A;       // closest-approach parameter
    const Vec2 m = a + tc * d;
    const double h2 = norm2(x0 - m);            // squared distance to the line
    const double rad2 = eps * eps - h2;
    if (rad2 < 0) return;
    const double dt = std::sqrt(rad2 / A);
    for (const double t : {tc - dt, tc + dt}) {
        if (t >= 0.0 && t < 1.0) out.push_back(a + t * d);
        if (dt == 0.0) break;  // tangent: single root
    }
}

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, Vec2 n, double b) {
    std::vector<Vec2> out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % m];
        const double dp = dot(n, p) - b;
        const double dq = dot(n, q) - b;
        if (dp <= 0) out.push_back(p);
        if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
            const double t = dp / (dp - dq);
            out.push_back(p + t * (q - p));
        }
    }
    return out;
}

double poly_area(const std::vector<Vec2>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) a += cross(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * a;
}

double poly_perimeter(const std::vector<Vec2>& pts) {
    double p = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) p += dist(pts[i], pts[(i + 1) % pts.size()]);
    return p;
}

}  // namespace

int circle_boundary_intersections(const ConvexBody2& body, Vec2 x0, double eps,
                                  std::vector<Vec2>* points) {
    std::vector<Vec2> hits;
    const auto& v = body.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        circle_segment_roots(v[i], v[(i + 1) % v.size()], x0, eps, hits);
    }
    // Merge hits that coincide (circle passing through a vertex shows up in
    // both adjacent edges).
    const double tol = 1e-12 * (1.0 + eps);
    std::vector<Vec2> uniq;
    for (const auto& p : hits) {
        bool dup = false;
        for (const auto& q : uniq) dup = dup || dist(p, q) <= tol;
        if (!dup) uniq.push_back(p);
    }
    if (points) *points = uniq;
    return static_cast<int>(uniq.size());
}

double eps0_bound(const ConvexBody2& body, Vec2 x0) {
    const double diam = diameter(body);
    double lo = 1e-9 * diam;
    if (circle_boundary_intersections(body, x0, lo) != 2) {
        // Pathologically small bodies; shrink further.
        lo = 1e-13 * diam;
        if (circle_boundary_intersections(body, x0, lo) != 2)
            throw ValidationError("eps0_bound: no two-point radius found (x0 off the boundary?)");
    }
    double hi = diam;
    if (circle_boundary_intersections(body, x0, hi) == 2) return 0.5 * hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (circle_boundary_intersections(body, x0, mid) == 2)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * lo;
}

CapCutReport cut_cap(const ConvexBody2& body, Vec2 x0, double eps) {
    const double diam = diameter(body);
    if (!(eps > 0)) throw ValidationError("cut_cap: eps must be positive");
    if (distance_to_boundary(body, x0) > 1e-9 * diam)
        throw ValidationError("cut_cap: x0 is not on the boundary");
    x0 = project_to_boundary(body, x0);

    std::vector<Vec2> hits;
    const int k = circle_boundary_intersections(body, x0, eps, &hits);
    if (k != 2)
        throw ValidationError("cut_cap: eps too large, circle meets boundary at " +
                              std::to_string(k) + " points");
    const Vec2 x1 = hits[0], x2 = hits[1];

    // gamma is the base angle of the isosceles triangle (x0, x1, x2):
    // |x1 - x2| = 2 eps cos(gamma).
    const double chord = dist(x1, x2);
    const double c = std::clamp(chord / (2.0 * eps), -1.0, 1.0);
    const double gamma = std::acos(c);

    // Clip by the chord line, keeping the side away from x0.
    CapCutReport rep;
    rep.eps = eps;
    rep.gamma_eps = gamma;
    rep.x1 = x1;
    rep.x2 = x2;
    const Vec2 t = x2 - x1;
    Vec2 n{-t.y, t.x};
    double b = dot(n, x1);
    // x0 on the chord line: the cut is degenerate (straight boundary), nothing
    // is removed.
    if (std::abs(dot(n, x0) - b) <= 1e-12 * norm(n) * (1.0 + eps)) {
        rep.body_cut = body;
        return rep;
    }
    if (dot(n, x0) < b) {
        n = {-n.x, -n.y};
        b = -b;
    }
    // Keep {dot(n,x) <= b}; x0 side has dot(n,x0) >= b.
    const auto clipped = clip_halfplane(body.vertices, n, b);
    if (clipped.size() < 3) throw ValidationError("cut_cap: cut removed the whole body");
    rep.delta_v = std::max(0.0, area(body) - poly_area(clipped));
    rep.delta_p = std::max(0.0, perimeter(body) - poly_perimeter(clipped));
    rep.body_cut = make_convex_body(clipped);
    return rep;
}

SmoothnessReport smoothness_diagnostic(const ConvexBody2& body,
                                       const std::vector<double>& eps_sweep, int sample_budget) {
    SmoothnessReport rep;
    const auto& v = body.vertices;
    const std::size_t stride = std::max<std::size_t>(1, v.size() / std::max(1, sample_budget / 2));
    std::vector<Vec2> samples;
    for (std::size_t i = 0; i < v.size(); i += stride) {
        samples.push_back(v[i]);
        samples.push_back(0.5 * (v[i] + v[(i + 1) % v.size()]));
    }

    for (const auto& x0 : samples) {
        SmoothnessPoint pt;
        pt.x0 = x0;
        std::vector<double> sweep = eps_sweep;
        if (sweep.empty()) {
            const double e0 = eps0_bound(body, x0);
            sweep = {e0, e0 / 2, e0 / 4};
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (double e : sweep) {
            CapCutReport cut;
            try {
                cut = cut_cap(body, x0, e);
            } catch (const ValidationError&) {
                continue;
            }
            if (cut.delta_v <= 0) continue;
            pt.eps.push_back(e);
            pt.ratio.push_back(cut.delta_v / (e * e * e));
            pt.max_ratio = std::max(pt.max_ratio, pt.ratio.back());
            const double lx = std::log(e), ly = std::log(cut.delta_v);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        if (m >= 2) {
            pt.growth_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            pt.corner_like = pt.growth_exponent < 2.5;
        } else {
            pt.growth_exponent = 3.0;
        }
        rep.sup_ratio = std::max(rep.sup_ratio, pt.max_ratio);
        if (pt.corner_like) rep.corner_indices.push_back(static_cast<int>(rep.points.size()));
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

}  // namespace droplab
