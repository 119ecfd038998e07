#include "droplab/john_box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "droplab/errors.hpp"

namespace droplab {

namespace {

struct Frame {
    double xmin, xmax, ymin, ymax;
    std::vector<Vec2> pts;
};

Frame rotated_frame(const ConvexBody2& body, double angle) {
    Frame f;
    f.pts.reserve(body.vertices.size());
    f.xmin = f.ymin = std::numeric_limits<double>::infinity();
    f.xmax = f.ymax = -std::numeric_limits<double>::infinity();
    for (const auto& p : body.vertices) {
        const Vec2 q = rotate(p, angle);
        f.pts.push_back(q);
        f.xmin = std::min(f.xmin, q.x);
        f.xmax = std::max(f.xmax, q.x);
        f.ymin = std::min(f.ymin, q.y);
        f.ymax = std::max(f.ymax, q.y);
    }
    return f;
}

// Clip a convex polygon against the half-plane {x : dot(n,x) <= b}.
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

// Feasible placements z for a w-by-h rectangle centered at z inside the
// polygon: intersection of the polygon translated by the four corner offsets.
std::vector<Vec2> placement_region(const std::vector<Vec2>& poly, double w, double h) {
    std::vector<Vec2> region = poly;
    const Vec2 corners[4] = {{w / 2, h / 2}, {-w / 2, h / 2}, {w / 2, -h / 2}, {-w / 2, -h / 2}};
    const std::size_t m = poly.size();
    for (const auto& c : corners) {
        for (std::size_t i = 0; i < m && !region.empty(); ++i) {
            const Vec2& a = poly[i];
            const Vec2& bb = poly[(i + 1) % m];
            const Vec2 e = bb - a;
            const Vec2 n{e.y, -e.x};  // inward for CCW is dot(n,x) <= dot(n,a) flipped; pick outward normal
            // CCW polygon: interior satisfies cross(e, x - a) >= 0, i.e.
            // dot({-e.y, e.x}, x - a) >= 0  ->  dot({e.y, -e.x}, x) <= dot({e.y,-e.x}, a).
            region = clip_halfplane(region, n, dot(n, a) - dot(n, c));
        }
        if (region.empty()) break;
    }
    return region;
}

// Largest s such that a translate of s*(W x H) fits in the polygon, plus a
// feasible center.
std::pair<double, Vec2> max_scaled_box(const std::vector<Vec2>& poly, double W, double H) {
    double lo = 0.0, hi = 1.0;
    Vec2 center{0, 0};
    // Ensure hi is infeasible or accept hi = 1 (rectangle body case).
    auto region_at = [&](double s) { return placement_region(poly, s * W, s * H); };
    {
        const auto r = region_at(1.0);
        if (!r.empty()) {
            Vec2 c{0, 0};
            for (const auto& p : r) c = c + p;
            return {1.0, (1.0 / r.size()) * c};
        }
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto r = region_at(mid);
        if (!r.empty()) {
            lo = mid;
            Vec2 c{0, 0};
            for (const auto& p : r) c = c + p;
            center = (1.0 / r.size()) * c;
        } else {
            hi = mid;
        }
    }
    return {lo, center};
}

struct Candidate {
    double angle, s;
    Vec2 center;
    double W, H;
    double c() const { return s > 0 ? 1.0 / s : std::numeric_limits<double>::infinity(); }
};

Candidate evaluate_angle(const ConvexBody2& body, double angle) {
    const Frame f = rotated_frame(body, angle);
    const double W = f.xmax - f.xmin, H = f.ymax - f.ymin;
    // For very fine polygons, search placements inside a subsampled (hence
    // inscribed) polygon; the bounding box still uses every vertex, so the
    // certificate remains sound.
    std::vector<Vec2> search = f.pts;
    if (search.size() > 96) {
        std::vector<Vec2> sub;
        const std::size_t k = (search.size() + 95) / 96;
        for (std::size_t i = 0; i < search.size(); i += k) sub.push_back(search[i]);
        search = std::move(sub);
    }
    const auto [s, center] = max_scaled_box(search, W, H);
    return Candidate{angle, s, center, W, H};
}

}  // namespace

JohnBox john_box(const ConvexBody2& body) {
    const auto& v = body.vertices;
    std::vector<double> angles;
    // Edge directions (cap the budget for very fine polygons).
    const std::size_t stride = std::max<std::size_t>(1, v.size() / 48);
    for (std::size_t i = 0; i < v.size(); i += stride) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        if (norm(e) > 0) angles.push_back(-std::atan2(e.y, e.x));
    }
    // Diameter direction, important for needle-like bodies.
    {
        double best = -1;
        Vec2 dir{1, 0};
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                const double d = dist(v[i], v[j]);
                if (d > best) {
                    best = d;
                    dir = v[j] - v[i];
                }
            }
        angles.push_back(-std::atan2(dir.y, dir.x));
    }

    Candidate best = evaluate_angle(body, angles[0]);
    for (std::size_t i = 1; i < angles.size(); ++i) {
        const Candidate c = evaluate_angle(body, angles[i]);
        if (c.s > best.s) best = c;
    }
    // Local golden-section refinement around the best angle.
    {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = best.angle - 0.12, b = best.angle + 0.12;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        Candidate c1 = evaluate_angle(body, x1), c2 = evaluate_angle(body, x2);
        for (int it = 0; it < 24; ++it) {
            if (c1.s > c2.s) {
                b = x2;
                x2 = x1;
                c2 = c1;
                x1 = b - gr * (b - a);
                c1 = evaluate_angle(body, x1);
            } else {
                a = x1;
                x1 = x2;
                c1 = c2;
                x2 = a + gr * (b - a);
                c2 = evaluate_angle(body, x2);
            }
        }
        if (c1.s > best.s) best = c1;
        if (c2.s > best.s) best = c2;
    }

    JohnBox out;
    out.angle = best.angle;
    out.lambda1 = best.s * best.W;
    out.lambda2 = best.s * best.H;
    out.c_factor = best.c();
    const Vec2 ll{best.center.x - out.lambda1 / 2, best.center.y - out.lambda2 / 2};
    out.offset = {-ll.x, -ll.y};
    const Frame f = rotated_frame(body, best.angle);
    out.outer_corner = {f.xmin - ll.x, f.ymin - ll.y};
    out.near_degenerate = out.lambda2 < 1e-14 * out.lambda1;

    // Certify: inscribed rectangle corners inside the body, body inside the
    // circumscribed box.
    ConvexBody2 moved = translate(rotate(body, best.angle), out.offset);
    const double tol = 1e-7;
    bool ok = true;
    const Vec2 rect[4] = {{0, 0}, {out.lambda1, 0}, {out.lambda1, out.lambda2}, {0, out.lambda2}};
    for (const auto& p : rect) ok = ok && contains_point(moved, p, tol);
    const double cw = out.c_factor * out.lambda1, ch = out.c_factor * out.lambda2;
    const double pad = tol * (1.0 + diameter(body));
    for (const auto& p : moved.vertices) {
        ok = ok && p.x >= out.outer_corner.x - pad && p.x <= out.outer_corner.x + cw + pad &&
             p.y >= out.outer_corner.y - pad && p.y <= out.outer_corner.y + ch + pad;
    }
    out.certified = ok;
    return out;
}

PhiBoundsReport phi_bounds_check(const std::vector<double>& lambdas, double alpha,
                                 double i_alpha_value) {
    const int N = static_cast<int>(lambdas.size());
    if (N < 2) throw ValidationError("phi_bounds_check needs at least 2 side lengths");
    for (double l : lambdas)
        if (!(l > 0)) throw ValidationError("phi_bounds_check: side lengths must be positive");

    PhiBoundsReport r;
    r.N = N;
    r.alpha = alpha;
    r.volume = 1.0;
    for (double l : lambdas) r.volume *= l;
    // Surface measure of the box boundary: 2 * sum_i prod_{j != i} lambda_j.
    r.surface = 0.0;
    for (int i = 0; i < N; ++i) r.surface += 2.0 * r.volume / lambdas[i];
    r.phi = std::pow(r.volume, -double(N - 2) / double(N - 1)) * r.surface;
    r.lambda_max = *std::max_element(lambdas.begin(), lambdas.end());
    r.lambda_min = *std::min_element(lambdas.begin(), lambdas.end());

    r.ratio_max = r.lambda_max / std::pow(r.phi, N - 1);
    r.ratio_min = r.lambda_min / (std::pow(r.volume, 1.0 / (N - 1)) / r.phi);

    double off_max = 0.0;
    bool skipped_max = false;
    for (double l : lambdas) {
        if (!skipped_max && l == r.lambda_max) {
            skipped_max = true;
            continue;
        }
        off_max = std::max(off_max, l);
    }
    const double common = std::pow(r.phi, N - 2) * std::pow(r.volume, 1.0 / (N - 1));
    if (alpha > 0) {
        r.ratio_energy_max = r.lambda_max * std::pow(i_alpha_value, 1.0 / alpha);
        r.ratio_energy_off =
            N > 2 || off_max > 0 ? off_max / (std::pow(i_alpha_value, 1.0 / alpha) * common) : 0.0;
    } else {
        r.ratio_energy_max = r.lambda_max / std::exp(-i_alpha_value);
        r.ratio_energy_off = off_max > 0 ? off_max / (std::exp(i_alpha_value) * common) : 0.0;
    }
    return r;
}

}  // namespace droplab
