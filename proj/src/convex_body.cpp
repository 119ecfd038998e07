#include "droplab/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "droplab/errors.hpp"
#include "droplab/io_util.hpp"

namespace droplab {

namespace {

double bbox_diag(const std::vector<Vec2>& pts) {
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

double signed_area(const std::vector<Vec2>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % pts.size()];
        a += cross(p, q);
    }
    return 0.5 * a;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

Vec2 point_segment_closest(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return a;
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return a + t * ab;
}

}  // namespace

ConvexBody2 make_convex_body(std::vector<Vec2> points) {
    if (points.size() < 3) throw ValidationError("convex body needs at least 3 vertices");
    const double diam = bbox_diag(points);
    if (!(diam > 0)) throw ValidationError("convex body is a single point");

    if (signed_area(points) < 0) std::reverse(points.begin(), points.end());

    // Merge consecutive duplicates (cyclically).
    const double dup_tol = kConvexityTol * diam;
    std::vector<Vec2> merged;
    merged.reserve(points.size());
    for (const auto& p : points) {
        if (!merged.empty() && dist(merged.back(), p) <= dup_tol) continue;
        merged.push_back(p);
    }
    while (merged.size() > 1 && dist(merged.front(), merged.back()) <= dup_tol) merged.pop_back();
    if (merged.size() < 3) throw ValidationError("convex body degenerate after de-duplication");

    // Drop collinear interior vertices; reject reflex ones.
    const double cross_tol = kConvexityTol * diam * diam;
    std::vector<Vec2> out;
    out.reserve(merged.size());
    const std::size_t m = merged.size();
    for (std::size_t i = 0; i < m; ++i) {
        // Re-check against the running output so chains of collinear points
        // collapse in one pass.
        Vec2 prev = out.size() >= 1 ? out.back() : merged[(i + m - 1) % m];
        const Vec2& cur = merged[i];
        const Vec2& next = merged[(i + 1) % m];
        const double c = cross(cur - prev, next - cur);
        if (c < -cross_tol) {
            throw ValidationError("vertex sequence is not convex (vertex " + std::to_string(i) + ")");
        }
        if (c <= cross_tol && dot(cur - prev, next - cur) > 0) continue;  // collinear
        out.push_back(cur);
    }
    // The wrap-around vertex may still be collinear with its neighbours.
    for (int pass = 0; pass < 2 && out.size() > 3; ++pass) {
        const std::size_t k = out.size();
        const Vec2 prev = out[k - 2], cur = out[k - 1], first = out[0], second = out[1];
        if (std::abs(cross(cur - prev, first - cur)) <= cross_tol && dot(cur - prev, first - cur) > 0) {
            out.pop_back();
            continue;
        }
        if (std::abs(cross(first - cur, second - first)) <= cross_tol && dot(first - cur, second - first) > 0) {
            out.erase(out.begin());
            continue;
        }
        break;
    }

    if (out.size() < 3) throw ValidationError("convex body degenerate after normalization");
    ConvexBody2 body{std::move(out)};
    if (!(area(body) > 0)) throw ValidationError("convex body has zero area");
    return body;
}

double area(const ConvexBody2& body) { return signed_area(body.vertices); }

double perimeter(const ConvexBody2& body) {
    double p = 0.0;
    const auto& v = body.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) p += dist(v[i], v[(i + 1) % v.size()]);
    return p;
}

double diameter(const ConvexBody2& body) {
    const auto& v = body.vertices;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, dist(v[i], v[j]));
    return best;
}

double min_width(const ConvexBody2& body) {
    const auto& v = body.vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        const double len = norm(e);
        if (len == 0) continue;
        const Vec2 n{-e.y / len, e.x / len};
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& p : v) {
            const double t = dot(n, p);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        best = std::min(best, hi - lo);
    }
    return best;
}

Vec2 centroid(const ConvexBody2& body) {
    const auto& v = body.vertices;
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        const double c = cross(p, q);
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    a *= 0.5;
    return {cx / (6 * a), cy / (6 * a)};
}

bool contains_point(const ConvexBody2& body, Vec2 p, double tol) {
    const auto& v = body.vertices;
    const double scale = diameter(body);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        if (cross(b - a, p - a) < -tol * scale * scale) return false;
    }
    return true;
}

double distance_to_boundary(const ConvexBody2& body, Vec2 p) {
    const auto& v = body.vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        best = std::min(best, point_segment_distance(p, v[i], v[(i + 1) % v.size()]));
    return best;
}

Vec2 project_to_boundary(const ConvexBody2& body, Vec2 p) {
    const auto& v = body.vertices;
    double best = std::numeric_limits<double>::infinity();
    Vec2 out = v[0];
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 q = point_segment_closest(p, v[i], v[(i + 1) % v.size()]);
        const double d = dist(p, q);
        if (d < best) {
            best = d;
            out = q;
        }
    }
    return out;
}

ConvexBody2 translate(const ConvexBody2& body, Vec2 t) {
    ConvexBody2 out = body;
    for (auto& p : out.vertices) p = p + t;
    return out;
}

ConvexBody2 rotate(const ConvexBody2& body, double angle) {
    ConvexBody2 out = body;
    for (auto& p : out.vertices) p = rotate(p, angle);
    return out;
}

ConvexBody2 scale(const ConvexBody2& body, double factor) {
    if (!(factor > 0)) throw ValidationError("scale factor must be positive");
    ConvexBody2 out = body;
    for (auto& p : out.vertices) p = factor * p;
    return out;
}

namespace {
double one_sided_hausdorff(const ConvexBody2& a, const ConvexBody2& b) {
    double best = 0.0;
    for (const auto& p : a.vertices) {
        if (contains_point(b, p, 1e-14)) continue;
        best = std::max(best, distance_to_boundary(b, p));
    }
    return best;
}
}  // namespace

double hausdorff_distance(const ConvexBody2& a, const ConvexBody2& b) {
    return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

ConvexBody2 regular_ngon(int k, double circumradius, Vec2 center) {
    if (k < 3) throw ValidationError("regular_ngon needs k >= 3");
    std::vector<Vec2> pts(k);
    for (int i = 0; i < k; ++i) {
        const double t = 2.0 * M_PI * i / k;
        pts[i] = {center.x + circumradius * std::cos(t), center.y + circumradius * std::sin(t)};
    }
    return make_convex_body(std::move(pts));
}

ConvexBody2 rectangle_body(double lx, double ly, Vec2 corner) {
    if (!(lx > 0) || !(ly > 0)) throw ValidationError("rectangle sides must be positive");
    return make_convex_body({{corner.x, corner.y},
                             {corner.x + lx, corner.y},
                             {corner.x + lx, corner.y + ly},
                             {corner.x, corner.y + ly}});
}

std::vector<ConvexBody2> read_bodies(std::istream& in) {
    std::vector<ConvexBody2> bodies;
    std::vector<Vec2> cur;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
            cur.push_back({x, y});
        } else if (!cur.empty()) {
            bodies.push_back(make_convex_body(std::move(cur)));
            cur.clear();
        }
    }
    if (!cur.empty()) bodies.push_back(make_convex_body(std::move(cur)));
    return bodies;
}

std::vector<ConvexBody2> read_bodies_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open polygon file: " + path);
    return read_bodies(in);
}

void write_bodies(std::ostream& out, const std::vector<ConvexBody2>& bodies) {
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        if (k) out << "\n";
        for (const auto& p : bodies[k].vertices) out << fmt17(p.x) << " " << fmt17(p.y) << "\n";
    }
}

void write_bodies_file(const std::string& path, const std::vector<ConvexBody2>& bodies) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    write_bodies(out, bodies);
}

}  // namespace droplab
