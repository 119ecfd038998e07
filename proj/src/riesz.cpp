#include "droplab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "droplab/errors.hpp"
#include "droplab/io_util.hpp"

namespace droplab {

double riesz_kernel(double alpha, double r) {
    return alpha == 0.0 ? -std::log(r) : std::pow(r, -alpha);
}

double panel_self_energy(double alpha, double l) {
    if (alpha == 0.0) return 1.5 - std::log(l);
    if (alpha < 1.0) return 2.0 * std::pow(l, -alpha) / ((1.0 - alpha) * (2.0 - alpha));
    throw ValidationError("panel self-energy undefined for alpha >= 1 on 1-D panels");
}

DenseMatrix assemble_kernel_matrix(const BoundaryMesh& mesh, double alpha) {
    if (alpha >= 1.0)
        throw ValidationError("alpha >= 1: interaction energy is infinite on boundary curves");
    const int n = mesh.size();
    DenseMatrix K(n);
    // Guard against coincident nodes from collapsed panels.
    double scale = 0.0;
    for (double w : mesh.weights) scale += w;
    const double rmin = 1e-14 * scale;
    for (int i = 0; i < n; ++i) {
        K.at(i, i) = panel_self_energy(alpha, std::max(mesh.weights[i], rmin));
        for (int j = i + 1; j < n; ++j) {
            const double r = std::max(dist(mesh.nodes[i], mesh.nodes[j]), rmin);
            const double v = riesz_kernel(alpha, r);
            K.at(i, j) = v;
            K.at(j, i) = v;
        }
    }
    return K;
}

std::vector<double> BoundaryMeasure::density() const {
    std::vector<double> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f[i] = w[i] / mesh.weights[i];
    return f;
}

namespace {

double robin_deviation_of(const SimplexQpResult& sol) {
    double wmax = 0.0;
    for (double x : sol.w) wmax = std::max(wmax, x);
    const double threshold = 1e-8 * wmax;
    double dev = 0.0;
    for (std::size_t i = 0; i < sol.w.size(); ++i) {
        if (sol.w[i] > threshold) dev = std::max(dev, std::abs(sol.kw[i] - sol.energy));
    }
    return dev;
}

}  // namespace

EnergySolveReport equilibrium_measure(const ConvexBody2& body, double alpha, int n, double tol,
                                      const std::vector<double>* warm_start) {
    if (!(tol > 0)) throw ValidationError("equilibrium_measure: tol must be positive");
    BoundaryMesh mesh = build_mesh(body, n);
    const DenseMatrix K = assemble_kernel_matrix(mesh, alpha);
    const int cap = 200 * K.n;
    SimplexQpResult sol = minimize_quadratic_on_simplex(K, tol, cap, warm_start);
    if (!sol.converged)
        throw NumericError("equilibrium solve did not converge: gap " + fmt17(sol.gap) + " after " +
                           std::to_string(sol.iterations) + " iterations");
    EnergySolveReport rep;
    rep.alpha = alpha;
    rep.n = K.n;
    rep.energy = sol.energy;
    rep.robin_deviation = robin_deviation_of(sol);
    rep.iterations = sol.iterations;
    rep.duality_gap = sol.gap;
    rep.converged = true;
    rep.measure = BoundaryMeasure{std::move(mesh), std::move(sol.w)};
    return rep;
}

double potential(const BoundaryMeasure& measure, double alpha, Vec2 point) {
    const auto& mesh = measure.mesh;
    double scale = 0.0;
    for (double w : mesh.weights) scale += w;
    const double node_tol = 1e-12 * scale;
    double v = 0.0;
    for (int j = 0; j < mesh.size(); ++j) {
        const double r = dist(point, mesh.nodes[j]);
        if (r <= node_tol) {
            v += measure.w[j] * panel_self_energy(alpha, mesh.weights[j]);
        } else {
            v += measure.w[j] * riesz_kernel(alpha, r);
        }
    }
    return v;
}

ScalingCheck scaling_check(const ConvexBody2& body, double alpha, double lambda, int n,
                           double tol) {
    if (!(lambda > 0)) throw ValidationError("scaling_check: lambda must be positive");
    ScalingCheck out;
    out.energy_base = equilibrium_measure(body, alpha, n, tol).energy;
    out.energy_scaled = equilibrium_measure(scale(body, lambda), alpha, n, tol).energy;
    const double expected =
        alpha == 0.0 ? out.energy_base - std::log(lambda) : std::pow(lambda, -alpha) * out.energy_base;
    out.identity_residual = out.energy_scaled - expected;
    return out;
}

DensityLpReport density_lp_report(const BoundaryMeasure& measure, const std::vector<double>& ps,
                                  double fit_window_fraction) {
    DensityLpReport rep;
    const auto f = measure.density();
    const auto& mesh = measure.mesh;
    for (double p : ps) {
        double acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(f[i], p) * mesh.weights[i];
        rep.p.push_back(p);
        rep.norm.push_back(std::pow(acc, 1.0 / p));
    }
    rep.linf = *std::max_element(f.begin(), f.end());

    // Corner exponent: fit log f against log(distance to nearest polygon
    // vertex) for nodes near the vertices.
    std::vector<Vec2> corners;
    {
        // Panel endpoints shared by two polygon edges are the vertices.
        for (int i = 0; i < mesh.size(); ++i) {
            const int j = (i + 1) % mesh.size();
            if (mesh.edge_of[i] != mesh.edge_of[j]) corners.push_back(mesh.panel_b[i]);
        }
    }
    double diam = 0.0;
    for (const auto& a : corners)
        for (const auto& b : corners) diam = std::max(diam, dist(a, b));
    const double window = fit_window_fraction * (diam > 0 ? diam : 1.0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = 0; i < mesh.size(); ++i) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& c : corners) d = std::min(d, dist(mesh.nodes[i], c));
        if (!(d > 0) || d > window || !(f[i] > 0)) continue;
        const double lx = std::log(d), ly = std::log(f[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    rep.fit_points = m;
    rep.corner_exponent = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return rep;
}

AreaCloud build_area_cloud(const ConvexBody2& body, int per_axis) {
    AreaCloud cloud;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : body.vertices) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double hx = (xmax - xmin) / per_axis, hy = (ymax - ymin) / per_axis;
    for (int i = 0; i < per_axis; ++i) {
        for (int j = 0; j < per_axis; ++j) {
            const Vec2 c{xmin + (i + 0.5) * hx, ymin + (j + 0.5) * hy};
            if (contains_point(body, c, 0.0)) {
                cloud.points.push_back(c);
                cloud.weights.push_back(hx * hy);
            }
        }
    }
    return cloud;
}

SimplexQpResult cloud_energy_2d(const AreaCloud& cloud, double alpha, double tol, int max_iters) {
    const int n = static_cast<int>(cloud.points.size());
    DenseMatrix K(n);
    for (int i = 0; i < n; ++i) {
        // Disk-equivalent patch: mean of r^-alpha over a disk of equal area.
        // For alpha = 1 this is 16/(3 pi r); general alpha integrates to
        // 2 r^-alpha * ... ; use the exact disk mean.
        const double r_eq = std::sqrt(cloud.weights[i] / M_PI);
        double diag;
        if (alpha == 1.0) {
            diag = 16.0 / (3.0 * M_PI * r_eq);
        } else {
            // Mean of |x-y|^-alpha over the unit disk squared, scaled: for the
            // unit disk the mean equals 2^(3-alpha)/((2-alpha)...) -- compute
            // numerically once per call via the distance density
            // p(t) = (2t)(acos(t/2)*2/pi - t*sqrt(1-t^2/4)/pi), t in [0,2].
            const int q = 2000;
            double acc = 0.0;
            for (int k = 0; k < q; ++k) {
                const double t = 2.0 * (k + 0.5) / q;
                const double pdf =
                    2.0 * t * (std::acos(t / 2) * 2.0 / M_PI - (t / M_PI) * std::sqrt(1.0 - t * t / 4));
                acc += pdf * std::pow(t, -alpha) * (2.0 / q);
            }
            diag = acc * std::pow(r_eq, -alpha);
        }
        K.at(i, i) = diag;
        for (int j = i + 1; j < n; ++j) {
            const double v = riesz_kernel(alpha, dist(cloud.points[i], cloud.points[j]));
            K.at(i, j) = v;
            K.at(j, i) = v;
        }
    }
    return minimize_quadratic_on_simplex(K, tol, max_iters);
}

std::string measure_to_csv(const BoundaryMeasure& measure) {
    std::ostringstream out;
    out << "s,x,y,weight,density\n";
    const auto f = measure.density();
    for (int i = 0; i < measure.mesh.size(); ++i) {
        out << fmt17(measure.mesh.arclength[i]) << "," << fmt17(measure.mesh.nodes[i].x) << ","
            << fmt17(measure.mesh.nodes[i].y) << "," << fmt17(measure.w[i]) << "," << fmt17(f[i])
            << "\n";
    }
    return out.str();
}

std::string report_to_json(const EnergySolveReport& rep) {
    nlohmann::json j;
    j["alpha"] = rep.alpha;
    j["n"] = rep.n;
    j["energy"] = rep.energy;
    j["robin_deviation"] = rep.robin_deviation;
    j["duality_gap"] = rep.duality_gap;
    j["iterations"] = rep.iterations;
    return j.dump(2);
}

}  // namespace droplab
