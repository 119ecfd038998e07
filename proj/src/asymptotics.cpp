#include "droplab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "droplab/errors.hpp"
#include "droplab/riesz.hpp"

namespace droplab {

double unit_ball_volume(int k) {
    if (k < 0) throw ValidationError("unit_ball_volume: negative dimension");
    return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double limit_shape_constant(int N) {
    if (N < 2) throw ValidationError("limit_shape_constant: N must be >= 2");
    return std::pow(unit_ball_volume(N - 1), 1.0 / (N - 1)) *
           std::pow(double(N), double(N - 2) / (N - 1));
}

double segment_energy(double alpha, int m, double tol) {
    if (alpha < 0 || alpha >= 1) throw ValidationError("segment_energy: alpha must be in [0,1)");
    if (alpha == 0.0) return std::log(4.0);
    // Chebyshev-spaced panel endpoints on [0,1]; the equilibrium density blows
    // up like d^{(alpha-1)/2} at the tips, so endpoint refinement is needed.
    // All panels are collinear, so pair interactions integrate exactly for
    // piecewise-constant densities:
    //   int_{[0,a]} int_{[g+a, g+a+b]} (t-s)^-alpha = F(g+a+b)-F(g+a)-F(g+b)+F(g)
    // with F(x) = x^(2-alpha)/((1-alpha)(2-alpha)).
    std::vector<double> t(m + 1);
    for (int k = 0; k <= m; ++k) t[k] = 0.5 * (1.0 - std::cos(M_PI * k / m));
    const double denom = (1.0 - alpha) * (2.0 - alpha);
    auto F = [&](double x) { return x <= 0 ? 0.0 : std::pow(x, 2.0 - alpha) / denom; };
    DenseMatrix K(m);
    for (int i = 0; i < m; ++i) {
        const double a = t[i + 1] - t[i];
        K.at(i, i) = panel_self_energy(alpha, a);
        for (int j = i + 1; j < m; ++j) {
            const double b = t[j + 1] - t[j];
            const double g = t[j] - t[i + 1];
            const double v = (F(g + a + b) - F(g + a) - F(g + b) + F(g)) / (a * b);
            K.at(i, j) = v;
            K.at(j, i) = v;
        }
    }
    const SimplexQpResult sol = minimize_quadratic_on_simplex(K, tol, 400 * m);
    if (!sol.converged) throw NumericError("segment_energy: solver did not converge");
    return sol.energy;
}

double limit_length(int N, double alpha, double i_alpha_01) {
    if (N < 2 || N > 3) throw ValidationError("limit_length: N must be 2 or 3");
    if (alpha < 0 || alpha > 1) throw ValidationError("limit_length: alpha must be in [0,1]");
    const double omega = unit_ball_volume(N - 1);
    const double denom = std::pow(double(N), double(N - 2) / (N - 1)) * std::pow(omega, 1.0 / (N - 1));
    if (alpha == 0.0) {
        return std::pow(double(N - 1), double(N - 1)) / (omega * std::pow(double(N), N - 2));
    }
    if (alpha == 1.0) {
        return std::pow(4.0 * (N - 1) / denom, double(N - 1) / N);
    }
    return std::pow(alpha * (N - 1) * i_alpha_01 / denom,
                    double(N - 1) / (1.0 + alpha * (N - 1)));
}

double limit_length(int N, double alpha) {
    const double i01 = (alpha > 0 && alpha < 1) ? segment_energy(alpha) : 0.0;
    return limit_length(N, alpha, i01);
}

double gamma_limit_value(double L, int N, double alpha, double i_alpha_01) {
    if (!(L > 0)) throw ValidationError("gamma_limit_value: L must be positive");
    const double head = limit_shape_constant(N) * std::pow(L, 1.0 / (N - 1));
    if (alpha == 0.0) return head + i_alpha_01 - std::log(L);
    if (alpha == 1.0) return head + 4.0 / L;
    return head + i_alpha_01 / std::pow(L, alpha);
}

double argmin_gamma_limit(int N, double alpha, double i_alpha_01) {
    double a = 1e-3, b = 1e3;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    // Golden section on log L for relative accuracy.
    double la = std::log(a), lb = std::log(b);
    double x1 = lb - gr * (lb - la), x2 = la + gr * (lb - la);
    double f1 = gamma_limit_value(std::exp(x1), N, alpha, i_alpha_01);
    double f2 = gamma_limit_value(std::exp(x2), N, alpha, i_alpha_01);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lb = x2;
            x2 = x1;
            f2 = f1;
            x1 = lb - gr * (lb - la);
            f1 = gamma_limit_value(std::exp(x1), N, alpha, i_alpha_01);
        } else {
            la = x1;
            x1 = x2;
            f1 = f2;
            x2 = la + gr * (lb - la);
            f2 = gamma_limit_value(std::exp(x2), N, alpha, i_alpha_01);
        }
        if (lb - la < 1e-12) break;
    }
    return std::exp(0.5 * (la + lb));
}

double rescaled_volume(double Q, int N, double alpha) {
    return std::pow(Q, -2.0 * N * (N - 1) / (1.0 + (N - 1) * alpha));
}

double rescaled_functional(const ConvexBody2& body, double Q, int N, double alpha, int n_mesh,
                           double tol) {
    const double vn = rescaled_volume(Q, N, alpha);
    const double a = area(body);
    if (std::abs(a - vn) > 1e-6 * vn)
        throw ValidationError("rescaled_functional: body volume does not match the rescaled volume");
    const double pref = std::pow(vn, -double(N - 2) / (N - 1));  // 1 for N = 2
    const double energy = equilibrium_measure(body, alpha, n_mesh, tol).energy;
    return pref * perimeter(body) + energy;
}

ConvexBody2 cone_profile_body(double L, double V) {
    if (!(L > 0) || !(V > 0)) throw ValidationError("cone_profile_body: L and V must be positive");
    // r(t) = (V/L)(1 - 2t/L) for t in [0, L/2], mirrored: a rhombus with
    // half-diagonals L/2 and V/L.
    const double w = V / L;
    return make_convex_body({{-L / 2, 0}, {0, -w}, {L / 2, 0}, {0, w}});
}

namespace {

// Retraction onto {f >= 0, f concave}: clip below zero, then take the least
// concave majorant (the upper hull of the graph), which is exactly feasible
// and leaves concave profiles untouched.
void project_concave_nonneg(std::vector<double>& f) {
    const int n = static_cast<int>(f.size());
    for (auto& x : f) x = std::max(x, 0.0);
    std::vector<int> hull;
    hull.reserve(n);
    for (int i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2];
            const int b = hull[hull.size() - 1];
            // Pop b when it lies on or below the chord a--i.
            if ((f[b] - f[a]) * (i - a) <= (f[i] - f[a]) * (b - a))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
        const int a = hull[seg], b = hull[seg + 1];
        for (int i = a + 1; i < b; ++i)
            f[i] = f[a] + (f[b] - f[a]) * (i - a) / static_cast<double>(b - a);
    }
}

}  // namespace

ConcaveProfileResult concave_profile_min(double gamma, double beta, double L, double V,
                                         int n_grid) {
    if (!(gamma > 0) || !(beta > gamma) || beta < 1.0)
        throw ValidationError("concave_profile_min: need 0 < gamma < beta, beta >= 1");
    if (!(L > 0) || !(V > 0)) throw ValidationError("concave_profile_min: L, V must be positive");
    if (n_grid < 64) throw ValidationError("concave_profile_min: n_grid must be >= 64");

    ConcaveProfileResult res;
    res.closed_form = std::pow(beta + 1.0, gamma / beta) / (gamma + 1.0) *
                      std::pow(L, 1.0 - gamma / beta) * std::pow(V, gamma / beta);

    const int n = n_grid + 1;
    const double hstep = L / n_grid;
    res.x.resize(n);
    for (int i = 0; i < n; ++i) res.x[i] = i * hstep;
    // Trapezoid weights.
    std::vector<double> tw(n, hstep);
    tw.front() = tw.back() = hstep / 2;

    auto moment = [&](const std::vector<double>& f, double p) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += tw[i] * std::pow(std::max(f[i], 0.0), p);
        return acc;
    };
    auto normalize = [&](std::vector<double>& f) {
        const double s = moment(f, beta);
        if (!(s > 1e-300)) return false;
        const double c = std::pow(V / s, 1.0 / beta);
        for (auto& x : f) x *= c;
        return true;
    };
    auto objective = [&](const std::vector<double>& f) { return moment(f, gamma); };

    // Constant profiles are critical points of the scale-normalized objective
    // (the gradient vanishes there), so start from a tilted concave profile.
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / n_grid;
        f[i] = 1.0 - 0.6 * t + 0.2 * t * (1.0 - t);
    }
    if (!normalize(f)) throw NumericError("concave_profile_min: degenerate start");
    double J = objective(f);

    double step = 0.5;
    const double floor_f = 1e-12;
    for (int iter = 0; iter < 4000; ++iter) {
        // Gradient of the scale-normalized objective
        // J(f) = (V/S_beta)^(gamma/beta) S_gamma evaluated at S_beta = V:
        // dJ/df_i = tw_i * gamma * (f^(gamma-1) - (S_gamma/V) f^(beta-1)).
        const double sg = moment(f, gamma);
        std::vector<double> g(n);
        double gnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double fi = std::max(f[i], floor_f);
            g[i] = tw[i] * gamma *
                   (std::pow(fi, gamma - 1.0) - (sg / V) * std::pow(fi, beta - 1.0));
            gnorm += g[i] * g[i];
        }
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-14) break;

        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            std::vector<double> cand = f;
            for (int i = 0; i < n; ++i) cand[i] -= step * g[i];
            project_concave_nonneg(cand);
            if (!normalize(cand)) {
                step *= 0.5;  // projected profile degenerated
                continue;
            }
            const double Jc = objective(cand);
            if (Jc < J - 1e-14) {
                f = std::move(cand);
                J = Jc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        step = std::min(step * 1.6, 64.0);
    }

    res.numeric = J;
    res.f = std::move(f);
    return res;
}

Cloud3 cylinder_surface_cloud(double L, double eps, int n_points) {
    if (!(L > 0)) throw ValidationError("cylinder cloud: L must be positive");
    if (!(eps > 1e-4 && eps < 0.2)) throw ValidationError("cylinder cloud: eps out of (1e-4, 0.2)");
    if (n_points < 500) throw ValidationError("cylinder cloud: need at least 500 points");

    const double lateral = 2.0 * M_PI * eps * L;
    const double caps = 2.0 * M_PI * eps * eps;
    int n_lat = std::max(100, static_cast<int>(std::llround(n_points * lateral / (lateral + caps))));
    int n_cap = std::max(8, (n_points - n_lat) / 2);

    Cloud3 cloud;
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n_lat; ++k) {
        const double x = L * (k + 0.5) / n_lat;
        const double phi = golden * k;
        cloud.points.push_back({x, eps * std::cos(phi), eps * std::sin(phi)});
        cloud.areas.push_back(lateral / n_lat);
    }
    for (int side = 0; side < 2; ++side) {
        const double x = side == 0 ? 0.0 : L;
        for (int k = 0; k < n_cap; ++k) {
            const double r = eps * std::sqrt((k + 0.5) / n_cap);
            const double phi = golden * k + side * 0.5;
            cloud.points.push_back({x, r * std::cos(phi), r * std::sin(phi)});
            cloud.areas.push_back(M_PI * eps * eps / n_cap);
        }
    }
    return cloud;
}

CloudEnergyReport cloud_energy_3d(const Cloud3& cloud, double alpha, double tol, int max_iters) {
    const int n = static_cast<int>(cloud.points.size());
    DenseMatrix K(n);
    for (int i = 0; i < n; ++i) {
        const double r_eq = std::sqrt(cloud.areas[i] / M_PI);
        if (alpha == 1.0) {
            K.at(i, i) = 16.0 / (3.0 * M_PI * r_eq);  // mean 1/r over the equal-area disk
        } else {
            throw ValidationError("cloud_energy_3d: only alpha = 1 diagonals are provided");
        }
        for (int j = i + 1; j < n; ++j) {
            const double v = std::pow(dist(cloud.points[i], cloud.points[j]), -alpha);
            K.at(i, j) = v;
            K.at(j, i) = v;
        }
    }
    const SimplexQpResult sol = minimize_quadratic_on_simplex(K, tol, max_iters);
    return {sol.energy, sol.gap, sol.iterations, n, sol.converged};
}

CloudEnergyReport cylinder_energy(double L, double eps, int n_points, double tol) {
    const Cloud3 cloud = cylinder_surface_cloud(L, eps, n_points);
    CloudEnergyReport rep = cloud_energy_3d(cloud, 1.0, tol, 400 * n_points);
    if (!rep.converged) throw NumericError("cylinder_energy: solver did not converge");
    return rep;
}

CloudEnergyReport strip_energy_2d(double eps, int n_points, double tol) {
    if (!(eps > 1e-4 && eps < 0.2)) throw ValidationError("strip cloud: eps out of (1e-4, 0.2)");
    if (n_points < 500) throw ValidationError("strip cloud: need at least 500 points");
    // Roughly square cells on [0,1] x [0,eps].
    int my = std::max(1, static_cast<int>(std::llround(std::sqrt(n_points * eps))));
    int mx = std::max(1, n_points / my);
    AreaCloud cloud;
    const double hx = 1.0 / mx, hy = eps / my;
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) {
            cloud.points.push_back({(i + 0.5) * hx, (j + 0.5) * hy});
            cloud.weights.push_back(hx * hy);
        }
    const SimplexQpResult sol =
        cloud_energy_2d(cloud, 1.0, tol, 400 * static_cast<int>(cloud.points.size()));
    if (!sol.converged) throw NumericError("strip_energy_2d: solver did not converge");
    return {sol.energy, sol.gap, sol.iterations, static_cast<int>(cloud.points.size()),
            sol.converged};
}

double cylinder_uniform_upper_bound(double eps) {
    const double e2 = eps * eps;
    return 4.0 / e2 *
           (std::sqrt(1.0 + 4.0 * e2) / 8.0 - 1.0 / 8.0 +
            e2 / 2.0 * std::log(1.0 / (2.0 * eps) + std::sqrt(1.0 + 1.0 / (4.0 * e2))));
}

double strip_uniform_energy(double eps, int n_points) {
    int my = std::max(1, static_cast<int>(std::llround(std::sqrt(n_points * eps))));
    int mx = std::max(1, n_points / my);
    const double hx = 1.0 / mx, hy = eps / my;
    const double w = hx * hy;  // equal cell masses
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(mx) * my);
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) pts.push_back({(i + 0.5) * hx, (j + 0.5) * hy});
    const int n = static_cast<int>(pts.size());
    const double mass = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r_eq = std::sqrt(w / M_PI);
        acc += mass * mass * 16.0 / (3.0 * M_PI * r_eq);
        for (int j = i + 1; j < n; ++j) acc += 2.0 * mass * mass / dist(pts[i], pts[j]);
    }
    return acc;
}

}  // namespace droplab
