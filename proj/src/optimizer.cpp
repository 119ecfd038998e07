#include "droplab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "droplab/errors.hpp"
#include "droplab/io_util.hpp"
#include "droplab/mesh.hpp"
#include "droplab/simplex_qp.hpp"

namespace droplab {

namespace {

double poly_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

double poly_perimeter(const std::vector<Vec2>& v) {
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) p += dist(v[i], v[(i + 1) % v.size()]);
    return p;
}

double poly_diameter(const std::vector<Vec2>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, dist(v[i], v[j]));
    return d;
}

// Panel counts over the M fan edges (edge i of fan_vertices runs from v[i] to
// v[i+1]); at least one panel per edge so edges that grow later stay meshed.
std::vector<int> fan_counts(const std::vector<Vec2>& verts, int n) {
    const int m = static_cast<int>(verts.size());
    std::vector<double> len(m);
    double per = 0.0;
    for (int i = 0; i < m; ++i) {
        len[i] = dist(verts[i], verts[(i + 1) % m]);
        per += len[i];
    }
    std::vector<int> counts(m, 1);
    int total = m;
    const int target = std::max(n, m);
    while (total < target) {
        int k = 0;
        double worst = -1;
        for (int i = 0; i < m; ++i) {
            const double plen = len[i] / counts[i];
            if (plen > worst) {
                worst = plen;
                k = i;
            }
        }
        ++counts[k];
        ++total;
    }
    return counts;
}

struct FanEval {
    double P = 0.0, A = 0.0, I = 0.0, G = 0.0, penalty = 0.0;
    SimplexQpResult sol;
    BoundaryMesh mesh;
    std::vector<Vec2> verts;
};

struct Pipeline {
    const ProblemConfig& cfg;
    double lambda;
    std::vector<int> counts;
    std::vector<double> warm;

    Pipeline(const ProblemConfig& c, const SupportFan& fan0, double lam)
        : cfg(c), lambda(lam), counts(fan_counts(fan_vertices(fan0), c.n)) {}

    Pipeline(const ProblemConfig& c, std::vector<int> fixed_counts, double lam)
        : cfg(c), lambda(lam), counts(std::move(fixed_counts)) {}

    FanEval eval(const SupportFan& fan) {
        FanEval e;
        e.verts = fan_vertices(fan);
        e.mesh = build_mesh_with_counts(e.verts, counts);
        const DenseMatrix K = assemble_kernel_matrix(e.mesh, cfg.alpha);
        e.sol = minimize_quadratic_on_simplex(K, cfg.solver_tol, 200 * K.n,
                                              warm.empty() ? nullptr : &warm);
        if (!e.sol.converged)
            throw NumericError("equilibrium solve did not converge inside minimize (gap " +
                               fmt17(e.sol.gap) + ")");
        warm = e.sol.w;
        e.I = e.sol.energy;
        e.P = poly_perimeter(e.verts);
        e.A = poly_area(e.verts);
        e.penalty = lambda * std::abs(e.A - cfg.target_volume);
        e.G = e.P + cfg.Q * cfg.Q * e.I + e.penalty;
        return e;
    }
};

// Envelope gradient of the interaction energy: optimal masses held fixed,
// node positions and panel lengths differentiated through the fan vertices.
std::vector<double> interaction_gradient(const SupportFan& fan, const FanEval& e, double alpha) {
    const int M = fan.M;
    const double delta = 2.0 * M_PI / M;
    const double sd = std::sin(delta);
    const auto& mesh = e.mesh;
    const int n = mesh.size();
    const auto& w = e.sol.w;

    // dE/dx_p over all node pairs (one dense pass).
    std::vector<Vec2> dEdx(n, Vec2{0, 0});
    for (int p = 0; p < n; ++p) {
        const Vec2 xp = mesh.nodes[p];
        Vec2 acc{0, 0};
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            const Vec2 d = xp - mesh.nodes[q];
            const double r2 = norm2(d);
            if (r2 <= 0) continue;
            double coef;
            if (alpha == 0.0) {
                coef = -1.0 / r2;
            } else {
                coef = -alpha * std::pow(r2, -0.5 * alpha - 1.0);
            }
            acc = acc + (2.0 * w[p] * w[q] * coef) * d;
        }
        dEdx[p] = acc;
    }

    double per = 0.0;
    for (double t : mesh.weights) per += t;
    const double lmin = 1e-14 * per;

    // Vertex sensitivities: v[i] depends on h_i and h_{i+1}.
    std::vector<Vec2> dv_own(M), dv_next(M);
    for (int i = 0; i < M; ++i) {
        const double ti = delta * i, tj = delta * ((i + 1) % M);
        dv_own[i] = {std::sin(tj) / sd, -std::cos(tj) / sd};
        dv_next[i] = {-std::sin(ti) / sd, std::cos(ti) / sd};
    }

    std::vector<double> grad(M, 0.0);
    for (int p = 0; p < n; ++p) {
        const int i = mesh.edge_of[p];  // edge from verts[i] to verts[i+1]
        const int ip = (i + 1) % M;
        const Vec2 a = e.verts[i], b = e.verts[ip];
        const Vec2 ab = b - a;
        const double elen = norm(ab);
        const double fm = elen > 0 ? dot(mesh.nodes[p] - a, ab) / (elen * elen) : 0.5;

        const double l = std::max(mesh.weights[p], lmin);
        double dself_dl;
        if (alpha == 0.0) {
            dself_dl = -1.0 / l;
        } else {
            dself_dl = -2.0 * alpha * std::pow(l, -alpha - 1.0) / ((1.0 - alpha) * (2.0 - alpha));
        }
        const double wl = w[p] * w[p] * dself_dl;
        const Vec2 u = elen > 0 ? (1.0 / elen) * ab : Vec2{0, 0};
        const double inv_c = mesh.weights[p] / (elen > 0 ? elen : 1.0);  // 1/count for this edge

        // x_p = (1-fm) v[i] + fm v[i+1]; l_p = |v[i+1] - v[i]| / count.
        struct Term {
            int idx;
            Vec2 dva, dvb;  // d v[i] and d v[i+1] wrt h_idx
        };
        const Term terms[3] = {
            {i, dv_own[i], Vec2{0, 0}},
            {ip, dv_next[i], dv_own[ip]},
            {(i + 2) % M, Vec2{0, 0}, dv_next[ip]},
        };
        for (const auto& t : terms) {
            const Vec2 dx = (1.0 - fm) * t.dva + fm * t.dvb;
            const double dl = inv_c * dot(u, t.dvb - t.dva);
            grad[t.idx] += dot(dEdx[p], dx) + wl * dl;
        }
    }
    return grad;
}

SupportFan rescale_to_volume(SupportFan fan, double target) {
    const double a = poly_area(fan_vertices(fan));
    if (a > 0) {
        const double s = std::sqrt(target / a);
        for (auto& x : fan.h) x *= s;
    }
    return fan;
}

}  // namespace

double default_lambda(double Q, double diameter_bound) {
    const double pb = 2.0 * std::sqrt(M_PI);         // perimeter of the unit-area disk
    const double i0b = 0.5 * std::log(M_PI);         // I_0 of the unit-area disk
    const double r = std::max(diameter_bound, 2.0 / std::sqrt(M_PI));
    return 10.0 * (pb + Q * Q * (std::abs(i0b) + std::abs(std::log(r))));
}

std::vector<std::string> validate_config(const ProblemConfig& config) {
    if (config.Q < 0) throw ValidationError("config: Q must be nonnegative");
    if (config.alpha < 0 || config.alpha >= 1)
        throw ValidationError("config: alpha must lie in [0,1) for 2-D optimization");
    if (config.M < 32) throw ValidationError("config: M must be at least 32");
    if (config.n < kMinMeshNodes) throw ValidationError("config: n must be at least 16");
    if (!(config.target_volume > 0)) throw ValidationError("config: target_volume must be positive");
    std::vector<std::string> warnings;
    if (config.Lambda >= 0) {
        const double bar = default_lambda(config.Q, 2.0 / std::sqrt(M_PI)) / 10.0;
        if (config.Lambda < bar)
            warnings.push_back("Lambda " + fmt17(config.Lambda) +
                               " is below the volume-penalty threshold estimate " + fmt17(bar) +
                               "; constrained and penalized minimizers may differ");
    }
    return warnings;
}

EnergyBreakdown g_lambda(const ConvexBody2& body, const ProblemConfig& config) {
    const double lambda =
        config.Lambda >= 0 ? config.Lambda : default_lambda(config.Q, diameter(body));
    EnergySolveReport rep = equilibrium_measure(body, config.alpha, config.n, config.solver_tol);
    EnergyBreakdown out;
    out.perimeter = perimeter(body);
    out.raw_energy = rep.energy;
    out.interaction = config.Q * config.Q * rep.energy;
    out.area = area(body);
    out.diam = diameter(body);
    out.penalty = lambda * std::abs(out.area - config.target_volume);
    out.total = out.perimeter + out.interaction + out.penalty;
    out.solver_iterations = rep.iterations;
    out.duality_gap = rep.duality_gap;
    out.robin_deviation = rep.robin_deviation;
    return out;
}

std::vector<int> fan_mesh_counts(const SupportFan& fan, int n) {
    return fan_counts(fan_vertices(fan), n);
}

EnergyBreakdown g_lambda_fan(const SupportFan& fan, const ProblemConfig& config,
                             const std::vector<int>* counts) {
    const double lambda = config.Lambda >= 0
                              ? config.Lambda
                              : default_lambda(config.Q, poly_diameter(fan_vertices(fan)));
    Pipeline pipe = counts ? Pipeline(config, *counts, lambda) : Pipeline(config, fan, lambda);
    FanEval e = pipe.eval(fan);
    EnergyBreakdown out;
    out.perimeter = e.P;
    out.raw_energy = e.I;
    out.interaction = config.Q * config.Q * e.I;
    out.area = e.A;
    out.diam = poly_diameter(e.verts);
    out.penalty = e.penalty;
    out.total = e.G;
    out.solver_iterations = e.sol.iterations;
    out.duality_gap = e.sol.gap;
    return out;
}

ShapeGradient shape_gradient(const SupportFan& fan, const ProblemConfig& config) {
    if (fan_violation_index(fan) >= 0) throw ValidationError("shape_gradient: infeasible fan");
    const double lambda = config.Lambda >= 0 ? config.Lambda : default_lambda(config.Q, 1.0);
    Pipeline pipe(config, fan, lambda);
    const FanEval e = pipe.eval(fan);

    ShapeGradient g;
    const double per_coeff = 2.0 * std::tan(M_PI / fan.M);
    g.perimeter.assign(fan.M, per_coeff);
    g.area = edge_lengths(fan);
    g.interaction = interaction_gradient(fan, e, config.alpha);
    g.smooth.resize(fan.M);
    for (int i = 0; i < fan.M; ++i)
        g.smooth[i] = g.perimeter[i] + config.Q * config.Q * g.interaction[i];
    return g;
}

SupportFan random_fan(const ProblemConfig& config, std::uint64_t seed) {
    Rng rng(seed);
    SupportFan fan = disk_fan(config.M, config.target_volume);
    for (auto& x : fan.h) x *= 1.0 + 0.35 * (rng.uniform() - 0.5);
    fan = project_to_feasible(fan);
    return rescale_to_volume(fan, config.target_volume);
}

OptimTrace minimize(const ProblemConfig& config, const SupportFan& initial) {
    validate_config(config);
    if (initial.M != config.M) throw ValidationError("minimize: fan size does not match config M");

    SupportFan h = rescale_to_volume(project_to_feasible(initial), config.target_volume);
    const double lambda = config.Lambda >= 0
                              ? config.Lambda
                              : default_lambda(config.Q, poly_diameter(fan_vertices(h)));
    Pipeline pipe(config, h, lambda);

    OptimTrace trace;
    FanEval cur = pipe.eval(h);
    double step = 0.02 * std::sqrt(config.target_volume);
    int armijo_failures = 0;
    bool used_fd = false;
    trace.status = "iteration_cap";

    auto record = [&](int iter, const FanEval& e, double move) {
        trace.rows.push_back(
            {iter, e.P, e.I, e.penalty, e.G, e.A, poly_diameter(e.verts), move});
    };
    record(0, cur, 0.0);

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        std::vector<double> grad;
        if (!used_fd) {
            const FanEval& e = cur;
            const auto gi = interaction_gradient(h, e, config.alpha);
            const double per_coeff = 2.0 * std::tan(M_PI / config.M);
            grad.resize(config.M);
            for (int i = 0; i < config.M; ++i) grad[i] = per_coeff + config.Q * config.Q * gi[i];
        } else {
            // Central differences with full re-solves.
            grad.resize(config.M);
            const double fd = 1e-5 * std::sqrt(config.target_volume);
            for (int i = 0; i < config.M; ++i) {
                SupportFan hp = h, hm = h;
                hp.h[i] += fd;
                hm.h[i] -= fd;
                const FanEval ep = pipe.eval(hp);
                const FanEval em = pipe.eval(hm);
                grad[i] = ((ep.P + config.Q * config.Q * ep.I) -
                           (em.P + config.Q * config.Q * em.I)) /
                          (2 * fd);
            }
            used_fd = false;
        }

        // Volume-tangential direction: iterates stay on |E| = target, so the
        // exact penalty contributes a zero subgradient there.
        std::vector<double> a = edge_lengths(h);
        if (std::abs(cur.A - config.target_volume) > 1e-9 * config.target_volume) {
            const double sg = cur.A > config.target_volume ? 1.0 : -1.0;
            for (int i = 0; i < config.M; ++i) grad[i] += lambda * sg * a[i];
        } else {
            double ga = 0.0, aa = 0.0;
            for (int i = 0; i < config.M; ++i) {
                ga += grad[i] * a[i];
                aa += a[i] * a[i];
            }
            if (aa > 0) {
                const double c = ga / aa;
                for (int i = 0; i < config.M; ++i) grad[i] -= c * a[i];
            }
        }

        double gnorm = 0.0;
        for (double gi : grad) gnorm += gi * gi;
        gnorm = std::sqrt(gnorm);
        if (gnorm <= config.step_tol * (1.0 + std::abs(cur.G))) {
            trace.status = "converged";
            break;
        }

        bool accepted = false;
        double t = step;
        SupportFan h_best;
        FanEval e_best;
        for (int bt = 0; bt < 45; ++bt) {
            SupportFan cand = h;
            for (int i = 0; i < config.M; ++i) cand.h[i] -= t * grad[i];
            cand = rescale_to_volume(project_to_feasible(cand), config.target_volume);
            double move2 = 0.0;
            for (int i = 0; i < config.M; ++i) {
                const double d = cand.h[i] - h.h[i];
                move2 += d * d;
            }
            if (move2 <= 1e-32) break;
            FanEval e_cand = pipe.eval(cand);
            if (e_cand.G <= cur.G - 1e-4 * move2 / t) {
                accepted = true;
                h_best = std::move(cand);
                e_best = std::move(e_cand);
                break;
            }
            t *= 0.4;
        }

        if (!accepted) {
            ++armijo_failures;
            if (armijo_failures == 2 && !used_fd) {
                used_fd = true;  // next iteration retries with the FD gradient
                continue;
            }
            trace.status = "line_search_collapse";
            break;
        }
        armijo_failures = 0;
        step = (t == step) ? step * 1.4 : t;

        const ConvexBody2 prev_body = make_convex_body(fan_vertices(h));
        const ConvexBody2 next_body = make_convex_body(e_best.verts);
        const double move = hausdorff_distance(prev_body, next_body);
        h = std::move(h_best);
        cur = std::move(e_best);
        record(iter, cur, move);

        if (move <= config.step_tol * (1.0 + std::abs(cur.G)) * t) {
            trace.status = "converged";
            break;
        }
    }

    trace.final_fan = h;
    trace.final_body = make_convex_body(fan_vertices(h));
    EnergyBreakdown fin;
    fin.perimeter = cur.P;
    fin.raw_energy = cur.I;
    fin.interaction = config.Q * config.Q * cur.I;
    fin.penalty = cur.penalty;
    fin.total = cur.G;
    fin.area = cur.A;
    fin.diam = poly_diameter(cur.verts);
    fin.solver_iterations = cur.sol.iterations;
    fin.duality_gap = cur.sol.gap;
    trace.final_energy = fin;
    return trace;
}

std::string trace_to_csv(const OptimTrace& trace) {
    std::ostringstream out;
    out << "iter,P,I,penalty,total,area,diam,step\n";
    for (const auto& r : trace.rows) {
        out << r.iter << "," << fmt17(r.P) << "," << fmt17(r.I) << "," << fmt17(r.penalty) << ","
            << fmt17(r.total) << "," << fmt17(r.area) << "," << fmt17(r.diam) << ","
            << fmt17(r.step) << "\n";
    }
    return out.str();
}

std::vector<QSweepRow> q_sweep(const ProblemConfig& config, const std::vector<double>& qs,
                               const SupportFan* initial) {
    for (std::size_t i = 1; i < qs.size(); ++i)
        if (!(qs[i] > qs[i - 1])) throw ValidationError("q_sweep: Q list must be ascending");

    std::vector<QSweepRow> rows;
    SupportFan fan = initial ? *initial : disk_fan(config.M, config.target_volume);
    for (double q : qs) {
        ProblemConfig cfg = config;
        cfg.Q = q;
        OptimTrace tr = minimize(cfg, fan);
        fan = tr.final_fan;  // warm start the next charge

        QSweepRow row;
        row.Q = q;
        row.P = tr.final_energy.perimeter;
        row.I = tr.final_energy.raw_energy;
        row.penalty = tr.final_energy.penalty;
        row.total = tr.final_energy.total;
        row.area = tr.final_energy.area;
        row.diam = tr.final_energy.diam;
        row.width = min_width(tr.final_body);
        row.aspect = row.width > 0 ? row.diam / row.width : 0.0;
        row.rescaled_len = row.diam / (q * q);
        ProblemConfig ref_cfg = cfg;
        row.disk_ref = g_lambda_fan(disk_fan(config.M, config.target_volume), ref_cfg).total;
        row.status = tr.status;
        rows.push_back(row);
    }
    return rows;
}

std::string q_sweep_to_csv(const std::vector<QSweepRow>& rows) {
    std::ostringstream out;
    out << "Q,P,I,penalty,total,area,diam,width,aspect,rescaled_len,disk_ref,status\n";
    for (const auto& r : rows) {
        out << fmt17(r.Q) << "," << fmt17(r.P) << "," << fmt17(r.I) << "," << fmt17(r.penalty)
            << "," << fmt17(r.total) << "," << fmt17(r.area) << "," << fmt17(r.diam) << ","
            << fmt17(r.width) << "," << fmt17(r.aspect) << "," << fmt17(r.rescaled_len) << ","
            << fmt17(r.disk_ref) << "," << r.status << "\n";
    }
    return out.str();
}

}  // namespace droplab
