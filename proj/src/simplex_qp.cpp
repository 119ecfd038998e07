#include "droplab/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace droplab {

void DenseMatrix::matvec(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    const double* row = a.data();
    for (int i = 0; i < n; ++i, row += n) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void project_to_simplex(std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double csum = 0.0, theta = 0.0;
    int rho = 0;
    for (int i = 0; i < n; ++i) {
        csum += u[i];
        const double t = (csum - 1.0) / (i + 1);
        if (u[i] - t > 0) {
            rho = i + 1;
            theta = t;
        }
    }
    (void)rho;
    double total = 0.0;
    for (auto& x : v) {
        x = std::max(0.0, x - theta);
        total += x;
    }
    // Make the sum exactly one.
    if (total > 0) {
        const double inv = 1.0 / total;
        for (auto& x : v) x *= inv;
    } else {
        std::fill(v.begin(), v.end(), 1.0 / n);
    }
}

namespace {

// Largest eigenvalue of K restricted to the zero-mean subspace.
double lipschitz_estimate(const DenseMatrix& K) {
    const int n = K.n;
    std::vector<double> v(n), kv(n);
    for (int i = 0; i < n; ++i) v[i] = (i % 2 == 0 ? 1.0 : -1.0) + 1.0 / (i + 1.0);
    auto zero_mean = [&](std::vector<double>& x) {
        const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
        for (auto& t : x) t -= m;
    };
    zero_mean(v);
    double lam = 1.0;
    for (int it = 0; it < 60; ++it) {
        K.matvec(v, kv);
        zero_mean(kv);
        double nk = 0.0;
        for (double t : kv) nk += t * t;
        nk = std::sqrt(nk);
        if (nk == 0) break;
        lam = nk;
        for (int i = 0; i < n; ++i) v[i] = kv[i] / nk;
    }
    return lam;
}

}  // namespace

SimplexQpResult minimize_quadratic_on_simplex(const DenseMatrix& K, double tol, int max_iters,
                                              const std::vector<double>* warm_start) {
    const int n = K.n;
    SimplexQpResult res;
    std::vector<double> w(n, 1.0 / n);
    if (warm_start && static_cast<int>(warm_start->size()) == n) {
        w = *warm_start;
        project_to_simplex(w);
    }

    const double L = 2.0 * lipschitz_estimate(K) * 1.05 + 1e-300;
    const double step = 1.0 / L;

    std::vector<double> y = w, w_prev = w, g(n), kw(n);
    double t_acc = 1.0;

    auto compute_gap = [&](const std::vector<double>& wi, double& energy, double& gap) {
        K.matvec(wi, kw);
        energy = 0.0;
        double mn = kw[0];
        for (int i = 0; i < n; ++i) {
            energy += wi[i] * kw[i];
            mn = std::min(mn, kw[i]);
        }
        gap = std::max(0.0, energy - mn);
    };

    int it = 0;
    for (; it < max_iters; ++it) {
        K.matvec(y, g);  // gradient is 2 K y; fold the 2 into the step
        std::vector<double> w_next = y;
        for (int i = 0; i < n; ++i) w_next[i] -= 2.0 * step * g[i];
        project_to_simplex(w_next);

        // Gradient-scheme restart.
        double restart_dot = 0.0;
        for (int i = 0; i < n; ++i) restart_dot += (y[i] - w_next[i]) * (w_next[i] - w[i]);
        const double t_next = restart_dot > 0 ? 1.0 : 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
        const double beta = restart_dot > 0 ? 0.0 : (t_acc - 1.0) / t_next;

        w_prev = w;
        w = w_next;
        for (int i = 0; i < n; ++i) y[i] = w[i] + beta * (w[i] - w_prev[i]);
        t_acc = t_next;

        if (it % 25 == 24 || it == max_iters - 1) {
            double energy, gap;
            compute_gap(w, energy, gap);
            if (gap <= tol * (1.0 + std::abs(energy))) {
                res.converged = true;
                res.energy = energy;
                res.gap = gap;
                break;
            }
        }
    }
    if (!res.converged) {
        double energy, gap;
        compute_gap(w, energy, gap);
        res.energy = energy;
        res.gap = gap;
        res.converged = gap <= tol * (1.0 + std::abs(energy));
    }
    res.iterations = it + 1;
    res.w = std::move(w);
    res.kw = kw;
    return res;
}

}  // namespace droplab
