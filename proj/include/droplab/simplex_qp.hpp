#pragma once

#include <vector>

namespace droplab {

// Dense symmetric matrix, row-major.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    explicit DenseMatrix(int size = 0) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    void matvec(const std::vector<double>& x, std::vector<double>& y) const;
};

// Euclidean projection onto the probability simplex.
void project_to_simplex(std::vector<double>& v);

struct SimplexQpResult {
    std::vector<double> w;
    double energy = 0.0;      // w' K w
    double gap = 0.0;         // max(0, energy - min_i (Kw)_i)
    int iterations = 0;
    bool converged = false;
    std::vector<double> kw;   // K w at the solution
};

// Minimize w' K w over the probability simplex by accelerated projected
// gradient with fixed step 1/L (L from power iteration on the zero-mean
// subspace) and gradient-based restart. Deterministic; warm start optional.
// Success means gap <= tol * (1 + |energy|).
SimplexQpResult minimize_quadratic_on_simplex(const DenseMatrix& K, double tol, int max_iters,
                                              const std::vector<double>* warm_start = nullptr);

}  // namespace droplab
