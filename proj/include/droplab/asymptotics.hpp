#pragma once

#include <vector>

#include "droplab/convex_body.hpp"
#include "droplab/simplex_qp.hpp"
#include "droplab/vec2.hpp"

namespace droplab {

// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

// C_N = omega_{N-1}^{1/(N-1)} * N^{(N-2)/(N-1)}; C_2 = 2 exactly.
double limit_shape_constant(int N);

struct LimitConstants {
    int N = 0;
    double alpha = 0.0;
    double C_N = 0.0;
    double L = 0.0;
};

// Energy of the unit segment: closed form log 4 at alpha = 0, 1-D equilibrium
// solve on an endpoint-refined (Chebyshev) mesh for alpha in (0,1).
double segment_energy(double alpha, int m = 1024, double tol = 1e-9);

// Optimal limit length of the rescaled problem. alpha in [0,1]; N in {2,3}.
double limit_length(int N, double alpha);
double limit_length(int N, double alpha, double i_alpha_01);

// Value of the limit functional at segment length L:
//   alpha in (0,1): C_N L^{1/(N-1)} + I_alpha([0,1]) / L^alpha
//   alpha = 0:      C_N L^{1/(N-1)} + I_0([0,1]) - log L
//   alpha = 1:      C_N L^{1/(N-1)} + 4 / L
double gamma_limit_value(double L, int N, double alpha, double i_alpha_01);

// Golden-section argmin of gamma_limit_value over L.
double argmin_gamma_limit(int N, double alpha, double i_alpha_01);

// Rescaled functional value F = V^{-(N-2)/(N-1)} P(E) + I_alpha(E) for a 2-D
// body whose area must match V = Q^{-2N(N-1)/(1+(N-1)alpha)}.
double rescaled_functional(const ConvexBody2& body, double Q, int N, double alpha, int n_mesh,
                           double tol = 1e-7);
double rescaled_volume(double Q, int N, double alpha);

// Two cones glued base to base: the explicit recovery competitor for the
// limit problem at N = 2 (a rhombus of length L and area V).
ConvexBody2 cone_profile_body(double L, double V);

struct ConcaveProfileResult {
    double numeric = 0.0;
    double closed_form = 0.0;
    std::vector<double> x;
    std::vector<double> f;  // discrete minimizer
};

// min { integral f^gamma : integral f^beta = V, f concave >= 0 } on [0,L].
// Closed form (beta+1)^(gamma/beta)/(gamma+1) * L^(1-gamma/beta) * V^(gamma/beta);
// the numeric side is projected gradient over the discretized profile.
ConcaveProfileResult concave_profile_min(double gamma, double beta, double L, double V,
                                         int n_grid = 256);

struct Cloud3 {
    std::vector<Vec3> points;
    std::vector<double> areas;
};

// Surface point cloud of the cylinder [0,L] x B_eps (axis along x): lateral
// wall plus both end disks, golden-angle azimuthal placement.
Cloud3 cylinder_surface_cloud(double L, double eps, int n_points);

struct CloudEnergyReport {
    double energy = 0.0;
    double gap = 0.0;
    int iterations = 0;
    int n = 0;
    bool converged = false;
};

CloudEnergyReport cloud_energy_3d(const Cloud3& cloud, double alpha, double tol, int max_iters);

// I_1 estimate of the cylinder by simplex QP over the surface cloud.
CloudEnergyReport cylinder_energy(double L, double eps, int n_points, double tol = 1e-7);

// I_1 estimate of the planar strip [0,1] x [0,eps]; alpha = 1 exceeds boundary
// integrability in 2-D, so this works on a filled area grid.
CloudEnergyReport strip_energy_2d(double eps, int n_points, double tol = 1e-7);

// Closed-form value of the uniform-volume-measure energy of the unit-length
// cylinder: 4/eps^2 (sqrt(1+4 eps^2)/8 - 1/8 + eps^2/2 log(1/(2 eps) + sqrt(1 + 1/(4 eps^2)))).
double cylinder_uniform_upper_bound(double eps);

// Uniform-measure energy of the strip by direct quadrature on a refined grid.
double strip_uniform_energy(double eps, int n_points);

}  // namespace droplab
