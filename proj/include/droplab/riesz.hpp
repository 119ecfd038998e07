#pragma once

#include <string>
#include <vector>

#include "droplab/convex_body.hpp"
#include "droplab/mesh.hpp"
#include "droplab/simplex_qp.hpp"

namespace droplab {

// Interaction kernel: log(1/r) at alpha = 0, r^-alpha otherwise.
double riesz_kernel(double alpha, double r);

// Mean self-interaction of a straight panel of length l (double average of
// the kernel over the panel squared). Only integrable for alpha < 1.
double panel_self_energy(double alpha, double l);

// K_ij = kernel(|node_i - node_j|) off the diagonal, exact panel self-energy
// on it. Rejects alpha >= 1: the energy is infinite on curves there.
DenseMatrix assemble_kernel_matrix(const BoundaryMesh& mesh, double alpha);

struct BoundaryMeasure {
    BoundaryMesh mesh;
    std::vector<double> w;  // nonnegative node masses, sum 1

    std::vector<double> density() const;  // w_i / weights_i
};

struct EnergySolveReport {
    double alpha = 0.0;
    int n = 0;
    double energy = 0.0;
    BoundaryMeasure measure;
    double robin_deviation = 0.0;
    int iterations = 0;
    double duality_gap = 0.0;
    bool converged = false;
};

inline constexpr double kDefaultSolveTol = 1e-7;

// Minimizes the discrete interaction energy over the probability simplex.
// Throws NumericError if the duality gap does not reach tol within the
// iteration cap (200 n).
EnergySolveReport equilibrium_measure(const ConvexBody2& body, double alpha, int n,
                                      double tol = kDefaultSolveTol,
                                      const std::vector<double>* warm_start = nullptr);

// Discrete potential of the measure at a point; uses the exact panel
// self-term when the point coincides with a node.
double potential(const BoundaryMeasure& measure, double alpha, Vec2 point);

struct ScalingCheck {
    double energy_base = 0.0;
    double energy_scaled = 0.0;
    double identity_residual = 0.0;  // vs I(lam E) = I(E) - log(lam) or lam^-alpha I(E)
};

ScalingCheck scaling_check(const ConvexBody2& body, double alpha, double lambda, int n,
                           double tol = kDefaultSolveTol);

struct DensityLpReport {
    std::vector<double> p;
    std::vector<double> norm;       // ||f||_p
    double linf = 0.0;
    double corner_exponent = 0.0;   // log-log fit of f vs distance to nearest vertex
    int fit_points = 0;
};

DensityLpReport density_lp_report(const BoundaryMeasure& measure,
                                  const std::vector<double>& ps,
                                  double fit_window_fraction = 0.08);

// Interior + boundary point cloud of the body (test utility for checking that
// measures supported on the closure put no mass inside for alpha < 1).
struct AreaCloud {
    std::vector<Vec2> points;
    std::vector<double> weights;  // cell areas
};
AreaCloud build_area_cloud(const ConvexBody2& body, int per_axis);

// Energy solve on a planar point cloud with disk-equivalent patch diagonal;
// valid for alpha in (0,2).
SimplexQpResult cloud_energy_2d(const AreaCloud& cloud, double alpha, double tol, int max_iters);

// CSV "s,x,y,weight,density" rows for the measure.
std::string measure_to_csv(const BoundaryMeasure& measure);
// JSON {alpha, n, energy, robin_deviation, duality_gap, iterations}.
std::string report_to_json(const EnergySolveReport& rep);

}  // namespace droplab
