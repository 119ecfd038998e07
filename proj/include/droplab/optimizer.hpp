#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "droplab/convex_body.hpp"
#include "droplab/riesz.hpp"
#include "droplab/support_fan.hpp"

namespace droplab {

struct ProblemConfig {
    double Q = 0.0;
    double alpha = 0.0;
    double Lambda = -1.0;  // < 0: use default_lambda
    int M = 64;
    int n = 512;
    std::uint64_t seed = 1;
    double target_volume = 1.0;
    int max_iters = 5000;
    double step_tol = 1e-6;
    double solver_tol = 1e-7;
};

// 10 x (P(B) + Q^2 (|I0(B)| + |I0(B_R)|)) with B the unit-area disk and R a
// diameter bound for the run.
double default_lambda(double Q, double diameter_bound);

// Hard errors throw ValidationError; soft issues (Lambda below the
// equivalence threshold) come back as warnings.
std::vector<std::string> validate_config(const ProblemConfig& config);

struct EnergyBreakdown {
    double perimeter = 0.0;
    double interaction = 0.0;  // Q^2 * I_alpha
    double penalty = 0.0;      // Lambda * | |E| - target |
    double total = 0.0;
    double raw_energy = 0.0;   // I_alpha itself
    double area = 0.0;
    double diam = 0.0;
    int solver_iterations = 0;
    double duality_gap = 0.0;
    double robin_deviation = 0.0;
};

// Penalized functional on a standalone body (arclength-uniform mesh policy).
EnergyBreakdown g_lambda(const ConvexBody2& body, const ProblemConfig& config);
// Same functional through the optimizer's fan pipeline (per-fan-edge panel
// counts). Reference values for optimizer runs should use this one so the
// discretization matches. Panel counts come from the fan itself unless a
// frozen layout is supplied.
std::vector<int> fan_mesh_counts(const SupportFan& fan, int n);
EnergyBreakdown g_lambda_fan(const SupportFan& fan, const ProblemConfig& config,
                             const std::vector<int>* counts = nullptr);

struct ShapeGradient {
    std::vector<double> smooth;     // d(P + Q^2 I)/dh, envelope form
    std::vector<double> perimeter;  // exact, constant 2 tan(pi/M)
    std::vector<double> interaction;
    std::vector<double> area;       // exact, the edge lengths
};

ShapeGradient shape_gradient(const SupportFan& fan, const ProblemConfig& config);

struct TraceRow {
    int iter = 0;
    double P = 0.0, I = 0.0, penalty = 0.0, total = 0.0;
    double area = 0.0, diam = 0.0;
    double step = 0.0;  // Hausdorff distance to the previous iterate
};

struct OptimTrace {
    std::vector<TraceRow> rows;
    SupportFan final_fan;
    ConvexBody2 final_body;
    EnergyBreakdown final_energy;
    std::string status;  // converged | iteration_cap | line_search_collapse
};

OptimTrace minimize(const ProblemConfig& config, const SupportFan& initial);

// Seeded feasible random fan with the target volume.
SupportFan random_fan(const ProblemConfig& config, std::uint64_t seed);

std::string trace_to_csv(const OptimTrace& trace);

struct QSweepRow {
    double Q = 0.0;
    double P = 0.0, I = 0.0, penalty = 0.0, total = 0.0;
    double area = 0.0, diam = 0.0, width = 0.0, aspect = 0.0;
    double rescaled_len = 0.0;  // diam * Q^-2 (N = 2, alpha = 0 scaling)
    double disk_ref = 0.0;      // G_Lambda of the disk fan at this Q
    std::string status;
};

std::vector<QSweepRow> q_sweep(const ProblemConfig& config, const std::vector<double>& qs,
                               const SupportFan* initial = nullptr);

std::string q_sweep_to_csv(const std::vector<QSweepRow>& rows);

}  // namespace droplab
