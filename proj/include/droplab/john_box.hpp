#pragma once

#include <vector>

#include "droplab/convex_body.hpp"

namespace droplab {

// Rotation + translation frame in which [0,lambda1]x[0,lambda2] sits inside
// the body, the body sits inside a box with the same aspect scaled by
// c_factor, and both containments are certified by point tests.
struct JohnBox {
    double angle = 0.0;       // rotate the body by this angle into the frame
    Vec2 offset{0, 0};        // then translate by this
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double c_factor = 0.0;
    Vec2 outer_corner{0, 0};  // lower-left corner of the circumscribed box in the frame
    bool near_degenerate = false;
    bool certified = false;
};

JohnBox john_box(const ConvexBody2& body);

// Evaluates the box-estimate inequalities that tie the side lengths of a
// rectangular box to its isoperimetric ratio Phi = V^{-(N-2)/(N-1)} P and to
// the interaction energy. Reports the dimensionless ratios so sweeps can check
// they stay bounded.
struct PhiBoundsReport {
    int N = 0;
    double alpha = 0.0;
    double volume = 0.0;
    double surface = 0.0;
    double phi = 0.0;
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    // lambda_max <= C * phi^(N-1)
    double ratio_max = 0.0;
    // lambda_min ~ V^(1/(N-1)) / phi
    double ratio_min = 0.0;
    // alpha > 0: lambda_max >= c * I^(-1/alpha); off-max lambda_i <= C * I^(1/alpha) phi^(N-2) V^(1/(N-1))
    // alpha = 0: lambda_max >= c * exp(-I0);    off-max lambda_i <= C * exp(I0) phi^(N-2) V^(1/(N-1))
    double ratio_energy_max = 0.0;
    double ratio_energy_off = 0.0;
};

PhiBoundsReport phi_bounds_check(const std::vector<double>& lambdas, double alpha,
                                 double i_alpha_value);

}  // namespace droplab
