// Independent reference values for the test suites. Everything here is
// computed from classical closed forms or direct quadrature, never through the
// library's solver path.
#pragma once

#include <cmath>

namespace oracles {

// Area of the regular k-gon with circumradius R.
inline double regular_ngon_area(int k, double R) {
    return 0.5 * k * R * R * std::sin(2.0 * M_PI / k);
}

// Perimeter of the regular k-gon with circumradius R.
inline double regular_ngon_perimeter(int k, double R) {
    return 2.0 * k * R * std::sin(M_PI / k);
}

// Area cut off a disk of radius R by the chord through the two boundary
// points at distance eps from a boundary point x0 (central half-angle psi).
inline double disk_cap_area(double R, double eps) {
    const double psi = 2.0 * std::asin(eps / (2.0 * R));  // arc from x0 to x1
    return R * R * (psi - std::sin(psi) * std::cos(psi));
}

// Isosceles base angle of the same configuration.
inline double disk_cap_gamma(double R, double eps) {
    return std::asin(eps / (2.0 * R));
}

// Energy of the unit segment for the Riesz kernel, from the equilibrium
// density (1-x^2)^((alpha-1)/2) on [-1,1] and the scaling I([0,1]) =
// 2^alpha I([-1,1]).
inline double segment_energy_closed_form(double alpha) {
    if (alpha == 0.0) return std::log(4.0);
    return std::pow(2.0, alpha) *
           std::exp(std::lgamma(0.5 * (1.0 - alpha)) + std::lgamma(1.0 + 0.5 * alpha)) /
           std::sqrt(M_PI);
}

// Exterior logarithmic potential of the uniform unit measure on a circle of
// radius R evaluated at distance r > R from the center.
inline double circle_exterior_potential(double r) { return -std::log(r); }

// Mean inverse distance of two uniform points in a disk of radius r.
inline double disk_mean_inverse_distance(double r) { return 16.0 / (3.0 * M_PI * r); }

// Lemma value: min of integral f^gamma over concave nonneg profiles with
// integral f^beta = V on [0,L].
inline double concave_profile_closed_form(double gamma, double beta, double L, double V) {
    return std::pow(beta + 1.0, gamma / beta) / (gamma + 1.0) * std::pow(L, 1.0 - gamma / beta) *
           std::pow(V, gamma / beta);
}

}  // namespace oracles
