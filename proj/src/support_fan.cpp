#include "droplab/support_fan.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "droplab/errors.hpp"

namespace droplab {

namespace {

void check_fan(const SupportFan& fan) {
    if (fan.M < 3) throw ValidationError("support fan needs M >= 3");
    if (static_cast<int>(fan.h.size()) != fan.M)
        throw ValidationError("support fan: h size does not match M");
}

double fan_scale(const SupportFan& fan) {
    double s = 0.0;
    for (double v : fan.h) s = std::max(s, std::abs(v));
    return s > 0 ? s : 1.0;
}

}  // namespace

std::vector<double> edge_lengths(const SupportFan& fan) {
    check_fan(fan);
    const int M = fan.M;
    const double delta = 2.0 * M_PI / M;
    const double cd = std::cos(delta), sd = std::sin(delta);
    std::vector<double> l(M);
    for (int i = 0; i < M; ++i) {
        const double hm = fan.h[(i + M - 1) % M];
        const double hp = fan.h[(i + 1) % M];
        l[i] = (hm + hp - 2.0 * fan.h[i] * cd) / sd;
    }
    return l;
}

int fan_violation_index(const SupportFan& fan, double tol) {
    const auto l = edge_lengths(fan);
    const double scaled = tol * fan_scale(fan);
    int worst = -1;
    double worst_val = -scaled;
    for (int i = 0; i < fan.M; ++i) {
        if (l[i] < worst_val) {
            worst_val = l[i];
            worst = i;
        }
    }
    return worst;
}

std::vector<Vec2> fan_vertices(const SupportFan& fan) {
    check_fan(fan);
    const int M = fan.M;
    const double delta = 2.0 * M_PI / M;
    const double sd = std::sin(delta);
    std::vector<Vec2> v(M);
    for (int i = 0; i < M; ++i) {
        const int j = (i + 1) % M;
        const double ti = delta * i, tj = delta * j;
        // Intersection of x*n_i = h_i with x*n_j = h_j.
        v[i] = {(fan.h[i] * std::sin(tj) - fan.h[j] * std::sin(ti)) / sd,
                (fan.h[j] * std::cos(ti) - fan.h[i] * std::cos(tj)) / sd};
    }
    return v;
}

ConvexBody2 support_to_polygon(const SupportFan& fan) {
    const int bad = fan_violation_index(fan, 1e-12);
    if (bad >= 0) {
        throw ValidationError("support fan violates convexity at edge " + std::to_string(bad));
    }
    return make_convex_body(fan_vertices(fan));
}

SupportFan polygon_to_support(const ConvexBody2& body, int M) {
    if (M < 3) throw ValidationError("polygon_to_support needs M >= 3");
    SupportFan fan{M, std::vector<double>(M)};
    const double delta = 2.0 * M_PI / M;
    for (int i = 0; i < M; ++i) {
        const Vec2 n{std::cos(delta * i), std::sin(delta * i)};
        double best = -1e300;
        for (const auto& p : body.vertices) best = std::max(best, dot(n, p));
        fan.h[i] = best;
    }
    return fan;
}

SupportFan project_to_feasible(const SupportFan& fan, double tol, int max_sweeps) {
    check_fan(fan);
    const int M = fan.M;
    const double delta = 2.0 * M_PI / M;
    const double cd = std::cos(delta), sd = std::sin(delta);
    // Constraint rows a_i: (Lh)_i = (h_{i-1} + h_{i+1} - 2 cd h_i)/sd >= 0.
    const double diag = (2.0 + 4.0 * cd * cd) / (sd * sd);  // ||a_i||^2
    std::vector<double> h = fan.h;
    std::vector<double> lambda(M, 0.0);
    const double scaled = tol * fan_scale(fan);

    auto row_value = [&](int i) {
        return (h[(i + M - 1) % M] + h[(i + 1) % M] - 2.0 * cd * h[i]) / sd;
    };
    auto add_row = [&](int i, double step) {
        h[(i + M - 1) % M] += step / sd;
        h[(i + 1) % M] += step / sd;
        h[i] -= step * 2.0 * cd / sd;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < M; ++i) {
            const double r = row_value(i);
            double step = -r / diag;
            if (lambda[i] + step < 0) step = -lambda[i];
            if (step != 0.0) {
                lambda[i] += step;
                add_row(i, step);
            }
        }
        for (int i = 0; i < M; ++i) worst = std::min(worst, row_value(i));
        if (worst >= -scaled) break;
    }
    // Clamp residual negatives from the last sweep.
    return SupportFan{M, std::move(h)};
}

SupportFan fan_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("M") || !j.contains("h")) throw ValidationError("fan JSON needs fields M and h");
    SupportFan fan;
    fan.M = j.at("M").get<int>();
    fan.h = j.at("h").get<std::vector<double>>();
    check_fan(fan);
    return fan;
}

std::string fan_to_json(const SupportFan& fan) {
    nlohmann::json j;
    j["M"] = fan.M;
    j["h"] = fan.h;
    return j.dump();
}

SupportFan disk_fan(int M, double target_area) {
    if (M < 3) throw ValidationError("disk_fan needs M >= 3");
    // Regular M-gon with apothem a has area M a^2 tan(pi/M).
    const double a = std::sqrt(target_area / (M * std::tan(M_PI / M)));
    return SupportFan{M, std::vector<double>(M, a)};
}

}  // namespace droplab
