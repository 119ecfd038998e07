// Command-line front end: equilibrium solves, penalized shape optimization,
// and parameter sweeps, with CSV/JSON artifacts.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "droplab/asymptotics.hpp"
#include "droplab/convex_body.hpp"
#include "droplab/errors.hpp"
#include "droplab/io_util.hpp"
#include "droplab/optimizer.hpp"
#include "droplab/riesz.hpp"
#include "droplab/support_fan.hpp"

namespace {

using droplab::ConvexBody2;
using droplab::fmt17;
using nlohmann::json;

constexpr const char* kSchemaVersion = "droplab/1";

constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct CliFailure {
    int code;
    std::string message;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw droplab::IoError("cannot open output file: " + path);
    out << text;
}

// Named shapes: disk, square, rectangle:LxW, ngon:k. The vertex budget is part
// of the resolved config so mesh-dependent numbers stay reproducible.
ConvexBody2 make_named_shape(const std::string& name, int vertex_budget) {
    if (name == "disk") return droplab::regular_ngon(vertex_budget, 1.0);
    if (name == "square") return droplab::rectangle_body(1.0, 1.0);
    if (name.rfind("ngon:", 0) == 0) {
        const int k = std::stoi(name.substr(5));
        return droplab::regular_ngon(k, 1.0);
    }
    if (name.rfind("rectangle:", 0) == 0) {
        const std::string dims = name.substr(10);
        const auto xpos = dims.find('x');
        if (xpos == std::string::npos)
            throw droplab::ValidationError("rectangle shape needs LxW, got " + name);
        return droplab::rectangle_body(std::stod(dims.substr(0, xpos)),
                                       std::stod(dims.substr(xpos + 1)));
    }
    throw droplab::ValidationError("unknown shape: " + name);
}

json base_output(const json& resolved_config) {
    json j;
    j["schema"] = kSchemaVersion;
    j["config"] = resolved_config;
    return j;
}

int cmd_equilibrium(const std::string& shape, const std::string& body_file, int vertex_budget,
                    double alpha, int n, double tol, const std::string& out_prefix) {
    ConvexBody2 body;
    if (!body_file.empty()) {
        const auto bodies = droplab::read_bodies_file(body_file);
        if (bodies.empty()) throw droplab::IoError("no polygon found in " + body_file);
        body = bodies.front();
    } else {
        body = make_named_shape(shape, vertex_budget);
    }

    droplab::EnergySolveReport rep;
    try {
        rep = droplab::equilibrium_measure(body, alpha, n, tol);
    } catch (const droplab::NumericError& e) {
        throw CliFailure{kExitNumeric, e.what()};
    }

    json cfg;
    cfg["command"] = "equilibrium";
    cfg["shape"] = body_file.empty() ? shape : ("file:" + body_file);
    cfg["vertex_budget"] = static_cast<int>(body.size());
    cfg["alpha"] = alpha;
    cfg["n"] = n;
    cfg["tol"] = tol;

    json out = base_output(cfg);
    out["alpha"] = rep.alpha;
    out["n"] = rep.n;
    out["energy"] = rep.energy;
    out["robin_deviation"] = rep.robin_deviation;
    out["duality_gap"] = rep.duality_gap;
    out["iterations"] = rep.iterations;

    if (out_prefix.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        write_text_file(out_prefix + ".energy.json", out.dump(2) + "\n");
        write_text_file(out_prefix + ".measure.csv", droplab::measure_to_csv(rep.measure));
    }
    return 0;
}

droplab::ProblemConfig config_from_json(const json& j, std::string* init, std::string* out_prefix) {
    droplab::ProblemConfig cfg;
    auto need_number = [&](const char* field, double lo, double hi, double dflt,
                           bool required = false) {
        if (!j.contains(field)) {
            if (required) throw droplab::ValidationError(std::string("config field missing: ") + field);
            return dflt;
        }
        if (!j.at(field).is_number())
            throw droplab::ValidationError(std::string("config field not a number: ") + field);
        const double v = j.at(field).get<double>();
        if (v < lo || v > hi)
            throw droplab::ValidationError(std::string("config field out of range: ") + field);
        return v;
    };
    cfg.Q = need_number("Q", 0.0, 1e6, 0.0, true);
    cfg.alpha = need_number("alpha", 0.0, 0.999, 0.0);
    cfg.Lambda = j.contains("Lambda") && !j.at("Lambda").is_null()
                     ? need_number("Lambda", 0.0, 1e12, -1.0)
                     : -1.0;
    cfg.M = static_cast<int>(need_number("M", 32, 4096, 64));
    cfg.n = static_cast<int>(need_number("n", 16, 8192, 512));
    cfg.seed = static_cast<std::uint64_t>(need_number("seed", 0, 9e15, 1));
    cfg.target_volume = need_number("target_volume", 1e-12, 1e12, 1.0);
    cfg.max_iters = static_cast<int>(need_number("max_iters", 1, 1e6, 5000));
    cfg.step_tol = need_number("step_tol", 0.0, 1.0, 1e-6);
    cfg.solver_tol = need_number("solver_tol", 1e-15, 1e-2, 1e-7);
    *init = j.value("init", std::string("disk"));
    *out_prefix = j.value("out_prefix", std::string("droplab_run"));
    return cfg;
}

json config_to_json(const droplab::ProblemConfig& cfg, const std::string& init,
                    const std::string& out_prefix) {
    json j;
    j["Q"] = cfg.Q;
    j["alpha"] = cfg.alpha;
    if (cfg.Lambda >= 0)
        j["Lambda"] = cfg.Lambda;
    else
        j["Lambda"] = nullptr;
    j["M"] = cfg.M;
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    j["target_volume"] = cfg.target_volume;
    j["max_iters"] = cfg.max_iters;
    j["step_tol"] = cfg.step_tol;
    j["solver_tol"] = cfg.solver_tol;
    j["init"] = init;
    j["out_prefix"] = out_prefix;
    return j;
}

int cmd_minimize(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw droplab::IoError("cannot open config file: " + config_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw droplab::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    std::string init, out_prefix;
    const droplab::ProblemConfig cfg = config_from_json(j, &init, &out_prefix);
    for (const auto& w : droplab::validate_config(cfg)) std::cerr << "warning: " << w << "\n";

    droplab::SupportFan fan0;
    if (init == "disk") {
        fan0 = droplab::disk_fan(cfg.M, cfg.target_volume);
    } else if (init == "random") {
        fan0 = droplab::random_fan(cfg, cfg.seed);
    } else if (init.rfind("fan:", 0) == 0) {
        std::ifstream ff(init.substr(4));
        if (!ff) throw droplab::IoError("cannot open fan file: " + init.substr(4));
        std::stringstream ss;
        ss << ff.rdbuf();
        fan0 = droplab::fan_from_json(ss.str());
    } else {
        throw droplab::ValidationError("config field init must be disk, random, or fan:<path>");
    }

    droplab::OptimTrace trace;
    int exit_code = 0;
    try {
        trace = droplab::minimize(cfg, fan0);
    } catch (const droplab::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    if (trace.status == "solver_failure") exit_code = kExitNumeric;

    write_text_file(out_prefix + ".trace.csv", droplab::trace_to_csv(trace));
    droplab::write_bodies_file(out_prefix + ".body.txt", {trace.final_body});

    // Ball-likeness: Hausdorff distance to the equal-area disk about the
    // centroid.
    const droplab::Vec2 c = droplab::centroid(trace.final_body);
    const double r = std::sqrt(trace.final_energy.area / M_PI);
    const ConvexBody2 disk = droplab::regular_ngon(std::max(256, cfg.M * 4), r, c);
    const double dist_disk = droplab::hausdorff_distance(trace.final_body, disk);
    const double width = droplab::min_width(trace.final_body);

    json out = base_output(config_to_json(cfg, init, out_prefix));
    out["status"] = trace.status;
    out["iterations"] = static_cast<int>(trace.rows.size()) - 1;
    out["P"] = trace.final_energy.perimeter;
    out["I"] = trace.final_energy.raw_energy;
    out["penalty"] = trace.final_energy.penalty;
    out["total"] = trace.final_energy.total;
    out["area"] = trace.final_energy.area;
    out["diam"] = trace.final_energy.diam;
    out["width"] = width;
    out["aspect_ratio"] = width > 0 ? trace.final_energy.diam / width : 0.0;
    out["hausdorff_to_disk"] = dist_disk;
    out["ball_like"] = dist_disk <= 1e-2;
    write_text_file(out_prefix + ".summary.json", out.dump(2) + "\n");
    return exit_code;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) vals.push_back(std::stod(item));
    }
    if (vals.empty()) throw droplab::ValidationError("empty parameter list");
    return vals;
}

int cmd_sweep_q(const std::string& qlist, const json& base_cfg, const std::string& out_path) {
    std::string init, out_prefix;
    const droplab::ProblemConfig cfg = config_from_json(base_cfg, &init, &out_prefix);
    const auto qs = parse_list(qlist);
    const auto rows = droplab::q_sweep(cfg, qs);
    const std::string csv = droplab::q_sweep_to_csv(rows);
    if (out_path.empty())
        std::cout << csv;
    else
        write_text_file(out_path, csv);
    return 0;
}

int cmd_sweep_eps(bool strip, double L, const std::string& eps_list, int n_points,
                  const std::string& out_path) {
    const auto eps = parse_list(eps_list);
    std::ostringstream csv;
    csv << "eps,n,energy,ratio,upper_bound\n";
    for (double e : eps) {
        droplab::CloudEnergyReport rep;
        try {
            rep = strip ? droplab::strip_energy_2d(e, n_points)
                        : droplab::cylinder_energy(L, e, n_points);
        } catch (const droplab::NumericError& err) {
            throw CliFailure{kExitNumeric, err.what()};
        }
        const double logeps = std::abs(std::log(e));
        // I_1 scales like 1/length, so the L != 1 bound comes from the unit
        // formula at eps/L.
        const double bound = strip ? droplab::strip_uniform_energy(e, n_points)
                                   : droplab::cylinder_uniform_upper_bound(e / L) / L;
        csv << fmt17(e) << "," << rep.n << "," << fmt17(rep.energy) << ","
            << fmt17(rep.energy / logeps) << "," << fmt17(bound) << "\n";
    }
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    return 0;
}

int cmd_sweep_constants(int N, const std::string& alpha_list, const std::string& out_path) {
    const auto alphas = parse_list(alpha_list);
    std::ostringstream csv;
    csv << "N,alpha,C_N,L\n";
    for (double a : alphas) {
        csv << N << "," << fmt17(a) << "," << fmt17(droplab::limit_shape_constant(N)) << ","
            << fmt17(droplab::limit_length(N, a)) << "\n";
    }
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    return 0;
}

int cmd_sweep_concave(double gamma, double beta, double L, double V, int n_grid,
                      const std::string& out_path) {
    const auto res = droplab::concave_profile_min(gamma, beta, L, V, n_grid);
    std::ostringstream csv;
    csv << "gamma,beta,L,V,numeric,closed_form,rel_gap\n";
    csv << fmt17(gamma) << "," << fmt17(beta) << "," << fmt17(L) << "," << fmt17(V) << ","
        << fmt17(res.numeric) << "," << fmt17(res.closed_form) << ","
        << fmt17(std::abs(res.numeric - res.closed_form) / res.closed_form) << "\n";
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"charged-drop equilibrium measures and convex shape optimization"};
    app.require_subcommand(1);

    // equilibrium
    auto* eq = app.add_subcommand("equilibrium", "solve the equilibrium measure of a body");
    std::string eq_shape = "disk", eq_body_file, eq_out;
    int eq_vertices = 256, eq_n = 512;
    double eq_alpha = 0.0, eq_tol = 1e-7;
    eq->add_option("--shape", eq_shape, "disk | square | rectangle:LxW | ngon:k");
    eq->add_option("--body", eq_body_file, "polygon file (one 'x y' vertex per line)");
    eq->add_option("--vertices", eq_vertices, "vertex budget for named curved shapes");
    eq->add_option("--alpha", eq_alpha, "kernel exponent in [0,1)");
    eq->add_option("--n", eq_n, "boundary mesh nodes");
    eq->add_option("--tol", eq_tol, "relative duality-gap tolerance");
    eq->add_option("--out", eq_out, "output prefix (.energy.json, .measure.csv)");

    // minimize
    auto* mini = app.add_subcommand("minimize", "minimize the penalized shape functional");
    std::string mini_config;
    mini->add_option("--config", mini_config, "JSON config file")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps with CSV output");
    sweep->require_subcommand(1);

    auto* sq = sweep->add_subcommand("q", "charge sweep of the shape optimizer");
    std::string sq_list = "2,5,10,20", sq_config, sq_out;
    sq->add_option("--Q", sq_list, "comma-separated ascending charges");
    sq->add_option("--config", sq_config, "JSON config file with base parameters");
    sq->add_option("--out", sq_out, "output CSV path");

    auto* sc = sweep->add_subcommand("eps-cylinder", "thin-cylinder capacity sweep");
    std::string sc_list = "0.1,0.03,0.01", sc_out;
    double sc_L = 1.0;
    int sc_n = 2000;
    sc->add_option("--L", sc_L, "cylinder length");
    sc->add_option("--eps", sc_list, "comma-separated radii");
    sc->add_option("--n", sc_n, "surface cloud points");
    sc->add_option("--out", sc_out, "output CSV path");

    auto* ss = sweep->add_subcommand("eps-strip", "thin-strip capacity sweep");
    std::string ss_list = "0.1,0.03,0.01", ss_out;
    int ss_n = 2000;
    ss->add_option("--eps", ss_list, "comma-separated thicknesses");
    ss->add_option("--n", ss_n, "area cloud points");
    ss->add_option("--out", ss_out, "output CSV path");

    auto* scon = sweep->add_subcommand("constants", "limit length constants");
    int scon_N = 2;
    std::string scon_alpha = "0", scon_out;
    scon->add_option("--N", scon_N, "dimension (2 or 3)");
    scon->add_option("--alpha", scon_alpha, "comma-separated exponents in [0,1]");
    scon->add_option("--out", scon_out, "output CSV path");

    auto* sconc = sweep->add_subcommand("concave", "concave-profile minimum vs closed form");
    double g_gamma = 1.0, g_beta = 2.0, g_L = 1.0, g_V = 1.0;
    int g_grid = 256;
    std::string sconc_out;
    sconc->add_option("--gamma", g_gamma, "profile exponent of the objective");
    sconc->add_option("--beta", g_beta, "profile exponent of the constraint");
    sconc->add_option("--L", g_L, "interval length");
    sconc->add_option("--V", g_V, "constraint value");
    sconc->add_option("--grid", g_grid, "grid size");
    sconc->add_option("--out", sconc_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eq->parsed()) return cmd_equilibrium(eq_shape, eq_body_file, eq_vertices, eq_alpha,
                                                 eq_n, eq_tol, eq_out);
        if (mini->parsed()) return cmd_minimize(mini_config);
        if (sq->parsed()) {
            json base;
            if (!sq_config.empty()) {
                std::ifstream in(sq_config);
                if (!in) throw droplab::IoError("cannot open config file: " + sq_config);
                base = json::parse(in);
            } else {
                base["Q"] = 0.0;
            }
            return cmd_sweep_q(sq_list, base, sq_out);
        }
        if (sc->parsed()) return cmd_sweep_eps(false, sc_L, sc_list, sc_n, sc_out);
        if (ss->parsed()) return cmd_sweep_eps(true, 1.0, ss_list, ss_n, ss_out);
        if (scon->parsed()) return cmd_sweep_constants(scon_N, scon_alpha, scon_out);
        if (sconc->parsed()) return cmd_sweep_concave(g_gamma, g_beta, g_L, g_V, g_grid, sconc_out);
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const droplab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const droplab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const droplab::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
