// Command-line driver: convergence experiments, beta(alpha) curves,
// parameter optimization, and single-simplex unisolvence reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "histop/histopolation.hpp"
#include "histop/optimizer.hpp"

using namespace histop;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v, const char* spec = "%.12e") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

WeightSpec parse_weight(const std::string& text, int dim) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    Vec alpha;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string part;
        while (std::getline(ss, part, ',')) alpha.push_back(std::stod(part));
    }
    if (kind == "constant") {
        if (!alpha.empty()) throw ConfigError("constant weight takes no parameters");
        return WeightSpec::constant();
    }
    WeightSpec w;
    if (kind == "affine")
        w = WeightSpec{WeightKind::Affine, alpha};
    else if (kind == "dirichlet")
        w = WeightSpec{WeightKind::Dirichlet, alpha};
    else
        throw ConfigError("unknown weight kind '" + kind + "' (constant|affine|dirichlet)");
    w.validate(dim + 1);
    return w;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
}

int cmd_convergence(const std::string& weight_text, int f_id, std::vector<int> n_list,
                    const std::string& scheme_text, const std::string& mesh_text, double delta,
                    std::uint64_t seed, int quad_order, const std::string& out_path) {
    StudyConfig cfg;
    cfg.weight = parse_weight(weight_text, 3);
    if (cfg.weight.kind == WeightKind::Dirichlet)
        for (double a : cfg.weight.alpha)
            if (a < 1.0)
                throw ConfigError("dirichlet alpha < 1 gives a singular density; "
                                  "data functionals would lose quadrature accuracy");
    if (mesh_text == "uniform")
        cfg.mesh_kind = MeshKind::Uniform;
    else if (mesh_text == "quasi")
        cfg.mesh_kind = MeshKind::Quasi;
    else
        throw ConfigError("--mesh must be uniform or quasi");
    cfg.delta = delta;
    cfg.seed = seed;
    if (quad_order > 0) cfg.error_quad_pts = quad_order;

    std::vector<Scheme> schemes;
    if (scheme_text == "linear")
        schemes = {Scheme::Linear};
    else if (scheme_text == "quadratic")
        schemes = {Scheme::Quadratic};
    else if (scheme_text == "both")
        schemes = {Scheme::Linear, Scheme::Quadratic};
    else
        throw ConfigError("--scheme must be linear, quadratic or both");

    const auto rows = convergence_study(test_function(f_id), n_list, schemes, cfg);
    // Keep the weight cell comma-free so the CSV stays trivially parseable.
    std::string weight_cell = cfg.weight.describe();
    for (char& c : weight_cell)
        if (c == ',') c = ';';
    std::string csv = "n,h,scheme,weight,error,order\n";
    for (const ErrorRow& r : rows) {
        csv += std::to_string(r.n) + "," + fmt(r.h) + "," + scheme_name(r.scheme) + "," +
               weight_cell + "," + fmt(r.error) + ",";
        if (std::isfinite(r.order)) csv += fmt(r.order, "%.6f");
        csv += "\n";
    }
    write_output(out_path, csv);
    return kExitOk;
}

int cmd_beta_curve(const std::vector<double>& alphas, std::optional<double> alpha_reg,
                   const std::string& out_path) {
    if (alpha_reg && *alpha_reg < 0.0)
        throw ConfigError("--alpha-reg must be nonnegative");
    const Simplex ref = Simplex::reference(3);
    std::string csv = alpha_reg ? "alpha,beta,beta_reg\n" : "alpha,beta\n";
    for (double a : alphas) {
        if (!(a > 0.0)) throw ConfigError("alpha values must be positive");
        const MomentSystem sys = assemble(raw_bundle(ref, WeightSpec::dirichlet({a, a, a, a})));
        const StabilityReport rep = stability(sys);
        csv += fmt(a, "%g") + "," + fmt(rep.beta);
        if (alpha_reg) csv += "," + fmt(regularized_beta(sys, rep, *alpha_reg));
        csv += "\n";
    }
    write_output(out_path, csv);
    return kExitOk;
}

json param_json(const ParamVector& p) {
    return json{{"alpha", p.alpha}, {"theta", p.theta}, {"upsilon", p.upsilon}};
}

int cmd_optimize(const std::string& mode_text, const std::string& bases_text,
                 std::vector<double> alpha, std::vector<double> theta,
                 std::vector<double> upsilon, int budget, const std::string& out_path) {
    const int dim = 3;
    ParamVector p0 = ParamVector::ones(dim);
    if (!alpha.empty()) p0.alpha = alpha;
    if (!theta.empty()) p0.theta = theta;
    if (!upsilon.empty()) p0.upsilon = upsilon;
    p0.validate(dim);

    ObjectiveMode mode;
    if (mode_text == "maxbeta")
        mode = ObjectiveMode::MaxBeta;
    else if (mode_text == "minkappa")
        mode = ObjectiveMode::MinKappa;
    else
        throw ConfigError("--mode must be maxbeta or minkappa");

    OptimizeOptions opts;
    opts.budget = budget;
    if (bases_text == "raw")
        opts.bases = BasisMode::Raw;
    else if (bases_text == "canonical")
        opts.bases = BasisMode::Canonical;
    else
        throw ConfigError("--bases must be raw or canonical");
    const ObjectiveInfo start = objective_info(dim, p0, opts.bases);
    const OptimizeResult r = optimize(dim, p0, mode, opts);
    const ObjectiveInfo end = objective_info(dim, r.best, opts.bases);

    json report;
    report["mode"] = mode_text;
    report["bases"] = bases_text;
    report["budget"] = budget;
    report["evaluations"] = r.evaluations;
    report["p0"] = param_json(p0);
    report["beta0"] = start.beta;
    report["kappa0"] = start.kappa2;
    report["p_star"] = param_json(r.best);
    report["beta_star"] = end.beta;
    report["kappa_star"] = end.kappa2;
    report["trace"] = r.trace;
    write_output(out_path, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_unisolvence(const std::string& weight_text, const std::string& tet_text,
                    bool duplicate_psi, const std::string& out_path) {
    Simplex tet = Simplex::reference(3);
    if (!tet_text.empty()) {
        std::vector<Point> pts;
        std::stringstream ss(tet_text);
        std::string vertex;
        while (std::getline(ss, vertex, ';')) {
            Point p;
            std::stringstream vs(vertex);
            std::string coord;
            while (std::getline(vs, coord, ',')) p.push_back(std::stod(coord));
            if (p.size() != 3) throw ConfigError("--tet wants 4 vertices 'x,y,z;...'");
            pts.push_back(p);
        }
        if (pts.size() != 4) throw ConfigError("--tet wants 4 vertices 'x,y,z;...'");
        try {
            tet = Simplex(3, pts);
        } catch (const GeometryError& e) {
            throw ConfigError(std::string("--tet: ") + e.what());
        }
    }
    const WeightSpec w = parse_weight(weight_text, 3);

    BasisBundle bundle = raw_bundle(tet, w);
    if (duplicate_psi) bundle.psi[1] = bundle.psi[0];
    const MomentSystem sys = assemble(bundle);
    StabilityReport rep = unisolvence(sys);

    json report;
    report["weight"] = w.describe();
    report["unisolvent"] = rep.unisolvent;
    report["detA"] = rep.detA;
    report["detT"] = rep.detT;
    report["detH"] = rep.detH;
    if (rep.unisolvent) {
        rep = stability(sys);
        report["beta"] = rep.beta;
        report["kappaH"] = rep.kappaH;
    } else {
        report["diagnosis"] = rep.diagnosis;
    }
    write_output(out_path, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_mesh(int n, const std::string& kind, double delta, std::uint64_t seed,
             const std::string& out_path) {
    TetMesh mesh;
    if (kind == "uniform")
        mesh = uniform_mesh(n);
    else if (kind == "quasi")
        mesh = quasi_uniform_mesh(n, delta, seed);
    else
        throw ConfigError("--kind must be uniform or quasi");
    write_output(out_path, mesh.dump());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted enriched quadratic histopolation on tetrahedral meshes"};
    app.require_subcommand(1);

    // convergence
    auto* conv = app.add_subcommand("convergence", "L2 convergence table (CSV)");
    std::string weight = "dirichlet:1,1,1,1";
    int f_id = 1;
    std::vector<int> n_list = {5, 9, 13};
    std::string scheme = "both", mesh_kind = "uniform", out_path;
    double delta = 0.2;
    std::uint64_t seed = 1;
    int quad_order = 0;
    conv->add_option("--weight", weight, "constant | affine:a0,..,a3 | dirichlet:a0,..,a3");
    conv->add_option("--f", f_id, "test function id (1..9)");
    conv->add_option("--n", n_list, "mesh resolutions")->delimiter(',');
    conv->add_option("--scheme", scheme, "linear | quadratic | both");
    conv->add_option("--mesh", mesh_kind, "uniform | quasi");
    conv->add_option("--delta", delta, "relative perturbation for quasi meshes");
    conv->add_option("--seed", seed, "perturbation seed");
    conv->add_option("--quad-order", quad_order, "points per axis for the L2 error");
    conv->add_option("--out", out_path, "output path (default stdout)");

    // beta-curve
    auto* curve = app.add_subcommand("beta-curve", "beta(alpha) for symmetric Dirichlet (CSV)");
    std::vector<double> alphas = {2, 2.5, 3, 3.5, 4, 4.5, 5};
    std::string curve_out;
    double alpha_reg = 0.0;
    curve->add_option("--alphas", alphas, "symmetric alpha grid")->delimiter(',');
    curve->add_option("--alpha-reg", alpha_reg, "spectral shift; adds a beta_reg column");
    curve->add_option("--out", curve_out, "output path (default stdout)");

    // optimize
    auto* opt = app.add_subcommand("optimize", "parameter optimization (JSON report)");
    std::string mode = "maxbeta", bases = "raw", opt_out;
    std::vector<double> p_alpha, p_theta, p_upsilon;
    int budget = 200;
    opt->add_option("--mode", mode, "maxbeta | minkappa");
    opt->add_option("--bases", bases, "raw | canonical");
    opt->add_option("--alpha", p_alpha, "initial Dirichlet parameters")->delimiter(',');
    opt->add_option("--theta", p_theta, "initial face scales")->delimiter(',');
    opt->add_option("--upsilon", p_upsilon, "initial interior scales")->delimiter(',');
    opt->add_option("--budget", budget, "objective evaluation budget");
    opt->add_option("--out", opt_out, "output path (default stdout)");

    // unisolvence
    auto* uni = app.add_subcommand("unisolvence", "single-simplex analysis (JSON report)");
    std::string uni_weight = "dirichlet:1,1,1,1", uni_tet, uni_out;
    bool duplicate_psi = false;
    uni->add_option("--weight", uni_weight, "weight specification");
    uni->add_option("--tet", uni_tet, "vertices 'x,y,z;x,y,z;x,y,z;x,y,z' (default reference)");
    uni->add_flag("--debug-duplicate-psi", duplicate_psi,
                  "duplicate psi_0 to engineer a dependent face family");
    uni->add_option("--out", uni_out, "output path (default stdout)");

    // mesh
    auto* msh = app.add_subcommand("mesh", "dump a mesh as plain text");
    int mesh_n = 5;
    std::string mesh_kind2 = "uniform", mesh_out;
    double mesh_delta = 0.2;
    std::uint64_t mesh_seed = 1;
    msh->add_option("--n", mesh_n, "resolution");
    msh->add_option("--kind", mesh_kind2, "uniform | quasi");
    msh->add_option("--delta", mesh_delta, "relative perturbation");
    msh->add_option("--seed", mesh_seed, "perturbation seed");
    msh->add_option("--out", mesh_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (conv->parsed())
            return cmd_convergence(weight, f_id, n_list, scheme, mesh_kind, delta, seed,
                                   quad_order, out_path);
        if (curve->parsed())
            return cmd_beta_curve(alphas,
                                  curve->count("--alpha-reg") ? std::optional<double>(alpha_reg)
                                                              : std::nullopt,
                                  curve_out);
        if (opt->parsed())
            return cmd_optimize(mode, bases, p_alpha, p_theta, p_upsilon, budget, opt_out);
        if (uni->parsed()) return cmd_unisolvence(uni_weight, uni_tet, duplicate_psi, uni_out);
        if (msh->parsed()) return cmd_mesh(mesh_n, mesh_kind2, mesh_delta, mesh_seed, mesh_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
