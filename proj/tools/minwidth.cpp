// minwidth CLI: build coding-scheme networks, measure approximation error,
// run the lemma verification suites, run the width-2 counterexample
// diagnostic, and evaluate the simplex separation bound.

#include <CLI11.hpp>

#include "minwidth/builders.hpp"
#include "minwidth/lowerbound.hpp"
#include "minwidth/metrics.hpp"
#include "minwidth/serialize.hpp"
#include "minwidth/simplex.hpp"
#include "minwidth/targets.hpp"
#include "minwidth/verify.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace minwidth;
using nlohmann::json;

NumericMode numeric_mode_from_env() {
    const char* env = std::getenv("MINWIDTH_NUMERIC");
    if (!env) return NumericMode::float64;
    const std::string v(env);
    if (v == "float64") return NumericMode::float64;
    if (v == "dyadic") return NumericMode::dyadic_exact;
    throw std::invalid_argument("MINWIDTH_NUMERIC must be 'float64' or 'dyadic'");
}

// Target intake: a JSON spec file, or the inline shorthand "name:dx:dy".
TargetSpec parse_target(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_target_spec_file(arg);
    const auto c1 = arg.find(':');
    const auto c2 = arg.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("target must be a spec file or 'name:dx:dy'");
    TargetSpec s;
    s.target = make_builtin_target(arg.substr(0, c1), std::stoi(arg.substr(c1 + 1, c2 - c1 - 1)),
                                   std::stoi(arg.substr(c2 + 1)));
    return s;
}

double measure_error(const TargetFunction& f, const Network& net, const std::string& norm, double p,
                     const Quadrature& q, NumericMode mode) {
    if (mode == NumericMode::float64)
        return norm == "sup" ? sup_error(f, net, q) : lp_error(f, net, p, q);
    // Dyadic-exact evaluation: grid quadrature with the exact forward pass.
    double worst = 0.0, acc = 0.0;
    long long count = 0;
    const int res = q.resolution;
    std::vector<int> idx(f.dx, 0);
    std::vector<double> x(f.dx);
    bool done = false;
    while (!done) {
        for (int i = 0; i < f.dx; ++i) x[i] = double(idx[i]) / double(res - 1);
        const auto y = f(x);
        const auto z = evaluate(net, x, NumericMode::dyadic_exact);
        double s = 0.0;
        for (int k = 0; k < f.dy; ++k) {
            worst = std::max(worst, std::abs(y[k] - z[k]));
            s += std::pow(std::abs(y[k] - z[k]), p);
        }
        acc += s;
        ++count;
        int i = 0;
        for (; i < f.dx; ++i) {
            if (++idx[i] < res) break;
            idx[i] = 0;
        }
        done = (i == f.dx);
    }
    return norm == "sup" ? worst : std::pow(acc / double(count), 1.0 / p);
}

int cmd_build(const std::string& target_arg, std::string mode, int k, int m, double gamma, double p,
              const std::string& out_path, const std::string& report_path, int grid) {
    TargetSpec spec = parse_target(target_arg);
    if (!mode.empty()) spec.mode = mode;
    if (k > 0) spec.k = k;
    if (m > 0) spec.m = m;
    if (gamma > 0) spec.gamma = gamma;
    if (p > 0) spec.p = p;

    const NumericMode nmode = numeric_mode_from_env();
    json report;
    Network net;
    if (spec.mode == "uniform-step") {
        net = assemble_uniform_net(spec.target, spec.k, spec.m);
        report["analytic_error_bound"] = error_budget(spec.target.lipschitz, spec.k, spec.m);
        report["measured_error"] =
            measure_error(spec.target, net, "sup", spec.p, Quadrature::make_grid(grid), nmode);
        report["norm"] = "sup";
    } else {
        const LpAssembly a = assemble_lp_net(spec.target, spec.k, spec.m, spec.gamma, spec.p);
        net = a.net;
        report["analytic_error_bound"] = a.analytic_bound;
        report["sentinel"] = a.sentinel;
        report["measured_error"] =
            measure_error(spec.target, net, "lp", spec.p, Quadrature::make_grid(grid), nmode);
        report["norm"] = "lp";
        report["p"] = spec.p;
    }
    report["mode"] = spec.mode;
    report["target"] = spec.target.name;
    report["k"] = spec.k;
    report["m"] = spec.m;
    report["width"] = net.width();
    report["depth"] = net.depth();
    report["parameter_count"] = net.parameter_count();
    report["has_step_neuron"] = net.has_step_neuron();

    if (!out_path.empty()) save_network(net, out_path, nmode);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_error(const std::string& net_path, const std::string& target_arg, const std::string& norm,
              double p, int grid, long long mc, std::uint64_t seed) {
    const Network net = load_network(net_path);
    const TargetSpec spec = parse_target(target_arg);
    const Quadrature q = mc > 0 ? Quadrature::make_monte_carlo(std::uint64_t(mc), seed)
                                : Quadrature::make_grid(grid);
    const double err = measure_error(spec.target, net, norm, p, q, numeric_mode_from_env());
    json report = {{"net", net_path},   {"target", spec.target.name}, {"norm", norm},
                   {"p", p},            {"grid", grid},               {"mc_samples", mc},
                   {"error", err}};
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& name, const VerifyParams& params) {
    const VerifyResult r = run_lemma_suite(name, params);
    std::cout << r.name << " " << r.detail << "\n";
    return r.pass ? 0 : 1;
}

json report_to_json(const DiagnosticReport& r) {
    json j;
    j["sup_distance"] = rat_to_double(r.sup_distance);
    j["sup_distance_exact"] = rat_to_fraction_string(r.sup_distance);
    j["pipeline_run"] = r.pipeline_run;
    j["nointersect"] = r.nointersect;
    j["ell_star"] = r.ell_star;
    j["containment_verdict"] = r.containment_verdict;
    j["parity_samples"] = r.parity_samples;
    j["contradiction_step"] = r.contradiction_step;
    return j;
}

int cmd_diagnose(long long random_n, const std::string& corpus, const std::string& emit_curve,
                 std::uint64_t seed, long long refine_n, const std::string& out_path) {
    if (!emit_curve.empty()) {
        std::ofstream out(emit_curve);
        out << "t,x,y\n";
        const Polyline& c = counterexample_curve();
        for (std::size_t i = 0; i < c.ts.size(); ++i)
            out << rat_to_double(c.ts[i]) << "," << rat_to_double(c.pts[i].x) << ","
                << rat_to_double(c.pts[i].y) << "\n";
    }
    std::vector<Network> nets;
    if (!corpus.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(corpus))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) nets.push_back(load_network(f.string()));
    }
    std::mt19937_64 rng(seed);
    for (long long i = 0; i < random_n; ++i) nets.push_back(random_width2_net(rng));
    for (long long i = 0; i < refine_n; ++i) nets.push_back(refine_width2_net(random_width2_net(rng), rng));
    if (nets.empty()) throw std::invalid_argument("diagnose: no nets (use --random or --corpus)");

    json reports = json::array();
    Rational min_dist(-1);
    for (const Network& net : nets) {
        const DiagnosticReport r = diagnose(net);
        if (min_dist < 0 || r.sup_distance < min_dist) min_dist = r.sup_distance;
        reports.push_back(report_to_json(r));
    }
    json summary = {{"nets", nets.size()},
                    {"min_sup_distance", rat_to_double(min_dist)},
                    {"min_sup_distance_exact", rat_to_fraction_string(min_dist)},
                    {"all_above_1_100", min_dist > Rational(1, 100)}};
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << json{{"summary", summary}, {"reports", reports}}.dump(2) << "\n";
    }
    std::cout << summary.dump(2) << "\n";
    return min_dist > Rational(1, 100) ? 0 : 1;
}

int cmd_simplex(int dy, double p, long long trials, std::uint64_t seed) {
    const SimplexBoundReport r = simplex_bound(dy, p);
    const double mc_min = min_half_width_search(r.vertices, int(trials), seed);
    json report = {{"dy", dy},
                   {"p", p},
                   {"epsilon", r.epsilon},
                   {"geometric_bound", r.geometric_bound},
                   {"mc_min_half_width", mc_min},
                   {"mc_respects_bound", mc_min >= r.geometric_bound - 1e-12},
                   {"vertices", r.vertices}};
    std::cout << report.dump(2) << "\n";
    return mc_min >= r.geometric_bound - 1e-12 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minwidth: explicit minimum-width universal approximation constructions"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Build a network for a target");
    std::string b_target, b_mode = "uniform-step", b_out, b_report;
    int b_k = 0, b_m = 0, b_grid = 201;
    double b_gamma = 0, b_p = 0;
    build->add_option("--target", b_target, "target spec file or name:dx:dy")->required();
    build->add_option("--mode", b_mode)->check(CLI::IsMember({"uniform-step", "lp-relu"}));
    build->add_option("--k", b_k);
    build->add_option("--m", b_m);
    build->add_option("--gamma", b_gamma);
    build->add_option("--p", b_p);
    build->add_option("--grid", b_grid);
    build->add_option("--out", b_out, "network document output path");
    build->add_option("--report", b_report, "build report output path");

    // error
    auto* error = app.add_subcommand("error", "Measure error of a saved network");
    std::string e_net, e_target, e_norm = "sup";
    double e_p = 2.0;
    int e_grid = 101;
    long long e_mc = 0;
    std::uint64_t e_seed = 1;
    error->add_option("--net", e_net)->required();
    error->add_option("--target", e_target)->required();
    error->add_option("--norm", e_norm)->check(CLI::IsMember({"sup", "lp"}));
    error->add_option("--p", e_p);
    error->add_option("--grid", e_grid);
    error->add_option("--mc", e_mc);
    error->add_option("--seed", e_seed);

    // verify-lemma
    auto* verify = app.add_subcommand("verify-lemma", "Run a lemma verification suite");
    std::string v_name;
    VerifyParams v_params;
    verify->add_option("name", v_name, "quantizer|encoder-step|encoder-relu|memorizer|decoder|staircase|clamp|pl")
        ->required();
    verify->add_option("--dx", v_params.dx);
    verify->add_option("--dy", v_params.dy);
    verify->add_option("--k", v_params.k);
    verify->add_option("--m", v_params.m);
    verify->add_option("--alpha", v_params.alpha);
    verify->add_option("--gamma", v_params.gamma);
    verify->add_option("--samples", v_params.samples);
    verify->add_option("--seed", v_params.seed);

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Width-2 counterexample diagnostic");
    long long d_random = 0, d_refine = 0;
    std::string d_corpus, d_curve, d_out;
    std::uint64_t d_seed = 1;
    diag->add_option("--random", d_random, "number of random width-2 nets");
    diag->add_option("--refine", d_refine, "additional locally refined nets");
    diag->add_option("--corpus", d_corpus, "directory of network documents");
    diag->add_option("--emit-curve", d_curve, "write the target curve CSV here");
    diag->add_option("--seed", d_seed);
    diag->add_option("--out", d_out, "full report JSON path");

    // simplex
    auto* simp = app.add_subcommand("simplex", "Simplex separation bound");
    int s_dy = 3;
    double s_p = 2.0;
    long long s_trials = 10000;
    std::uint64_t s_seed = 1;
    simp->add_option("--dy", s_dy);
    simp->add_option("--p", s_p);
    simp->add_option("--trials", s_trials);
    simp->add_option("--seed", s_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(b_target, b_mode, b_k, b_m, b_gamma, b_p, b_out, b_report, b_grid);
        if (error->parsed()) return cmd_error(e_net, e_target, e_norm, e_p, e_grid, e_mc, e_seed);
        if (verify->parsed()) return cmd_verify(v_name, v_params);
        if (diag->parsed()) return cmd_diagnose(d_random, d_corpus, d_curve, d_seed, d_refine, d_out);
        if (simp->parsed()) return cmd_simplex(s_dy, s_p, s_trials, s_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
