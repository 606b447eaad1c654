// symflat command line: generators, kernel checks and batch reports.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symflat/beta.hpp"
#include "symflat/cubes.hpp"
#include "symflat/error.hpp"
#include "symflat/flatness.hpp"
#include "symflat/generators.hpp"
#include "symflat/kernel.hpp"
#include "symflat/measure_io.hpp"
#include "symflat/parallel.hpp"
#include "symflat/symmetry.hpp"

using namespace symflat;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

struct Global {
    double A = 16.0;
    double tau = 0.1;
    double gamma = 0.5;
    double tol = -1.0;  // negative: command default
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
    std::string format = "json";
    std::string invocation;
};

Point2 parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(Errc::invalid_argument, "point must be x,y: '" + s + "'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(Errc::invalid_argument, "point must be x,y: '" + s + "'");
    }
}

OmegaMap kernel_or_identity(const std::string& path) { return path.empty() ? OmegaMap::identity() : load_kernel_json(path); }

json context(const Global& g) {
    json c;
    c["invocation"] = g.invocation;
    c["A"] = g.A;
    c["tau"] = g.tau;
    c["gamma"] = g.gamma;
    c["seed"] = g.seed;
    if (g.tol >= 0.0) c["tol"] = g.tol;
    return c;
}

std::string csv_preamble(const Global& g) {
    std::ostringstream s;
    s << "# invocation: " << g.invocation << '\n';
    s << "# A=" << format_double(g.A) << " tau=" << format_double(g.tau) << " gamma=" << format_double(g.gamma)
      << " seed=" << g.seed;
    if (g.tol >= 0.0) s << " tol=" << format_double(g.tol);
    s << '\n';
    return s.str();
}

void emit(const Global& g, const std::string& text) {
    if (g.out.empty() || g.out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw Error(Errc::io_error, "cannot write " + g.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
    if (!f) throw Error(Errc::io_error, "write failed for " + g.out);
}

std::size_t nearest_support_point(const DiscreteMeasure& mu, const Point2& x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < mu.size(); ++i)
        if (norm2(mu.point(i) - x) < norm2(mu.point(best) - x)) best = i;
    return best;
}

// ---------------------------------------------------------------- commands

int cmd_generate(const Global& g, const GeneratorSpec& spec) {
    const DiscreteMeasure mu = generate(spec);
    std::ostringstream s;
    s << csv_preamble(g);
    write_measure_csv(s, mu);
    emit(g, s.str());
    return kExitOk;
}

int cmd_kernel_validate(const Global& g, const std::string& path, int grid) {
    OmegaMap om;
    try {
        om = load_kernel_json(path);
    } catch (const Error& e) {
        if (e.code() != Errc::not_a_homeomorphism) throw;
        json j;
        j["context"] = context(g);
        j["admissible"] = false;
        j["error"] = e.what();
        emit(g, j.dump(1));
        return kExitValidation;
    }
    // derivative residuals against central differences
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> len(0.5, 2.0);
    double res_w = 0.0, res_dk = 0.0, res_d2k = 0.0;
    for (int n = 0; n < 2000; ++n) {
        const double t = ang(rng);
        const double e = 1e-5;
        res_w = std::max(res_w, std::abs(om.omega_prime(t) - (om.omega(t + e) - om.omega(t - e)) / (2 * e)));
        const Vec2 y = len(rng) * unit_from_angle(ang(rng));
        const Vec2 v = unit_from_angle(ang(rng));
        const Vec2 fd = (K_eval(om, y + e * v) - K_eval(om, y - e * v)) / (2 * e);
        res_dk = std::max(res_dk, norm(DK_apply(om, y, v) - fd));
        const double e2 = 1e-4;
        const Vec2 fd2 = (K_eval(om, y + e2 * v) - 2.0 * K_eval(om, y) + K_eval(om, y - e2 * v)) / (e2 * e2);
        res_d2k = std::max(res_d2k, norm(D2K_quadform(om, y, v) - fd2));
    }
    json j;
    j["context"] = context(g);
    j["delta"] = om.delta();
    j["inf_prime"] = om.inf_prime();
    j["sup_prime"] = om.sup_prime();
    j["admissible"] = om.admissible();
    j["residuals"] = {{"omega_prime", res_w}, {"DK", res_dk}, {"D2K", res_d2k}};
    if (om.admissible()) {
        const LemmaReport r = check_dot_lemmas(om, static_cast<std::size_t>(grid));
        j["dot_lemmas"] = {{"grid", grid},
                           {"violations", r.violations()},
                           {"min_sign_nu", r.min_sign_nu},
                           {"min_sign_eL", r.min_sign_eL},
                           {"max_abs_nu", r.max_abs_nu},
                           {"max_abs_eL", r.max_abs_eL},
                           {"boundary_min_nu", r.boundary_min_nu},
                           {"boundary_min_eL", r.boundary_min_eL}};
    }
    emit(g, j.dump(1));
    return om.admissible() ? kExitOk : kExitValidation;
}

int cmd_beta_profile(const Global& g, const std::string& path, const std::string& x, double ell, int N, bool unchecked) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const Point2 p = parse_point(x);
    const BetaProfile prof = unchecked ? multiscale_sum_unchecked(mu, p, ell, N) : multiscale_sum(mu, p, ell, N);
    emit(g, csv_preamble(g) + "# total=" + format_double(prof.total()) + " small_beta=" +
                (prof.small_beta(g.tau) ? "true" : "false") + '\n' + profile_csv(prof));
    return kExitOk;
}

int cmd_beta_cubes(const Global& g, const std::string& path, int jmin, int jmax) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const CubeLattice L = build_lattice(mu, jmin, jmax);
    const auto betas = beta_cubes(mu, L);
    std::ostringstream s;
    s << csv_preamble(g) << "# C0=" << format_double(L.C0()) << '\n';
    s << "cube_id,level,side,mass,cx,cy,members,beta,t,theta,degenerate\n";
    for (const Cube& q : L.cubes()) {
        const BetaValue& b = betas[q.id];
        s << q.id << ',' << q.level << ',' << format_double(q.side) << ',' << format_double(q.mass) << ','
          << format_double(q.center.x) << ',' << format_double(q.center.y) << ',' << q.members.size() << ','
          << format_double(b.beta) << ',' << format_double(b.t) << ',' << format_double(b.line.theta()) << ','
          << (b.degenerate ? 1 : 0) << '\n';
    }
    emit(g, s.str());
    return kExitOk;
}

int cmd_symmetry_defect(const Global& g, const std::string& path, const std::string& kpath, std::size_t centers,
                        double rmin, double rmax, std::size_t scales, const std::string& functional,
                        double riesz_outer) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const OmegaMap om = kernel_or_identity(kpath);
    DefectOptions opt;
    opt.functional = parse_functional(functional);
    opt.riesz_outer = riesz_outer;
    const SymmetryReport rep = defect_report(mu, om, centers, rmin, rmax, scales, opt, g.seed);
    const bool ok = g.tol < 0.0 || rep.sup_norm <= g.tol;
    if (g.format == "csv") {
        emit(g, csv_preamble(g) + "# sup_norm=" + format_double(rep.sup_norm) + '\n' + rep.to_csv());
    } else {
        json j = json::parse(rep.to_json());
        j["context"] = context(g);
        j["kernel"] = json::parse(kernel_to_json(om));
        if (g.tol >= 0.0) j["within_tol"] = ok;
        emit(g, j.dump(1));
    }
    return ok ? kExitOk : kExitValidation;
}

int cmd_symmetry_pv(const Global& g, const std::string& path, const std::string& kpath, const std::string& x,
                    double eps_max, double eps_min, int count, double rout) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const OmegaMap om = kernel_or_identity(kpath);
    if (count < 2 || !(eps_min > 0.0) || !(eps_max > eps_min))
        throw Error(Errc::invalid_argument, "need eps_max > eps_min > 0 and at least 2 steps");
    std::vector<double> eps;
    for (int k = 0; k < count; ++k) eps.push_back(eps_max * std::pow(eps_min / eps_max, double(k) / (count - 1)));
    const PvProfile p = pv_profile(mu, om, parse_point(x), eps, rout);
    std::ostringstream s;
    s << csv_preamble(g) << "# max_successive_diff=" << format_double(p.max_successive_diff) << '\n';
    s << "eps,vx,vy\n";
    for (std::size_t k = 0; k < p.epsilons.size(); ++k)
        s << format_double(p.epsilons[k]) << ',' << format_double(p.values[k].x) << ',' << format_double(p.values[k].y)
          << '\n';
    emit(g, s.str());
    return kExitOk;
}

int cmd_flatness_certify(const Global& g, const std::string& path, const std::string& kpath, int jmin, int jmax,
                         const std::string& x) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const OmegaMap om = kernel_or_identity(kpath);
    const CubeLattice L = build_lattice(mu, jmin, jmax);
    const std::size_t S = L.owner(jmin, static_cast<std::uint32_t>(nearest_support_point(mu, parse_point(x))));
    CertifyOptions opt;
    opt.A = g.A;
    opt.tau = g.tau;
    opt.gamma = g.gamma;
    opt.defect_tol = g.tol;
    const CertificationReport rep = certify(mu, om, L, S, opt);
    if (g.format == "csv") {
        std::ostringstream s;
        s << csv_preamble(g) << "# S=" << S << " carleson_lhs=" << format_double(rep.carleson_lhs)
          << " carleson_rhs=" << format_double(rep.carleson_rhs) << " max_ratio=" << format_double(rep.max_ratio)
          << " max_defect=" << format_double(rep.max_defect) << " defect_tol=" << format_double(rep.defect_tol)
          << " claimed=" << (rep.claimed ? "true" : "false") << '\n'
          << rep.to_csv();
        emit(g, s.str());
    } else {
        json j;
        j["context"] = context(g);
        j["S"] = S;
        j["carleson_lhs"] = rep.carleson_lhs;
        j["carleson_rhs"] = rep.carleson_rhs;
        j["max_ratio"] = rep.max_ratio;
        j["max_defect"] = rep.max_defect;
        j["defect_tol"] = rep.defect_tol;
        j["claimed"] = rep.claimed;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"cube_id", r.cube_id},
                                 {"level", r.level},
                                 {"beta", r.beta},
                                 {"mass", r.mass},
                                 {"side", r.side},
                                 {"lhs", r.lhs},
                                 {"rhs", r.rhs},
                                 {"ratio", r.ratio},
                                 {"regime", regime_name(r.regime)},
                                 {"defect", r.defect},
                                 {"truncated_chain", r.truncated_chain}});
        emit(g, j.dump(1));
    }
    return rep.claimed ? kExitOk : kExitValidation;
}

int cmd_flatness_classify(const Global& g, const std::string& path) {
    const DiscreteMeasure mu = load_measure_csv(path);
    const double tol = g.tol >= 0.0 ? g.tol : 0.05;
    const FlatVerdict v = classify_flat(mu, tol);
    json j;
    j["context"] = context(g);
    j["tol_used"] = tol;
    j["flat"] = v.flat;
    j["theta"] = v.line.theta();
    j["offset"] = v.line.offset();
    j["max_dev"] = v.max_dev;
    j["diam"] = v.diam;
    j["normalized_dev"] = v.normalized_dev;
    if (v.flat) j["mass_cv"] = v.mass_cv;
    emit(g, j.dump(1));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Global g;
    for (int i = 0; i < argc; ++i) g.invocation += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"symflat: symmetric measures, beta numbers and flatness certificates"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_help_all_flag("--help-all");
    app.add_option("--A", g.A, "cube-to-ball scale factor")->check(CLI::PositiveNumber);
    app.add_option("--tau", g.tau, "small-beta threshold")->check(CLI::PositiveNumber);
    app.add_option("--gamma", g.gamma, "Carleson weight exponent")->check(CLI::Range(0.0, 1.0));
    app.add_option("--tol", g.tol, "tolerance for pass/fail exit codes");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("-o,--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "json or csv, where both exist")->check(CLI::IsMember({"json", "csv"}));

    std::function<int()> action;

    GeneratorSpec spec;
    std::string kind = "line";
    auto* gen = app.add_subcommand("generate", "write a synthetic measure as CSV");
    gen->set_help_flag("--help", "print help");  // frees -h so --h can name the spacing
    gen->add_option("kind", kind, "generator kind")
        ->check(CLI::IsMember({"line", "segment", "equidistant_lines", "circle", "cross", "lipschitz_graph",
                               "lebesgue_grid", "perturbed_line"}));
    gen->add_option("--h", spec.h, "sample spacing");
    gen->add_option("--extent", spec.extent, "length of lines / side of the grid");
    gen->add_option("--m", spec.m, "number of parallel lines");
    gen->add_option("--gap", spec.gap, "distance between parallel lines");
    gen->add_option("--amplitude", spec.amplitude, "graph amplitude");
    gen->add_option("--sigma", spec.sigma, "normal noise of perturbed_line");
    gen->add_option("--radius", spec.radius, "circle radius");
    gen->add_option("--angle", spec.angle, "rotation of lines");
    gen->callback([&] {
        spec.kind = parse_generator_kind(kind);
        spec.seed = g.seed;
        action = [&] { return cmd_generate(g, spec); };
    });

    auto* kernel = app.add_subcommand("kernel", "kernel tools");
    kernel->require_subcommand(1);
    std::string kpath;
    int grid = 720;
    auto* kval = kernel->add_subcommand("validate", "delta, admissibility, derivative residuals, dot lemmas");
    kval->add_option("kernel", kpath, "kernel JSON")->required();
    kval->add_option("--grid", grid, "dot-lemma grid size")->check(CLI::Range(2, 100000));
    kval->callback([&] { action = [&] { return cmd_kernel_validate(g, kpath, grid); }; });

    auto* beta = app.add_subcommand("beta", "Jones beta numbers");
    beta->require_subcommand(1);
    std::string mpath, x = "0,0";
    double ell = 0.1;
    int N = 4;
    bool unchecked = false;
    auto* bprof = beta->add_subcommand("profile", "beta2 at ell * 2^k, k = 0..N");
    bprof->add_option("measure", mpath, "measure CSV")->required();
    bprof->add_option("--x", x, "center x,y");
    bprof->add_option("--ell", ell, "smallest scale")->check(CLI::PositiveNumber);
    bprof->add_option("--N", N, "number of doublings")->check(CLI::NonNegativeNumber);
    bprof->add_flag("--unchecked", unchecked, "allow scales beyond the support diameter");
    bprof->callback([&] { action = [&] { return cmd_beta_profile(g, mpath, x, ell, N, unchecked); }; });

    int jmin = 0, jmax = 5;
    auto* bcubes = beta->add_subcommand("cubes", "beta2 of every lattice cube");
    bcubes->add_option("measure", mpath, "measure CSV")->required();
    bcubes->add_option("--jmin", jmin, "coarsest level");
    bcubes->add_option("--jmax", jmax, "finest level");
    bcubes->callback([&] { action = [&] { return cmd_beta_cubes(g, mpath, jmin, jmax); }; });

    auto* sym = app.add_subcommand("symmetry", "symmetry functionals");
    sym->require_subcommand(1);
    std::size_t centers = 100, scales = 10;
    double rmin = 0.1, rmax = 1.0, riesz_outer = 4.0;
    std::string functional = "c_omega";
    auto* sdef = sym->add_subcommand("defect", "sup of a symmetry functional over centers and scales");
    sdef->add_option("measure", mpath, "measure CSV")->required();
    sdef->add_option("kernel", kpath, "kernel JSON (default identity)");
    sdef->add_option("--centers", centers, "number of centers");
    sdef->add_option("--scales", scales, "number of geometric scales");
    sdef->add_option("--rmin", rmin, "smallest radius")->check(CLI::PositiveNumber);
    sdef->add_option("--rmax", rmax, "largest radius")->check(CLI::PositiveNumber);
    sdef->add_option("--functional", functional, "c_omega, c_omega_smooth or riesz");
    sdef->add_option("--riesz-outer", riesz_outer, "outer truncation of riesz, in units of r");
    sdef->callback([&] {
        action = [&] {
            return cmd_symmetry_defect(g, mpath, kpath, centers, rmin, rmax, scales, functional, riesz_outer);
        };
    });

    double eps_max = 0.1, eps_min = 0.001, rout = 1.0;
    int count = 8;
    auto* spv = sym->add_subcommand("pv", "principal-value truncations at one point");
    spv->add_option("measure", mpath, "measure CSV")->required();
    spv->add_option("kernel", kpath, "kernel JSON (default identity)");
    spv->add_option("--x", x, "center x,y");
    spv->add_option("--eps-max", eps_max, "largest truncation");
    spv->add_option("--eps-min", eps_min, "smallest truncation");
    spv->add_option("--count", count, "number of truncations");
    spv->add_option("--rout", rout, "outer radius");
    spv->callback([&] { action = [&] { return cmd_symmetry_pv(g, mpath, kpath, x, eps_max, eps_min, count, rout); }; });

    auto* flat = app.add_subcommand("flatness", "flatness certificates");
    flat->require_subcommand(1);
    auto* fcert = flat->add_subcommand("certify", "beta recursion rows and Carleson sums below a top cube");
    fcert->add_option("measure", mpath, "measure CSV")->required();
    fcert->add_option("kernel", kpath, "kernel JSON (default identity)");
    fcert->add_option("--jmin", jmin, "level of the top cube");
    fcert->add_option("--jmax", jmax, "finest level");
    fcert->add_option("--x", x, "the top cube is the one holding the support point nearest x");
    fcert->callback([&] { action = [&] { return cmd_flatness_certify(g, mpath, kpath, jmin, jmax, x); }; });

    auto* fcls = flat->add_subcommand("classify", "flat / non-flat verdict");
    fcls->add_option("measure", mpath, "measure CSV")->required();
    fcls->callback([&] { action = [&] { return cmd_flatness_classify(g, mpath); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "symflat: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (g.threads > 0) set_threads(g.threads);
        return action();
    } catch (const Error& e) {
        std::cerr << "symflat: " << e.what() << '\n';
        return (e.code() == Errc::io_error || e.code() == Errc::parse_error) ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "symflat: " << e.what() << '\n';
        return kExitIo;
    }
}
