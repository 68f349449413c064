// Command-line front end: kernel/measure/special-function evaluation,
// covering generation and validation, atomic decomposition, H1-norm
// estimation, and the condition-verification battery.  All reports are JSON
// with an embedded config echo; grids and profiles are CSV.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bessel_hardy/atoms.hpp"
#include "bessel_hardy/covering.hpp"
#include "bessel_hardy/covering_check.hpp"
#include "bessel_hardy/grid.hpp"
#include "bessel_hardy/kernel.hpp"
#include "bessel_hardy/maximal.hpp"
#include "bessel_hardy/measure.hpp"
#include "bessel_hardy/specfun.hpp"
#include "bessel_hardy/verify.hpp"

using json = nlohmann::ordered_json;
using namespace bessel_hardy;

namespace {

struct AppConfig {
    std::vector<double> nu{1.0};
    std::vector<std::string> flavors;   // classical | exotic, per axis
    std::vector<std::string> kernels;   // classical | exotic | conjugated
    std::string covering = "dyadic";    // dyadic | box | box3 | qb
    int level_lo = -3, level_hi = 3;
    double kappa = 17.0 / 16.0;
    double gamma = 0.25;
    std::vector<double> deltas;
    double lemma_delta = 0.2;
    double sup_t_eps = 0.5;
    int depth = 5;
    std::uint64_t seed = 1;
    int threads = 0;
    std::size_t d1 = 1;
    // verification knobs
    double spread_bound = 10.0;
    int t_per_decade = 6;
    int gauss_points = 6;
    int mid_panels = 24;
    int tail_octaves = 40;
    int n_random_y = 7;
    double eps_tail = 1e-3;
    int n_points = 10000;
    // test function for atoms / h1norm
    std::string function = "gauss";
    double center = 3.0, width = 1.0;
    int grid_n = 64;

    void load(const json& j) {
        auto get = [&](const char* k, auto& v) {
            if (j.contains(k)) v = j.at(k).get<std::decay_t<decltype(v)>>();
        };
        get("nu", nu);
        get("flavors", flavors);
        get("kernels", kernels);
        get("covering", covering);
        get("level_lo", level_lo);
        get("level_hi", level_hi);
        get("kappa", kappa);
        get("gamma", gamma);
        get("deltas", deltas);
        get("lemma_delta", lemma_delta);
        get("sup_t_eps", sup_t_eps);
        get("depth", depth);
        get("seed", seed);
        get("threads", threads);
        get("d1", d1);
        get("spread_bound", spread_bound);
        get("t_per_decade", t_per_decade);
        get("gauss_points", gauss_points);
        get("mid_panels", mid_panels);
        get("tail_octaves", tail_octaves);
        get("n_random_y", n_random_y);
        get("eps_tail", eps_tail);
        get("n_points", n_points);
        get("function", function);
        get("center", center);
        get("width", width);
        get("grid_n", grid_n);
    }

    json echo() const {
        json j;
        j["nu"] = nu;
        j["flavors"] = flavors;
        j["kernels"] = kernels;
        j["covering"] = covering;
        j["level_lo"] = level_lo;
        j["level_hi"] = level_hi;
        j["kappa"] = kappa;
        j["gamma"] = gamma;
        j["deltas"] = deltas;
        j["lemma_delta"] = lemma_delta;
        j["sup_t_eps"] = sup_t_eps;
        j["depth"] = depth;
        j["seed"] = seed;
        j["threads"] = threads;
        j["d1"] = d1;
        j["spread_bound"] = spread_bound;
        j["t_per_decade"] = t_per_decade;
        j["gauss_points"] = gauss_points;
        j["mid_panels"] = mid_panels;
        j["tail_octaves"] = tail_octaves;
        j["n_random_y"] = n_random_y;
        j["eps_tail"] = eps_tail;
        j["n_points"] = n_points;
        j["function"] = function;
        j["center"] = center;
        j["width"] = width;
        j["grid_n"] = grid_n;
        return j;
    }
};

NuVector make_nu(const AppConfig& cfg) {
    NuVector nv;
    for (std::size_t i = 0; i < cfg.nu.size(); ++i) {
        AxisFlavor fl = AxisFlavor::Classical;
        if (i < cfg.flavors.size()) {
            if (cfg.flavors[i] == "exotic") fl = AxisFlavor::Exotic;
            else if (cfg.flavors[i] != "classical")
                throw std::domain_error("flavor must be classical or exotic");
        }
        nv.axes.push_back({cfg.nu[i], fl});
    }
    nv.validate();
    return nv;
}

KernelSpec make_kernel(const AppConfig& cfg) {
    std::vector<KernelAxis> axes;
    for (std::size_t i = 0; i < cfg.nu.size(); ++i) {
        KernelBranch br = KernelBranch::ClassicalW;
        std::string k = i < cfg.kernels.size() ? cfg.kernels[i]
                        : i < cfg.flavors.size() ? cfg.flavors[i]
                                                 : "classical";
        if (k == "exotic") br = KernelBranch::ExoticW;
        else if (k == "conjugated") br = KernelBranch::ConjugatedK;
        else if (k != "classical")
            throw std::domain_error(
                "kernel must be classical, exotic, or conjugated");
        axes.push_back({cfg.nu[i], br});
    }
    return KernelSpec(std::move(axes));
}

CoveringPtr make_covering(const AppConfig& cfg) {
    CoveringPtr cov;
    if (cfg.covering == "dyadic") cov = dyadic_covering_1d();
    else if (cfg.covering == "box")
        cov = box_product(dyadic_covering_1d(), dyadic_covering_1d());
    else if (cfg.covering == "box3")
        cov = box_product(box_product(dyadic_covering_1d(), dyadic_covering_1d()),
                          dyadic_covering_1d());
    else if (cfg.covering == "qb")
        cov = qb_covering(cfg.d1, cfg.nu.size() - cfg.d1);
    else
        throw std::domain_error("covering must be dyadic, box, box3, or qb");
    std::const_pointer_cast<Covering>(cov)->set_kappa(cfg.kappa);
    return cov;
}

Cuboid window_box(const AppConfig& cfg, std::size_t d) {
    Point lo(d, std::ldexp(1.0, cfg.level_lo));
    Point hi(d, std::ldexp(1.0, cfg.level_hi + 1));
    return Cuboid::from_corners(lo, hi);
}

GridFunction make_test_function(const AppConfig& cfg) {
    const NuVector nv = make_nu(cfg);
    const std::size_t d = nv.dim();
    const double a = std::max(cfg.center - 4.0 * cfg.width, 1e-6);
    const double b = cfg.center + 4.0 * cfg.width;
    GridFunction f(Cuboid::from_corners(Point(d, a), Point(d, b)),
                   std::vector<int>(d, cfg.grid_n), nv);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point x = f.cell_center(i);
        double v = 1.0;
        for (double xi : x) {
            const double u = (xi - cfg.center) / cfg.width;
            if (cfg.function == "gauss") v *= std::exp(-u * u);
            else if (cfg.function == "tent") v *= std::max(0.0, 1.0 - std::abs(u));
            else if (cfg.function == "step") v *= std::abs(u) < 1.0 ? 1.0 : 0.0;
            else throw std::domain_error("function must be gauss, tent, or step");
        }
        f.values[i] = v;
    }
    return f;
}

VerifyOptions verify_options(const AppConfig& cfg) {
    VerifyOptions opt;
    opt.t_per_decade = cfg.t_per_decade;
    opt.gauss_points = cfg.gauss_points;
    opt.mid_panels = cfg.mid_panels;
    opt.tail_octaves = cfg.tail_octaves;
    opt.n_random_y = cfg.n_random_y;
    opt.seed = cfg.seed;
    opt.spread_bound = cfg.spread_bound;
    opt.eps_tail = cfg.eps_tail;
    return opt;
}

json report_json(const ConditionReport& r) {
    json j;
    j["condition"] = r.condition;
    j["spread_bound"] = r.spread_bound;
    j["fitted_c"] = r.fitted_c;
    j["spread"] = r.spread;
    j["pass"] = r.pass;
    j["converged"] = r.converged;
    j["notes"] = r.notes;
    j["entries"] = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["cube"] = e.cube;
        je["d_q"] = e.d_q;
        je["delta"] = e.delta;
        je["statistic"] = e.statistic;
        je["tail_fraction"] = e.tail_fraction;
        j["entries"].push_back(std::move(je));
    }
    return j;
}

void emit(const AppConfig& cfg, const std::string& subcommand,
          const json& result, const std::string& out) {
    json j;
    j["schema"] = 1;
    j["timestamp"] = static_cast<long long>(std::time(nullptr));
    j["subcommand"] = subcommand;
    j["config"] = cfg.echo();
    j["result"] = result;
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) std::cout << text;
    else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open output file: " + out);
        f << text;
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

int run_verify_one(const AppConfig& cfg, const std::string& cond, json& out) {
    const VerifyOptions opt = verify_options(cfg);
    const CoveringPtr cov = make_covering(cfg);
    const std::vector<Cell> cells = cov->cells_in(window_box(cfg, cov->dim()));
    std::vector<double> deltas = cfg.deltas;

    ConditionReport rep;
    if (cond == "A0") {
        rep = check_A0(make_kernel(cfg), *cov, cells, opt);
    } else if (cond == "A1") {
        if (deltas.empty())
            deltas = {-cfg.gamma / 2.0, 0.0, cfg.gamma / 2.0};
        rep = check_A1(make_kernel(cfg), *cov, deltas, cells, opt);
    } else if (cond == "A1p") {
        rep = check_A1(make_kernel(cfg), *cov, {0.0}, cells, opt);
        rep.condition = "A1p";
    } else if (cond == "A2") {
        if (deltas.empty()) deltas = {0.0, cfg.gamma / 2.0};
        rep = check_A2(make_kernel(cfg), *cov, deltas, cells, opt);
    } else if (cond == "A2p") {
        rep = check_A2(make_kernel(cfg), *cov, {0.0}, cells, opt);
        rep.condition = "A2p";
    } else if (cond == "a3a4") {
        rep = check_a3_a4(make_kernel(cfg), *cov, cells, opt);
    } else if (cond == "lemma24") {
        rep = check_lemma_integrable(NuVector::classical(cfg.nu), *cov,
                                     cfg.lemma_delta, opt.envelope_c, cells,
                                     opt);
    } else if (cond == "supT") {
        if (cov->dim() != 1)
            throw std::domain_error("supT runs per axis: use a 1-d covering");
        rep = check_sup_t_bound(cfg.nu[0], cfg.sup_t_eps, *cov, cells, opt);
    } else if (cond == "prop42") {
        if (cfg.nu.size() <= cfg.d1)
            throw std::domain_error("prop42 needs axes beyond d1");
        KernelSpec s1, s2;
        for (std::size_t i = 0; i < cfg.d1; ++i)
            s1.axes.push_back({cfg.nu[i], KernelBranch::ClassicalW});
        for (std::size_t i = cfg.d1; i < cfg.nu.size(); ++i)
            s2.axes.push_back({cfg.nu[i], KernelBranch::ConjugatedK});
        const auto pr = check_prop_locnonloc(
            s1, s2, dyadic_covering_1d(), cfg.d1, cfg.gamma,
            window_box(cfg, cfg.nu.size()), opt);
        out["A0"] = report_json(pr.a0);
        out["A1"] = report_json(pr.a1);
        out["A2"] = report_json(pr.a2);
        if (!pr.a0.converged || !pr.a1.converged || !pr.a2.converged) return 3;
        return pr.pass() ? 0 : 2;
    } else {
        throw std::domain_error("unknown condition: " + cond);
    }
    out[cond] = report_json(rep);
    if (!rep.converged) return 3;
    return rep.pass ? 0 : 2;
}

int run_verify(const AppConfig& cfg, const std::string& cond,
               const std::string& out_path) {
    json result;
    int rc = 0;
    if (cond == "all") {
        for (const char* c : {"A0", "A1", "A2", "a3a4", "lemma24"}) {
            AppConfig sub = cfg;
            if (std::string(c) == "lemma24") {
                // envelope lemma needs a classical measure
                sub.flavors.assign(sub.nu.size(), "classical");
                for (double& n : sub.nu) n = std::abs(n) > 0 ? std::abs(n) : 0.5;
            }
            rc = std::max(rc, run_verify_one(sub, c, result));
        }
        if (cfg.nu.size() == 1)
            rc = std::max(rc, run_verify_one(cfg, "supT", result));
    } else {
        rc = run_verify_one(cfg, cond, result);
    }
    result["exit_code"] = rc;
    emit(cfg, "verify", result, out_path);
    return rc;
}

int run_report(const std::string& in_path, const std::string& out_path) {
    std::ifstream f(in_path);
    if (!f) throw std::runtime_error("cannot open report: " + in_path);
    json j = json::parse(f);
    if (!j.contains("schema") || j["schema"] != 1)
        throw std::domain_error("report: unsupported schema");

    std::ostringstream md, csv;
    md << "# Verification report\n\n";
    csv << "condition,cube,d_q,delta,statistic\n";
    if (j.contains("result")) {
        for (auto& [name, r] : j["result"].items()) {
            if (!r.is_object() || !r.contains("entries")) continue;
            md << "## " << name << "\n\n";
            md << "pass: " << (r.value("pass", false) ? "yes" : "no")
               << "  fitted C: " << fmt(r.value("fitted_c", 0.0))
               << "  spread: " << fmt(r.value("spread", 0.0)) << "\n\n";
            md << "| cube | d_Q | delta | statistic |\n";
            md << "| --- | --- | --- | --- |\n";
            for (const auto& e : r["entries"]) {
                std::ostringstream cube;
                for (const auto& k : e["cube"]) cube << k.get<long long>() << " ";
                md << "| " << cube.str() << "| " << fmt(e["d_q"].get<double>())
                   << " | " << fmt(e["delta"].get<double>()) << " | "
                   << fmt(e["statistic"].get<double>()) << " |\n";
                csv << csv_field(name) << "," << csv_field(cube.str()) << ","
                    << fmt(e["d_q"].get<double>()) << ","
                    << fmt(e["delta"].get<double>()) << ","
                    << fmt(e["statistic"].get<double>()) << "\n";
            }
            md << "\n";
        }
    }
    std::cout << md.str();
    if (!out_path.empty()) {
        std::ofstream o(out_path);
        if (!o) throw std::runtime_error("cannot open output: " + out_path);
        o << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bessel heat semigroup Hardy space toolkit"};
    app.require_subcommand(1);

    AppConfig cfg;
    std::string config_path, out_path, condition = "all", report_in;
    double t_arg = 1.0;
    std::vector<double> x_arg, y_arg;
    double a_arg = 1.0, b_arg = 2.0, r_arg = 0.5;
    double tau_arg = 0.5, x_lo = 0.1, x_hi = 10.0;
    int n_arg = 50;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--nu", cfg.nu, "per-axis order parameters");
    app.add_option("--flavors", cfg.flavors, "per-axis measure flavor");
    app.add_option("--kernels", cfg.kernels, "per-axis kernel branch");
    app.add_option("--covering", cfg.covering, "covering family");
    app.add_option("--window", [&cfg](const std::vector<std::string>& v) {
        // "lo:hi" dyadic level range
        const auto c = v[0].find(':');
        if (c == std::string::npos) return false;
        cfg.level_lo = std::stoi(v[0].substr(0, c));
        cfg.level_hi = std::stoi(v[0].substr(c + 1));
        return true;
    }, "dyadic level range lo:hi");
    app.add_option("--gamma", cfg.gamma, "decay exponent");
    app.add_option("--delta", cfg.deltas, "delta list");
    app.add_option("--kappa", cfg.kappa, "enlargement factor");
    app.add_option("--depth", cfg.depth, "decomposition depth");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--threads", cfg.threads, "worker threads");
    app.add_option("--out", out_path, "output path");

    auto* sc_specfun = app.add_subcommand("specfun", "Bessel function profile");
    sc_specfun->add_option("--tau", tau_arg);
    sc_specfun->add_option("--lo", x_lo);
    sc_specfun->add_option("--hi", x_hi);
    sc_specfun->add_option("--n", n_arg);

    auto* sc_measure = app.add_subcommand("measure", "measure queries");
    sc_measure->add_option("--a", a_arg);
    sc_measure->add_option("--b", b_arg);
    sc_measure->add_option("--x", x_arg);
    sc_measure->add_option("--r", r_arg);

    auto* sc_kernel = app.add_subcommand("kernel", "kernel evaluation");
    sc_kernel->add_option("--t", t_arg);
    sc_kernel->add_option("--x", x_arg);
    sc_kernel->add_option("--y", y_arg);

    auto* sc_covering = app.add_subcommand("covering", "covering validation");
    sc_covering->add_option("--points", cfg.n_points);

    auto* sc_atoms = app.add_subcommand("atoms", "atomic decomposition");
    sc_atoms->add_option("--function", cfg.function);
    sc_atoms->add_option("--center", cfg.center);
    sc_atoms->add_option("--width", cfg.width);
    sc_atoms->add_option("--grid-n", cfg.grid_n);

    auto* sc_h1 = app.add_subcommand("h1norm", "H1 norm estimate");
    sc_h1->add_option("--function", cfg.function);
    sc_h1->add_option("--center", cfg.center);
    sc_h1->add_option("--width", cfg.width);
    sc_h1->add_option("--grid-n", cfg.grid_n);

    auto* sc_verify = app.add_subcommand("verify", "condition battery");
    sc_verify->add_option("condition", condition,
                          "A0|A1|A1p|A2|A2p|a3a4|lemma24|supT|prop42|all");

    auto* sc_report = app.add_subcommand("report", "render a report");
    sc_report->add_option("input", report_in)->required();

    // let global flags appear after the subcommand too
    for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw std::runtime_error("cannot open config: " + config_path);
            AppConfig from_file;
            from_file.load(json::parse(f));
            // file values as defaults, explicitly set flags win
            json flags = cfg.echo();
            json base = from_file.echo();
            auto overlay = [&](const char* key, const CLI::Option* o) {
                if (o && o->count()) base[key] = flags[key];
            };
            overlay("nu", app.get_option("--nu"));
            overlay("flavors", app.get_option("--flavors"));
            overlay("kernels", app.get_option("--kernels"));
            overlay("covering", app.get_option("--covering"));
            overlay("gamma", app.get_option("--gamma"));
            overlay("deltas", app.get_option("--delta"));
            overlay("kappa", app.get_option("--kappa"));
            overlay("depth", app.get_option("--depth"));
            overlay("seed", app.get_option("--seed"));
            overlay("threads", app.get_option("--threads"));
            if (app.get_option("--window")->count()) {
                base["level_lo"] = cfg.level_lo;
                base["level_hi"] = cfg.level_hi;
            }
            AppConfig out;
            out.load(base);
            cfg = out;
        }
        if (cfg.threads > 0) {
            const std::string v = std::to_string(cfg.threads);
            setenv("BESSEL_HARDY_THREADS", v.c_str(), 1);
        }

        if (sc_specfun->parsed()) {
            std::ostringstream csv;
            csv << "x,bessel_i,bessel_i_scaled,log_bessel_i_scaled\n";
            for (int i = 0; i < n_arg; ++i) {
                const double x =
                    x_lo * std::pow(x_hi / x_lo, i / double(n_arg - 1));
                csv << fmt(x) << "," << fmt(bessel_i(tau_arg, x)) << ","
                    << fmt(bessel_i_scaled(tau_arg, x)) << ","
                    << fmt(log_bessel_i_scaled(tau_arg, x)) << "\n";
            }
            if (out_path.empty()) std::cout << csv.str();
            else std::ofstream(out_path) << csv.str();
            return 0;
        }
        if (sc_measure->parsed()) {
            const NuVector nv = make_nu(cfg);
            json result;
            result["interval"] =
                measure_interval(nv.axes[0].effective(), {a_arg, b_arg});
            if (!x_arg.empty()) {
                result["ball_exact_axis0"] =
                    measure_ball_exact(nv.axes[0].effective(), x_arg[0], r_arg);
                if (x_arg.size() == nv.dim())
                    result["ball_comparable"] =
                        measure_ball_multidim_comparable(nv, x_arg, r_arg);
            }
            emit(cfg, "measure", result, out_path);
            return 0;
        }
        if (sc_kernel->parsed()) {
            const KernelSpec spec = make_kernel(cfg);
            if (x_arg.size() != spec.dim() || y_arg.size() != spec.dim())
                throw std::domain_error("kernel: --x/--y must match --nu size");
            json result;
            result["t"] = t_arg;
            result["value"] = kernel_product(spec, t_arg, x_arg, y_arg);
            emit(cfg, "kernel", result, out_path);
            return 0;
        }
        if (sc_covering->parsed()) {
            const CoveringPtr cov = make_covering(cfg);
            const Cuboid window = window_box(cfg, cov->dim());
            const CoveringReport rep =
                check_covering(*cov, window, cfg.n_points, cfg.seed);
            json result;
            result["cells_checked"] = rep.cells_checked;
            result["c1"] = rep.c1;
            result["c2"] = rep.c2;
            result["max_overlap"] = rep.max_overlap;
            result["max_neighbors"] = rep.max_neighbors;
            result["partition_error"] = rep.partition_error;
            result["violations"] = rep.violations;
            result["valid"] = rep.valid();
            emit(cfg, "covering", result, out_path);
            return rep.valid() ? 0 : 2;
        }
        if (sc_atoms->parsed()) {
            const GridFunction f = make_test_function(cfg);
            const CoveringPtr cov = make_covering(cfg);
            const AtomicDecomposition dec =
                localize_and_decompose(f, *cov, cfg.depth);
            double max_err = 0.0;
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (int k = 0; k < 200; ++k) {
                Point x(f.dim());
                for (std::size_t i = 0; i < f.dim(); ++i)
                    x[i] = f.domain.lower(i) + u(rng) * 2.0 * f.domain.radii[i];
                max_err = std::max(max_err,
                                   std::abs(dec.evaluate(x) - f.value_at(x)));
            }
            int invalid = 0;
            for (const auto& [lambda, atom] : dec.terms)
                if (!validate_atom(atom, cov->kappa()).valid()) ++invalid;
            json result;
            result["n_atoms"] = dec.terms.size();
            result["total_l1"] = dec.total_l1();
            result["max_pointwise_error"] = max_err;
            result["invalid_atoms"] = invalid;
            emit(cfg, "atoms", result, out_path);
            return invalid == 0 ? 0 : 2;
        }
        if (sc_h1->parsed()) {
            const GridFunction f = make_test_function(cfg);
            const H1Estimate est = h1_norm_estimate(f);
            json result;
            result["l1"] = f.l1_mu();
            result["direct"] = est.direct.value;
            result["direct_tail"] = est.direct.tail;
            result["direct_converged"] = est.direct.converged;
            if (est.has_conjugated) {
                result["conjugated"] = est.conjugated.value;
                result["conjugated_tail"] = est.conjugated.tail;
                result["conjugated_converged"] = est.conjugated.converged;
            }
            emit(cfg, "h1norm", result, out_path);
            if (!est.direct.converged) return 3;
            if (est.has_conjugated && !est.conjugated.converged) return 3;
            return 0;
        }
        if (sc_verify->parsed()) return run_verify(cfg, condition, out_path);
        if (sc_report->parsed()) return run_report(report_in, out_path);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
