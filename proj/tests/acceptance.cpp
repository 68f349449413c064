// End-to-end acceptance battery.  Each numbered check prints exactly one
// PASS/FAIL line; the process exits nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bessel_hardy/atoms.hpp"
#include "bessel_hardy/covering.hpp"
#include "bessel_hardy/covering_check.hpp"
#include "bessel_hardy/kernel.hpp"
#include "bessel_hardy/maximal.hpp"
#include "bessel_hardy/measure.hpp"
#include "bessel_hardy/quadrature.hpp"
#include "bessel_hardy/specfun.hpp"
#include "bessel_hardy/verify.hpp"

using namespace bessel_hardy;

namespace {

int g_failures = 0;

void run_check(int id, const std::string& name, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > limit_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    std::printf("%s %2d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), secs, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

long double series_oracle(double tau, double x) {
    const long double h = static_cast<long double>(x) / 2.0L;
    long double sum = 0.0L;
    for (int k = 0; k < 40; ++k) {
        const long double lg =
            std::lgamma(static_cast<long double>(k) + 1.0L) +
            std::lgamma(static_cast<long double>(k) + tau + 1.0L);
        sum += std::exp((2.0L * k + tau) * std::log(h) - lg);
    }
    return sum;
}

bool check_specfun(std::string& detail) {
    double worst = 0.0;
    for (double tau : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 5.0}) {
        for (int i = 0; i <= 80; ++i) {
            const double x = 1e-3 * std::pow(30.0 / 1e-3, i / 80.0);
            const long double want = series_oracle(tau, x);
            worst = std::max(worst, static_cast<double>(std::abs(
                                        bessel_i(tau, x) - want) /
                                    std::abs(want)));
        }
    }
    double worst_rec = 0.0;
    for (double tau : {0.5, 1.0, 2.5, 5.0})
        for (double x : {0.5, 1.0, 5.0, 20.0, 100.0, 600.0}) {
            const double lhs =
                bessel_i_scaled(tau - 1.0, x) - bessel_i_scaled(tau + 1.0, x);
            const double rhs = 2.0 * tau / x * bessel_i_scaled(tau, x);
            worst_rec =
                std::max(worst_rec, std::abs(lhs - rhs) /
                                        std::abs(bessel_i_scaled(tau - 1.0, x)));
        }
    std::ostringstream os;
    os << "series err " << worst << ", recurrence err " << worst_rec;
    detail = os.str();
    return worst < 1e-10 && worst_rec < 1e-8;
}

bool check_measure(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (double nu : {-2.0, -1.0, -0.5, 0.0, 1.0}) {
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 40; ++i) {
            const double x = 1e-2 * std::pow(1e4, i / 39.0);
            for (int j = 0; j < 40; ++j) {
                // honor the comparability hypotheses: r < x/2 when the
                // measure is not locally finite at the origin
                const double rmax = nu <= -1.0 ? 0.49 * x : 1e2;
                const double r = 1e-3 * x * std::pow(rmax / (1e-3 * x), j / 39.0);
                const double ratio = measure_ball_exact(nu, x, r) /
                                     measure_ball_comparable(nu, x, r);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        os << "nu=" << nu << ":[" << lo << "," << hi << "] ";
        ok = ok && lo > 1e-4 && hi < 1e4;
    }
    const double witness = measure_ball_exact(-2.0, 1.0 + 1e-3, 2.0) /
                           measure_ball_exact(-2.0, 1.0 + 1e-3, 1.0);
    os << "witness " << witness;
    detail = os.str();
    return ok && witness > 100.0;
}

bool check_kernels(std::string& detail) {
    double worst_cons = 0.0;
    for (double nu : {-0.5, 0.5, 2.0})
        for (double t : {0.01, 1.0, 100.0})
            for (double x : {0.1, 1.0, 10.0}) {
                const double hi = x + 14.0 * std::sqrt(t);
                const double mass = integrate_panels(
                    [&](double y) {
                        return w_classical_1d(nu, t, x, y) *
                               std::pow(y, 2.0 * nu + 1.0);
                    },
                    semigroup_breaks(x, t, 1e-12 * hi, hi, 14, 10), 16);
                worst_cons = std::max(worst_cons, std::abs(mass - 1.0));
            }

    double worst_ck = 0.0;
    for (double nu : {-0.5, 0.5, 2.0})
        for (auto [t, s] : {std::pair{0.1, 0.2}, {1.0, 1.0}, {0.05, 2.0}})
            for (auto [x, y] : {std::pair{0.5, 0.8}, {1.0, 3.0}, {6.0, 6.5}}) {
                const double hi = std::max(x, y) + 14.0 * std::sqrt(t + s);
                auto b1 = semigroup_breaks(x, std::min(t, s) / 4.0, 1e-12 * hi,
                                           hi, 16, 10);
                auto b2 = semigroup_breaks(y, std::min(t, s) / 4.0, 1e-12 * hi,
                                           hi, 16, 10);
                b1.insert(b1.end(), b2.begin(), b2.end());
                std::sort(b1.begin(), b1.end());
                b1.erase(std::unique(b1.begin(), b1.end()), b1.end());
                const double composed = integrate_panels(
                    [&](double z) {
                        return w_classical_1d(nu, t, x, z) *
                               w_classical_1d(nu, s, z, y) *
                               std::pow(z, 2.0 * nu + 1.0);
                    },
                    b1, 16);
                const double want = w_classical_1d(nu, t + s, x, y);
                worst_ck =
                    std::max(worst_ck, std::abs(composed - want) / want);
            }

    double worst_conj = 0.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.05, 30.0);
    std::uniform_real_distribution<double> un(0.1, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const double nu = un(rng), t = u(rng), x = u(rng), y = u(rng);
        const double want =
            std::pow(y / x, 2.0 * nu) * w_classical_1d(nu, t, x, y);
        const double got = k_conjugated_1d(nu, t, x, y);
        if (want > 0.0)
            worst_conj = std::max(worst_conj, std::abs(got - want) / want);
    }
    std::ostringstream os;
    os << "conservation " << worst_cons << ", composition " << worst_ck
       << ", conjugation " << worst_conj;
    detail = os.str();
    return worst_cons < 1e-6 && worst_ck < 1e-5 && worst_conj < 1e-12;
}

bool check_coverings(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    const auto window = [](std::size_t d) {
        return Cuboid::from_corners(Point(d, std::ldexp(1.0, -4)),
                                    Point(d, std::ldexp(1.0, 5)));
    };
    struct Entry {
        const char* name;
        CoveringPtr cov;
        std::size_t d;
    };
    const Entry entries[] = {
        {"dyadic", dyadic_covering_1d(), 1},
        {"box2", box_product(dyadic_covering_1d(), dyadic_covering_1d()), 2},
        {"box3",
         box_product(box_product(dyadic_covering_1d(), dyadic_covering_1d()),
                     dyadic_covering_1d()),
         3},
        {"qb", qb_covering(1, 1), 2},
    };
    for (const auto& e : entries) {
        const Cuboid win = window(e.d);
        std::vector<Cell> cells;
        if (e.d < 3) {
            cells = e.cov->cells_in(win);
        } else {
            // the 3-fold product re-tiles into millions of cells over this
            // window; sample cells through locate() instead of enumerating
            std::mt19937_64 rng(7);
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            std::map<CellKey, Cell> seen;
            for (int i = 0; i < 4000; ++i) {
                Point x(e.d);
                for (std::size_t ax = 0; ax < e.d; ++ax)
                    x[ax] = win.lower(ax) *
                            std::pow(win.upper(ax) / win.lower(ax), u01(rng));
                Cell c = e.cov->locate(x);
                seen.emplace(c.key, std::move(c));
            }
            for (auto& [k, c] : seen) cells.push_back(std::move(c));
        }
        const auto rep = check_covering(*e.cov, win, cells, 10000, 42);
        os << e.name << "(cells " << rep.cells_checked << ", overlap "
           << rep.max_overlap << ", psi err " << rep.partition_error << ") ";
        if (!rep.valid()) {
            ok = false;
            os << "violations: " << rep.violations.front() << " ";
        }
        ok = ok && rep.partition_error < 1e-12;
    }
    detail = os.str();
    return ok;
}

bool check_atoms(std::string& detail) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.2, 3.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = rep % 2 ? 2 : 1;
        const double a = pos(rng), w = pos(rng);
        GridFunction f(Cuboid::from_corners(Point(d, a), Point(d, a + w)),
                       std::vector<int>(d, d == 1 ? 16 : 8),
                       d == 1 ? NuVector::classical({0.5})
                              : NuVector::classical({0.5, 1.0}));
        for (auto& v : f.values) v = u(rng);

        auto [lambda0, g] = mean_split(f, f.domain);
        if (std::abs(lambda0) > f.l1_mu() + 1e-12) {
            detail = "mean-split: |lambda0| exceeds ||f||_1";
            return false;
        }
        if (std::abs(g.integral_mu()) > 1e-11 * std::max(f.l1_mu(), 1.0)) {
            detail = "mean-split: remainder not mean zero";
            return false;
        }
        auto dec = haar_decompose(g);
        const double scale = std::max(g.sup_norm(), 1e-300);
        for (std::size_t c = 0; c < g.size(); ++c) {
            const Point x = g.cell_center(c);
            worst = std::max(worst,
                             std::abs(dec.evaluate(x) - g.values[c]) / scale);
        }
        for (const auto& [lambda, atom] : dec.terms) {
            const auto cert = validate_atom(atom, 17.0 / 16.0);
            if (!cert.valid()) {
                detail = "atom certificate: " + cert.violations.front();
                return false;
            }
        }
    }
    std::ostringstream os;
    os << "reconstruction err " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

bool check_atom_norms(std::string& detail) {
    const double nu = 0.5;
    const NuVector nv = NuVector::classical({nu});
    QuadratureSpec quad;
    quad.gauss_points = 8;
    quad.t_per_decade = 8;
    double lo = 1e300, hi = 0.0;
    bool all_converged = true;
    for (int n = -2; n <= 2; ++n) {
        const double tau = std::ldexp(1.0, n);
        for (double shift : {1.0, 1.25}) {
            const Cuboid q =
                Cuboid::from_corners({shift * tau}, {(shift + 1.0) * tau});
            const double mu_q = measure_cuboid(nv, q);

            GridFunction local(q, {16}, nv);
            for (auto& v : local.values) v = 1.0 / mu_q;

            GridFunction canc(q, {16}, nv);
            double mu_l = 0.0, mu_r = 0.0;
            for (std::size_t c = 0; c < canc.size(); ++c)
                (c < 8 ? mu_l : mu_r) += canc.cell_measure(c);
            const double v1 = 1.0 / mu_q;
            const double v2 = -v1 * mu_l / mu_r;
            for (std::size_t c = 0; c < canc.size(); ++c)
                canc.values[c] = c < 8 ? v1 : v2;

            for (const GridFunction* f : {&local, &canc}) {
                const auto r = maximal_l1_norm(direct_route(nv), *f, quad,
                                               tau * tau);
                all_converged = all_converged && r.converged;
                lo = std::min(lo, r.value);
                hi = std::max(hi, r.value);
            }
        }
    }
    std::ostringstream os;
    os << "norms in [" << lo << ", " << hi << "]";
    detail = os.str();
    return all_converged && hi <= 10.0 * lo;
}

bool check_condition_battery(std::string& detail) {
    auto cov = dyadic_covering_1d();
    const auto cells = cov->cells_in(
        Cuboid::from_corners({std::ldexp(1.0, -3)}, {std::ldexp(1.0, 4)}));
    VerifyOptions opt;
    opt.t_per_decade = 5;
    opt.gauss_points = 6;
    opt.mid_panels = 20;
    opt.tail_octaves = 40;
    std::ostringstream os;
    bool ok = true;
    for (double nu : {0.5, 1.0, 2.0}) {
        const double gamma = std::min(0.3, nu / 2.0);
        const KernelSpec spec = KernelSpec::conjugated_1d(nu);
        const auto a0 = check_A0(spec, *cov, cells, opt);
        const auto a1 = check_A1(spec, *cov,
                                 {-gamma / 2.0, 0.0, gamma / 2.0}, cells, opt);
        const auto a2 = check_A2(spec, *cov, {0.0, gamma / 2.0}, cells, opt);
        os << "nu=" << nu << " spreads A0 " << a0.spread << " A1 " << a1.spread
           << " A2 " << a2.spread << "; ";
        ok = ok && a0.pass && a1.pass && a2.pass;
    }
    detail = os.str();
    return ok;
}

bool check_route_equivalence(std::string& detail) {
    NuVector nv({{0.5, AxisFlavor::Classical}, {1.0, AxisFlavor::Exotic}});
    QuadratureSpec quad;
    quad.gauss_points = 8;
    quad.t_min_factor = 1e-4;
    quad.t_max_factor = 1e4;
    quad.t_per_decade = 6;
    std::ostringstream os;
    bool ok = true;
    for (int which = 0; which < 5; ++which) {
        GridFunction f(Cuboid::from_corners({1.0, 1.0}, {2.0, 2.5}), {8, 8},
                       nv);
        for (std::size_t c = 0; c < f.size(); ++c) {
            const Point p = f.cell_center(c);
            switch (which) {
                case 0: f.values[c] = 1.0; break;
                case 1:
                    f.values[c] = std::exp(-4.0 * ((p[0] - 1.5) * (p[0] - 1.5) +
                                                   (p[1] - 1.7) * (p[1] - 1.7)));
                    break;
                case 2: f.values[c] = std::sin(5.0 * p[0]) + 1.5; break;
                case 3: f.values[c] = p[0] * p[1]; break;
                default: f.values[c] = 1.0 / (p[0] + p[1]); break;
            }
        }
        const auto nd = maximal_l1_norm(direct_route(nv), f, quad);
        const auto nc = maximal_l1_norm(conjugated_route(nv), f, quad);
        const double err = nd.tail + nc.tail +
                           1e-6 * std::max(nd.value, nc.value);
        os << "f" << which << " |d-c|=" << std::abs(nd.value - nc.value)
           << " err=" << err << "; ";
        ok = ok && nd.converged && nc.converged &&
             std::abs(nd.value - nc.value) <= 3.0 * err;
    }

    // the conjugation factor of the atom transport, rescaled by the dyadic
    // level, must trace out the same interval at every level
    const NuVector atom_nu = NuVector::classical({0.5, 1.0});
    double ref_lo = 0.0, ref_hi = 0.0;
    for (int n = -4; n <= 4; ++n) {
        const double s = std::ldexp(1.0, n);
        GridFunction g(Cuboid::from_corners({1.0, s}, {2.0, 2.0 * s}), {4, 4},
                       atom_nu);
        for (std::size_t c = 0; c < g.size(); ++c)
            g.values[c] = (c % 2 ? 1.0 : -1.0);
        const double mean = g.integral_mu() / measure_cuboid(atom_nu, g.domain);
        for (auto& v : g.values) v -= mean;
        const double m = g.sup_norm() * measure_cuboid(atom_nu, g.domain);
        for (auto& v : g.values) v /= m;
        const auto ca = conjugate_atom(Atom::cancellative(g.domain, g), 1);
        // the measure-ratio normalization makes the factor scale-invariant
        const double flo = ca.factor_min, fhi = ca.factor_max;
        if (n == -4) {
            ref_lo = flo;
            ref_hi = fhi;
        }
        ok = ok && std::abs(flo - ref_lo) < 1e-9 * ref_lo &&
             std::abs(fhi - ref_hi) < 1e-9 * ref_hi &&
             ca.integral_residual < 1e-12;
    }
    os << "factor interval [" << ref_lo << ", " << ref_hi << "]";
    detail = os.str();
    return ok && ref_hi / ref_lo < 20.0;
}

bool check_envelope_lemma(std::string& detail) {
    std::ostringstream os;
    bool ok = true;

    VerifyOptions opt1;
    opt1.t_per_decade = 5;
    opt1.gauss_points = 5;
    opt1.mid_panels = 16;
    opt1.tail_octaves = 30;
    auto cov1 = dyadic_covering_1d();
    for (double nu : {0.0, -0.5}) {
        const auto cells = cov1->cells_in(
            Cuboid::from_corners({std::ldexp(1.0, -3)}, {std::ldexp(1.0, 4)}));
        const auto rep = check_lemma_integrable(NuVector::classical({nu}),
                                                *cov1, 0.2, 5.0, cells, opt1);
        os << "nu=" << nu << " spread " << rep.spread << "; ";
        ok = ok && rep.pass;
    }

    VerifyOptions opt2;
    opt2.t_per_decade = 4;
    opt2.t_span_decades = 7.0;
    opt2.gauss_points = 4;
    opt2.mid_panels = 12;
    opt2.tail_octaves = 20;
    opt2.n_random_y = 2;
    auto cov2 = box_product(dyadic_covering_1d(), dyadic_covering_1d());
    auto cells2 = cov2->cells_in(Cuboid::from_corners(
        {std::ldexp(1.0, -1), std::ldexp(1.0, -1)},
        {std::ldexp(1.0, 2), std::ldexp(1.0, 2)}));
    if (cells2.size() > 6) {
        std::vector<Cell> pick;
        for (std::size_t i = 0; i < cells2.size();
             i += (cells2.size() + 5) / 6)
            pick.push_back(cells2[i]);
        cells2 = pick;
    }
    const auto rep2 = check_lemma_integrable(NuVector::classical({0.0, 1.0}),
                                             *cov2, 0.2, 5.0, cells2, opt2);
    os << "nu=(0,1) spread " << rep2.spread;
    ok = ok && rep2.pass;
    detail = os.str();
    return ok;
}

bool check_determinism(const std::string& cli, std::string& detail) {
    namespace fs = std::filesystem;
    if (cli.empty() || !fs::exists(cli)) {
        detail = "cli binary not found";
        return false;
    }
    const fs::path dir = fs::temp_directory_path() / "bh_acceptance";
    fs::create_directories(dir);
    const fs::path cfg_path = dir / "config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"nu":[1.0],"kernels":["conjugated"],"covering":"dyadic",
                   "level_lo":-1,"level_hi":1,"seed":7,"gamma":0.25,
                   "t_per_decade":4,"gauss_points":4,"mid_panels":12,
                   "tail_octaves":24,"n_random_y":3,"lemma_delta":0.2})";
    }
    auto run_once = [&](const fs::path& out) {
        const std::string cmd = cli + " --config " + cfg_path.string() +
                                " --out " + out.string() +
                                " verify all > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const fs::path o1 = dir / "r1.json", o2 = dir / "r2.json";
    const int rc1 = run_once(o1);
    const int rc2 = run_once(o2);
    std::ifstream f1(o1), f2(o2);
    if (!f1 || !f2) {
        detail = "verify all produced no output";
        return false;
    }
    auto j1 = nlohmann::json::parse(f1);
    auto j2 = nlohmann::json::parse(f2);
    j1.erase("timestamp");
    j2.erase("timestamp");
    std::ostringstream os;
    os << "exit codes " << rc1 << "/" << rc2;
    detail = os.str();
    return rc1 == 0 && rc2 == 0 && j1.dump() == j2.dump();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    run_check(1, "Bessel function accuracy", 5.0, check_specfun);
    run_check(2, "ball measure comparability", 5.0, check_measure);
    run_check(3, "kernel laws", 60.0, check_kernels);
    run_check(4, "covering axioms", 30.0, check_coverings);
    run_check(5, "atomic decompositions", 30.0, check_atoms);
    run_check(6, "uniform atom maximal norms", 300.0, check_atom_norms);
    run_check(7, "condition battery for the conjugated kernel", 600.0,
              check_condition_battery);
    run_check(8, "route equivalence and conjugation factor", 600.0,
              check_route_equivalence);
    run_check(9, "envelope integrability lemma", 300.0, check_envelope_lemma);
    run_check(10, "deterministic verification reports", 300.0,
              [&](std::string& d) { return check_determinism(cli, d); });

    return g_failures == 0 ? 0 : 1;
}
