#pragma once

// Numerical checkers for the integral conditions the Hardy-space
// isomorphism rests on: the Gaussian envelope bound, the weighted
// outside/inside integrals with t^{+-delta}, their kernel-difference
// variants, the partition-commutator sum, the envelope integrability
// lemma, the pointwise sup-t bound, and the classical x (local) product
// composition.
//
// Every checker normalizes its integral by the predicted power of d_Q and
// reports the statistic per cuboid; a condition "passes" when the max/min
// spread across the window stays below a configured bound, separately for
// each delta.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bessel_hardy/covering.hpp"
#include "bessel_hardy/kernel.hpp"
#include "bessel_hardy/measure.hpp"
#include "bessel_hardy/quadrature.hpp"

namespace bessel_hardy {

struct VerifyOptions {
    int t_per_decade = 6;
    double t_span_decades = 8.0;   // t in [1e-span, 1e+span] * d_Q^2
    double envelope_c = 5.0;       // Gaussian constant used for (A0)
    int n_random_y = 7;
    int gauss_points = 6;
    int mid_panels = 24;           // per axis across a bounded segment
    int tail_octaves = 40;         // reach of unbounded outer segments
    int panels_per_octave = 2;
    std::uint64_t seed = 1;
    double spread_bound = 10.0;
    double eps_tail = 1e-3;
};

struct ConditionEntry {
    CellKey cube;
    double d_q = 0.0;
    double delta = 0.0;
    double statistic = 0.0;
    double tail_fraction = 0.0;
};

struct ConditionReport {
    std::string condition;
    double spread_bound = 10.0;
    std::vector<ConditionEntry> entries;
    std::vector<std::string> notes;
    double fitted_c = 0.0;   // max statistic over all entries
    double spread = 0.0;     // worst max/min ratio within a delta group
    bool pass = false;
    bool converged = true;   // all tails certified

    void finalize(double eps_tail) {
        fitted_c = 0.0;
        spread = 0.0;
        std::vector<double> deltas;
        for (const auto& e : entries) {
            fitted_c = std::max(fitted_c, e.statistic);
            if (e.tail_fraction > eps_tail) converged = false;
            bool seen = false;
            for (double d : deltas) seen = seen || d == e.delta;
            if (!seen) deltas.push_back(e.delta);
        }
        for (double d : deltas) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (const auto& e : entries)
                if (e.delta == d) {
                    lo = std::min(lo, e.statistic);
                    hi = std::max(hi, e.statistic);
                }
            if (hi == 0.0) spread = std::max(spread, 1.0);  // identically zero
            else if (lo > 0.0) spread = std::max(spread, hi / lo);
            else spread = std::numeric_limits<double>::infinity();
        }
        pass = converged && !entries.empty() && spread <= spread_bound;
    }
};

namespace detail {

// Deterministic corner/center tensor samples of a box plus uniform draws.
inline std::vector<Point> sample_points(const Cuboid& box, int n_random,
                                        std::mt19937_64& rng) {
    std::vector<Point> pts;
    const std::size_t d = box.dim();
    const int reps = 3;  // lower, center, upper per axis
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= reps;
    for (std::size_t f = 0; f < total; ++f) {
        Point p(d);
        std::size_t rem = f;
        for (std::size_t i = 0; i < d; ++i) {
            const int c = static_cast<int>(rem % reps);
            rem /= reps;
            p[i] = c == 0 ? box.lower(i) : c == 1 ? box.center[i] : box.upper(i);
            if (p[i] <= 0.0) p[i] = 1e-3 * box.radii[i];
        }
        pts.push_back(std::move(p));
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < n_random; ++k) {
        Point p(d);
        for (std::size_t i = 0; i < d; ++i)
            p[i] = box.lower(i) + u(rng) * 2.0 * box.radii[i];
        pts.push_back(std::move(p));
    }
    return pts;
}

inline std::vector<double> condition_t_grid(double d_q,
                                            const VerifyOptions& opt,
                                            double lo_factor = -1.0,
                                            double hi_factor = -1.0) {
    const double span = opt.t_span_decades;
    const double lo = (lo_factor > 0.0 ? lo_factor : std::pow(10.0, -span));
    const double hi = (hi_factor > 0.0 ? hi_factor : std::pow(10.0, span));
    return log_t_grid(lo * d_q * d_q, hi * d_q * d_q, opt.t_per_decade);
}

struct SegmentMesh {
    std::vector<double> nodes, weights;  // weights include the measure weight
    std::vector<char> tail;              // outermost-band marker
};

enum class Segment { Left, Mid, Right };

// Mesh of one axis segment relative to [lo, hi] (the per-axis Q** range),
// weighted by x^{w}.
inline SegmentMesh segment_mesh(Segment seg, double lo, double hi, double w,
                                const VerifyOptions& opt) {
    // an enlarged box may dip below 0; the measure lives on (0, inf)
    if (seg == Segment::Left && !(lo > 0.0)) return {};
    if (seg == Segment::Mid) lo = std::max(lo, 0.0);
    std::vector<double> breaks;
    std::size_t tail_panels = 0;
    switch (seg) {
        case Segment::Left:
            breaks = log_breaks(lo * std::ldexp(1.0, -opt.tail_octaves), lo,
                                opt.tail_octaves * opt.panels_per_octave);
            break;
        case Segment::Mid:
            breaks = linear_breaks(lo, hi, opt.mid_panels);
            break;
        case Segment::Right:
            breaks = log_breaks(hi, hi * std::ldexp(1.0, opt.tail_octaves),
                                opt.tail_octaves * opt.panels_per_octave);
            tail_panels = 4 * static_cast<std::size_t>(opt.panels_per_octave);
            break;
    }
    SegmentMesh mesh;
    const GaussRule& g = gauss_legendre(opt.gauss_points);
    const std::size_t panels = breaks.size() - 1;
    const std::size_t tail_from =
        panels > tail_panels ? panels - tail_panels : 0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        for (int i = 0; i < opt.gauss_points; ++i) {
            const double x = mid + half * g.nodes[i];
            mesh.nodes.push_back(x);
            mesh.weights.push_back(g.weights[i] * half * std::pow(x, w));
            mesh.tail.push_back(seg == Segment::Right && p >= tail_from);
        }
    }
    // the deep left end is also an extrapolated band
    if (seg == Segment::Left)
        for (std::size_t i = 0;
             i < std::min<std::size_t>(mesh.nodes.size(),
                                       4 * opt.panels_per_octave * opt.gauss_points);
             ++i)
            mesh.tail[i] = 1;
    return mesh;
}

// Per-axis evaluator: value of one kernel factor at (axis, t, x); y and all
// parameters are baked into the closure.
using AxisFn = std::function<double(std::size_t ax, double t, double x)>;

struct RegionResult {
    std::vector<double> integral;  // per delta
    std::vector<double> tail;      // per delta
};

// integral over the tensor mesh of sup over the t-grid of
// t^{delta} * prod_ax fa(ax,t,x_ax), and (when fb is given) of
// t^{delta} * |prod fa - prod fb|.
inline RegionResult region_sup_integral(const std::vector<SegmentMesh>& mesh,
                                        const std::vector<double>& t_grid,
                                        const std::vector<double>& deltas,
                                        const AxisFn& fa,
                                        const AxisFn* fb = nullptr) {
    const std::size_t d = mesh.size();
    std::size_t total = 1;
    for (const auto& m : mesh) total *= m.nodes.size();

    std::vector<std::vector<double>> sup(deltas.size(),
                                         std::vector<double>(total, 0.0));
    std::vector<std::vector<double>> va(d), vb(d);
    for (double t : t_grid) {
        for (std::size_t ax = 0; ax < d; ++ax) {
            va[ax].resize(mesh[ax].nodes.size());
            for (std::size_t i = 0; i < mesh[ax].nodes.size(); ++i)
                va[ax][i] = fa(ax, t, mesh[ax].nodes[i]);
            if (fb) {
                vb[ax].resize(mesh[ax].nodes.size());
                for (std::size_t i = 0; i < mesh[ax].nodes.size(); ++i)
                    vb[ax][i] = (*fb)(ax, t, mesh[ax].nodes[i]);
            }
        }
        std::vector<double> tpow(deltas.size());
        for (std::size_t k = 0; k < deltas.size(); ++k)
            tpow[k] = std::pow(t, deltas[k]);
        for (std::size_t flat = 0; flat < total; ++flat) {
            double pa = 1.0, pb = 1.0;
            std::size_t rem = flat;
            for (std::size_t ax = d; ax-- > 0;) {
                const std::size_t i = rem % mesh[ax].nodes.size();
                rem /= mesh[ax].nodes.size();
                pa *= va[ax][i];
                if (fb) pb *= vb[ax][i];
            }
            const double base = fb ? std::abs(pa - pb) : pa;
            if (base == 0.0) continue;
            for (std::size_t k = 0; k < deltas.size(); ++k)
                sup[k][flat] = std::max(sup[k][flat], tpow[k] * base);
        }
    }

    RegionResult out;
    out.integral.assign(deltas.size(), 0.0);
    out.tail.assign(deltas.size(), 0.0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double w = 1.0;
        bool in_tail = false;
        std::size_t rem = flat;
        for (std::size_t ax = d; ax-- > 0;) {
            const std::size_t i = rem % mesh[ax].nodes.size();
            rem /= mesh[ax].nodes.size();
            w *= mesh[ax].weights[i];
            in_tail = in_tail || mesh[ax].tail[i];
        }
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const double c = w * sup[k][flat];
            out.integral[k] += c;
            if (in_tail) out.tail[k] += c;
        }
    }
    return out;
}

// All segment combinations of {Left, Mid, Right}^d except all-Mid: the
// complement of Q**.  d = 1 gives {Left}, {Right}.
inline std::vector<std::vector<Segment>> complement_regions(std::size_t d) {
    std::vector<std::vector<Segment>> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 3;
    for (std::size_t f = 0; f < total; ++f) {
        std::vector<Segment> seg(d);
        std::size_t rem = f;
        bool all_mid = true;
        for (std::size_t i = 0; i < d; ++i) {
            seg[i] = static_cast<Segment>(rem % 3);
            rem /= 3;
            all_mid = all_mid && seg[i] == Segment::Mid;
        }
        if (!all_mid) out.push_back(std::move(seg));
    }
    return out;
}

inline AxisFn kernel_axis_fn(const KernelSpec& spec, const Point& y) {
    return [&spec, y](std::size_t ax, double t, double x) {
        return kernel_1d(spec.axes[ax], t, x, y[ax]);
    };
}

// per-axis factor of the Gaussian envelope with exact ball measures
inline AxisFn envelope_axis_fn(const NuVector& nu, const Point& y, double c) {
    return [&nu, y, c](std::size_t ax, double t, double x) {
        const double m = measure_ball_exact(nu.axes[ax].effective(), x,
                                            std::sqrt(t));
        if (std::isinf(m)) return 0.0;
        const double dd = x - y[ax];
        return std::exp(-dd * dd / (c * t)) / m;
    };
}

}  // namespace detail

// (A0)-type check: 0 <= T_t(x,y) and T_t(x,y) <= C_fit * envelope over
// sampled (Q, x in N(Q), y in Q*, t); statistic per Q is the smallest C.
inline ConditionReport check_A0(const KernelSpec& spec, const Covering& cov,
                                const std::vector<Cell>& cells,
                                const VerifyOptions& opt = {}) {
    ConditionReport rep;
    rep.condition = "A0";
    rep.spread_bound = opt.spread_bound;
    const NuVector nu = spec.measure_nu();
    std::mt19937_64 rng(opt.seed);

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const auto t_grid = detail::condition_t_grid(d_q, opt);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);
        double worst = 0.0;
        for (const auto& n : cov.neighbors(q)) {
            const auto xs = detail::sample_points(n.box, 2, rng);
            for (const auto& x : xs) {
                for (const auto& y : ys) {
                    std::vector<double> ts = t_grid;
                    // breakpoints of the kernel's regime changes
                    for (std::size_t i = 0; i < spec.dim(); ++i) {
                        ts.push_back(0.5 * x[i] * y[i]);
                        ts.push_back(x[i] * x[i]);
                    }
                    ts.push_back(0.25 * sq_distance(x, y));
                    for (double t : ts) {
                        // below the grid floor sqrt(t) underflows against x
                        if (!(t >= t_grid.front())) continue;
                        const double v = kernel_product(spec, t, x, y);
                        if (v < 0.0 && rep.notes.size() < 8)
                            rep.notes.push_back("negative kernel value");
                        double env = 1.0;
                        for (std::size_t i = 0; i < nu.dim(); ++i) {
                            const double m = measure_ball_exact(
                                nu.axes[i].effective(), x[i], std::sqrt(t));
                            env = std::isinf(m) ? 0.0 : env / m;
                        }
                        env *= std::exp(-sq_distance(x, y) /
                                        (opt.envelope_c * t));
                        if (env > 0.0)
                            worst = std::max(worst, v / env);
                        else if (v > 1e-300 && rep.notes.size() < 8)
                            rep.notes.push_back(
                                "kernel positive where envelope vanishes");
                    }
                }
            }
        }
        rep.entries.push_back({q.key, d_q, 0.0, worst, 0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// (A1)-type check: statistic = sup_y int_{(Q**)^c} sup_t t^delta T_t dmu(x)
// normalized by d_Q^{2 delta}.
inline ConditionReport check_A1(const KernelSpec& spec, const Covering& cov,
                                const std::vector<double>& deltas,
                                const std::vector<Cell>& cells,
                                const VerifyOptions& opt = {}) {
    ConditionReport rep;
    rep.condition = "A1";
    rep.spread_bound = opt.spread_bound;
    const NuVector nu = spec.measure_nu();
    std::mt19937_64 rng(opt.seed);

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const Cuboid q2 = q.box.star(cov.kappa(), 2);
        const auto t_grid = detail::condition_t_grid(d_q, opt);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);
        std::vector<double> best(deltas.size(), 0.0);
        std::vector<double> best_tail(deltas.size(), 0.0);
        for (const auto& y : ys) {
            const auto fa = detail::kernel_axis_fn(spec, y);
            std::vector<double> sum(deltas.size(), 0.0), tail(deltas.size(), 0.0);
            for (const auto& segs : detail::complement_regions(spec.dim())) {
                std::vector<detail::SegmentMesh> mesh(spec.dim());
                for (std::size_t ax = 0; ax < spec.dim(); ++ax)
                    mesh[ax] = detail::segment_mesh(
                        segs[ax], q2.lower(ax), q2.upper(ax),
                        nu.axes[ax].weight_exponent(), opt);
                const auto r =
                    detail::region_sup_integral(mesh, t_grid, deltas, fa);
                for (std::size_t k = 0; k < deltas.size(); ++k) {
                    sum[k] += r.integral[k];
                    tail[k] += r.tail[k];
                }
            }
            for (std::size_t k = 0; k < deltas.size(); ++k)
                if (sum[k] > best[k]) {
                    best[k] = sum[k];
                    best_tail[k] = tail[k];
                }
        }
        for (std::size_t k = 0; k < deltas.size(); ++k)
            rep.entries.push_back(
                {q.key, d_q, deltas[k],
                 best[k] / std::pow(d_q, 2.0 * deltas[k]),
                 best[k] > 0.0 ? best_tail[k] / best[k] : 0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// (A2)-type check: statistic = sup_y int_{Q**} sup_{t<=d_Q^2} t^{-delta}
// |T_t - W^cls| dmu(x) normalized by d_Q^{-2 delta}.
inline ConditionReport check_A2(const KernelSpec& spec, const Covering& cov,
                                const std::vector<double>& deltas,
                                const std::vector<Cell>& cells,
                                const VerifyOptions& opt = {}) {
    ConditionReport rep;
    rep.condition = "A2";
    rep.spread_bound = opt.spread_bound;
    const NuVector nu = spec.measure_nu();
    KernelSpec cls;
    for (std::size_t i = 0; i < spec.dim(); ++i)
        cls.axes.push_back({nu.axes[i].effective(), KernelBranch::ClassicalW});
    std::mt19937_64 rng(opt.seed);

    std::vector<double> neg_deltas(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) neg_deltas[k] = -deltas[k];

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const Cuboid q2 = q.box.star(cov.kappa(), 2);
        const auto t_grid =
            detail::condition_t_grid(d_q, opt, std::pow(10.0, -opt.t_span_decades), 1.0);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);
        std::vector<double> best(deltas.size(), 0.0);
        for (const auto& y : ys) {
            const auto fa = detail::kernel_axis_fn(spec, y);
            const auto fbv = detail::kernel_axis_fn(cls, y);
            std::vector<detail::SegmentMesh> mesh(spec.dim());
            for (std::size_t ax = 0; ax < spec.dim(); ++ax)
                mesh[ax] = detail::segment_mesh(
                    detail::Segment::Mid, q2.lower(ax), q2.upper(ax),
                    nu.axes[ax].weight_exponent(), opt);
            const auto r = detail::region_sup_integral(mesh, t_grid,
                                                       neg_deltas, fa, &fbv);
            for (std::size_t k = 0; k < deltas.size(); ++k)
                best[k] = std::max(best[k], r.integral[k]);
        }
        for (std::size_t k = 0; k < deltas.size(); ++k)
            rep.entries.push_back({q.key, d_q, deltas[k],
                                   best[k] * std::pow(d_q, 2.0 * deltas[k]),
                                   0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// (a3): sup_y int_{Q**} sup_{t > d_Q^2} T_t dmu <= C, and
// (a4): sup_y sum_Q int_{Q**} sup_{t <= d_Q^2} T_t |psi_Q(x) - psi_Q(y)| dmu,
// with the far sum bounded by the (A1')-type integral outside the 2-ring.
inline ConditionReport check_a3_a4(const KernelSpec& spec, const Covering& cov,
                                   const std::vector<Cell>& cells,
                                   const VerifyOptions& opt = {}) {
    ConditionReport rep;
    rep.condition = "a3a4";
    rep.spread_bound = opt.spread_bound;
    const NuVector nu = spec.measure_nu();
    std::mt19937_64 rng(opt.seed);
    const std::vector<double> zero{0.0};

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const Cuboid q2 = q.box.star(cov.kappa(), 2);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);

        // (a3)
        const auto t_hi = detail::condition_t_grid(
            d_q, opt, 1.0, std::pow(10.0, opt.t_span_decades));
        double a3 = 0.0;
        for (const auto& y : ys) {
            const auto fa = detail::kernel_axis_fn(spec, y);
            std::vector<detail::SegmentMesh> mesh(spec.dim());
            for (std::size_t ax = 0; ax < spec.dim(); ++ax)
                mesh[ax] = detail::segment_mesh(
                    detail::Segment::Mid, q2.lower(ax), q2.upper(ax),
                    nu.axes[ax].weight_exponent(), opt);
            a3 = std::max(
                a3, detail::region_sup_integral(mesh, t_hi, zero, fa).integral[0]);
        }
        rep.entries.push_back({q.key, d_q, 3.0, a3, 0.0});

        // (a4): y in Q, ring = neighbors of neighbors
        double a4 = 0.0;
        const auto y_samples = detail::sample_points(q.box, 3, rng);
        std::vector<Cell> ring;
        for (const auto& n1 : cov.neighbors(q))
            for (auto& n2 : cov.neighbors(n1)) {
                bool seen = false;
                for (const auto& r : ring) seen = seen || r.key == n2.key;
                if (!seen) ring.push_back(std::move(n2));
            }
        for (const auto& y : y_samples) {
            double s = 0.0;
            for (const auto& qq : ring) {
                const double dq2 = qq.box.diameter();
                const Cuboid qq2 = qq.box.star(cov.kappa(), 2);
                const double psi_y = cov.psi(qq, y);
                const auto tg = detail::condition_t_grid(
                    dq2, opt, std::pow(10.0, -opt.t_span_decades), 1.0);
                const auto fa = detail::kernel_axis_fn(spec, y);
                // integrate on the Mid mesh of qq with the psi difference
                std::vector<detail::SegmentMesh> mesh(spec.dim());
                for (std::size_t ax = 0; ax < spec.dim(); ++ax)
                    mesh[ax] = detail::segment_mesh(
                        detail::Segment::Mid, qq2.lower(ax), qq2.upper(ax),
                        nu.axes[ax].weight_exponent(), opt);
                // fold |psi(x)-psi(y)| into a pointwise factor via a wrapped
                // evaluation over the flattened mesh
                std::size_t total = 1;
                for (const auto& m : mesh) total *= m.nodes.size();
                std::vector<double> sup(total, 0.0);
                std::vector<std::vector<double>> va(spec.dim());
                for (double t : tg) {
                    for (std::size_t ax = 0; ax < spec.dim(); ++ax) {
                        va[ax].resize(mesh[ax].nodes.size());
                        for (std::size_t i = 0; i < mesh[ax].nodes.size(); ++i)
                            va[ax][i] = fa(ax, t, mesh[ax].nodes[i]);
                    }
                    for (std::size_t flat = 0; flat < total; ++flat) {
                        double p = 1.0;
                        std::size_t rem = flat;
                        for (std::size_t ax = spec.dim(); ax-- > 0;) {
                            const std::size_t i = rem % mesh[ax].nodes.size();
                            rem /= mesh[ax].nodes.size();
                            p *= va[ax][i];
                        }
                        sup[flat] = std::max(sup[flat], p);
                    }
                }
                for (std::size_t flat = 0; flat < total; ++flat) {
                    double w = 1.0;
                    Point x(spec.dim());
                    std::size_t rem = flat;
                    for (std::size_t ax = spec.dim(); ax-- > 0;) {
                        const std::size_t i = rem % mesh[ax].nodes.size();
                        rem /= mesh[ax].nodes.size();
                        w *= mesh[ax].weights[i];
                        x[ax] = mesh[ax].nodes[i];
                    }
                    s += w * sup[flat] * std::abs(cov.psi(qq, x) - psi_y);
                }
            }
            // far remainder: outside the ring the psi difference is at most
            // 1 and the sum of Q** integrals is dominated by the integral
            // over the complement of this cuboid's Q**
            const auto fa = detail::kernel_axis_fn(spec, y);
            const auto tg = detail::condition_t_grid(d_q, opt);
            for (const auto& segs : detail::complement_regions(spec.dim())) {
                std::vector<detail::SegmentMesh> mesh(spec.dim());
                for (std::size_t ax = 0; ax < spec.dim(); ++ax)
                    mesh[ax] = detail::segment_mesh(
                        segs[ax], q2.lower(ax), q2.upper(ax),
                        nu.axes[ax].weight_exponent(), opt);
                s += detail::region_sup_integral(mesh, tg, zero, fa).integral[0];
            }
            a4 = std::max(a4, s);
        }
        rep.entries.push_back({q.key, d_q, 4.0, a4, 0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// Envelope integrability: inside integral with t^{+delta} against
// d_Q^{2 delta}, outside integral with t^{-delta} against d_Q^{-2 delta}.
inline ConditionReport check_lemma_integrable(const NuVector& nu,
                                              const Covering& cov,
                                              double delta, double c,
                                              const std::vector<Cell>& cells,
                                              const VerifyOptions& opt = {}) {
    for (const auto& ax : nu.axes)
        if (ax.flavor != AxisFlavor::Classical || !(ax.nu > -1.0))
            throw std::domain_error("check_lemma_integrable: classical nu > -1");
    double dmax = 0.5;
    for (const auto& ax : nu.axes) dmax = std::min(dmax, ax.nu + 1.0);
    if (!(delta > 0.0 && delta < dmax))
        throw std::domain_error(
            "check_lemma_integrable: delta in (0, min(1/2, nu_j + 1))");

    ConditionReport rep;
    rep.condition = "lemma24";
    rep.spread_bound = opt.spread_bound;
    std::mt19937_64 rng(opt.seed);

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const Cuboid q2 = q.box.star(cov.kappa(), 2);
        const auto t_grid = detail::condition_t_grid(d_q, opt);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);
        double in_best = 0.0, out_best = 0.0, out_tail = 0.0;
        for (const auto& y : ys) {
            const auto fa = detail::envelope_axis_fn(nu, y, c);
            std::vector<detail::SegmentMesh> mid(nu.dim());
            for (std::size_t ax = 0; ax < nu.dim(); ++ax)
                mid[ax] = detail::segment_mesh(
                    detail::Segment::Mid, q2.lower(ax), q2.upper(ax),
                    nu.axes[ax].weight_exponent(), opt);
            in_best = std::max(
                in_best,
                detail::region_sup_integral(mid, t_grid, {delta}, fa).integral[0]);

            double s = 0.0, tl = 0.0;
            for (const auto& segs : detail::complement_regions(nu.dim())) {
                std::vector<detail::SegmentMesh> mesh(nu.dim());
                for (std::size_t ax = 0; ax < nu.dim(); ++ax)
                    mesh[ax] = detail::segment_mesh(
                        segs[ax], q2.lower(ax), q2.upper(ax),
                        nu.axes[ax].weight_exponent(), opt);
                const auto r =
                    detail::region_sup_integral(mesh, t_grid, {-delta}, fa);
                s += r.integral[0];
                tl += r.tail[0];
            }
            if (s > out_best) {
                out_best = s;
                out_tail = tl;
            }
        }
        rep.entries.push_back(
            {q.key, d_q, delta, in_best / std::pow(d_q, 2.0 * delta), 0.0});
        rep.entries.push_back(
            {q.key, d_q, -delta, out_best * std::pow(d_q, 2.0 * delta),
             out_best > 0.0 ? out_tail / out_best : 0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// Pointwise sup-t bound: P <= C min(x, |x-y|)^{-1+eps} over x in N(Q),
// y in Q*, with sup over t <= d_Q^2; statistic per Q is the smallest C.
inline ConditionReport check_sup_t_bound(double nu_j, double eps_j,
                                         const Covering& cov,
                                         const std::vector<Cell>& cells,
                                         const VerifyOptions& opt = {}) {
    if (!(nu_j > -1.0)) throw std::domain_error("check_sup_t_bound: nu > -1");
    if (!(eps_j > 0.0 && eps_j < 2.0 * nu_j + 2.0))
        throw std::domain_error("check_sup_t_bound: eps in (0, 2 nu + 2)");
    if (cov.dim() != 1)
        throw std::invalid_argument("check_sup_t_bound: one axis at a time");

    ConditionReport rep;
    rep.condition = "supT";
    rep.spread_bound = opt.spread_bound;
    std::mt19937_64 rng(opt.seed);
    const double c_j = opt.envelope_c;

    for (const auto& q : cells) {
        const double d_q = q.box.diameter();
        const auto t_grid = detail::condition_t_grid(
            d_q, opt, std::pow(10.0, -opt.t_span_decades), 1.0);
        const auto ys = detail::sample_points(q.box.star(cov.kappa()),
                                              opt.n_random_y, rng);
        double worst = 0.0;
        for (const auto& n : cov.neighbors(q)) {
            const auto xs = detail::sample_points(n.box, 4, rng);
            for (const auto& x : xs) {
                for (const auto& y : ys) {
                    const double r = std::abs(x[0] - y[0]);
                    if (r < 1e-12 * d_q) continue;  // degenerate: bound is +inf
                    double p = 0.0;
                    for (double t : t_grid) {
                        const double m =
                            measure_ball_exact(nu_j, x[0], std::sqrt(t));
                        if (std::isinf(m)) continue;
                        p = std::max(p, std::exp(-r * r / (c_j * t)) *
                                            std::pow(r, eps_j) *
                                            std::pow(x[0], 2.0 * nu_j + 1.0) / m);
                    }
                    const double bound =
                        std::pow(std::min(x[0], r), -1.0 + eps_j);
                    worst = std::max(worst, p / bound);
                }
            }
        }
        rep.entries.push_back({q.key, d_q, eps_j, worst, 0.0});
    }
    rep.finalize(opt.eps_tail);
    return rep;
}

// Product of a classical factor with a local factor: runs the A0/A1/A2
// battery for W^cls (x) spec2 against the cube-split cylinder covering.
struct ProductReport {
    ConditionReport a0, a1, a2;
    bool pass() const { return a0.pass && a1.pass && a2.pass; }
};

inline ProductReport check_prop_locnonloc(const KernelSpec& spec1,
                                          const KernelSpec& spec2,
                                          CoveringPtr cov2, std::size_t d1,
                                          double gamma, const Cuboid& window,
                                          const VerifyOptions& opt = {}) {
    for (const auto& ax : spec1.axes)
        if (ax.branch != KernelBranch::ClassicalW)
            throw std::invalid_argument(
                "check_prop_locnonloc: first factor must be classical");
    if (spec1.dim() != d1)
        throw std::invalid_argument("check_prop_locnonloc: d1 mismatch");

    KernelSpec prod;
    prod.axes = spec1.axes;
    prod.axes.insert(prod.axes.end(), spec2.axes.begin(), spec2.axes.end());
    CoveringPtr cov = cylinder_covering(d1, std::move(cov2));
    const std::vector<Cell> cells = cov->cells_in(window);

    ProductReport out;
    out.a0 = check_A0(prod, *cov, cells, opt);
    out.a1 = check_A1(prod, *cov, {-gamma / 2.0, 0.0, gamma / 2.0}, cells, opt);
    out.a2 = check_A2(prod, *cov, {0.0, gamma / 2.0}, cells, opt);
    return out;
}

}  // namespace bessel_hardy
