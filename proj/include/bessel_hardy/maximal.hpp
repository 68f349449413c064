#pragma once

// Semigroup action on grid functions, the log-t-grid maximal function, and
// L1 / H1 norm estimates, including the conjugated route for mixed
// classical/exotic parameters.
//
// The integral T_t f(x) = int T_t(x,y) f(y) dmu(y) factorizes per axis for
// product kernels: per t and per axis we assemble a (x-node) x (f-cell)
// matrix of cell integrals and contract it with f's value tensor.  The sup
// over t is a max over the log grid, threaded with a deterministic
// elementwise-max merge.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

#include "bessel_hardy/grid.hpp"
#include "bessel_hardy/kernel.hpp"
#include "bessel_hardy/quadrature.hpp"

namespace bessel_hardy {

// One axis of an H1 route: the 1-D kernel, the y-weight exponent folded into
// the inner integral (measure weight times any conjugation factor on f), and
// the x-weight exponent of the outer L1 integral.
struct RouteAxis {
    KernelAxis kernel;
    double inner_exp;
    double outer_exp;
};

struct Route {
    std::vector<RouteAxis> axes;
    std::size_t dim() const { return axes.size(); }
};

// Direct route: each axis uses its own semigroup kernel and its own measure.
inline Route direct_route(const NuVector& nu) {
    Route r;
    for (const auto& ax : nu.axes) {
        const double w = ax.weight_exponent();
        if (ax.flavor == AxisFlavor::Classical)
            r.axes.push_back({{ax.nu, KernelBranch::ClassicalW}, w, w});
        else
            r.axes.push_back({{ax.nu, KernelBranch::ExoticW}, w, w});
    }
    return r;
}

// Conjugated route: exotic axes switch to the conjugated kernel acting on
// f~(y) = y^{-4 nu_e} f(y) against the +nu_e measure.  The transform factor
// is folded into the inner exponent: y^{-4 nu_e} y^{2 nu_e + 1} =
// y^{-2 nu_e + 1}, so f itself is reused unchanged.
inline Route conjugated_route(const NuVector& nu) {
    Route r;
    bool any_exotic = false;
    for (const auto& ax : nu.axes) {
        if (ax.flavor == AxisFlavor::Classical) {
            const double w = ax.weight_exponent();
            r.axes.push_back({{ax.nu, KernelBranch::ClassicalW}, w, w});
        } else {
            any_exotic = true;
            r.axes.push_back({{ax.nu, KernelBranch::ConjugatedK},
                              -2.0 * ax.nu + 1.0, 2.0 * ax.nu + 1.0});
        }
    }
    if (!any_exotic)
        throw std::invalid_argument("conjugated_route: no exotic axis");
    return r;
}

namespace detail {

inline int thread_count() {
    if (const char* env = std::getenv("BESSEL_HARDY_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// Integral of kernel(x, .) y^p over [a, b], with panels no wider than
// sqrt(t) and the integration window clipped to |x - y| <= 10 sqrt(t).
inline double cell_kernel_integral(const RouteAxis& ax, double t, double x,
                                   double a, double b, int gp) {
    const double w = std::sqrt(t);
    // exp(-16^2/4) ~ 1e-28: truncation is far below quadrature error
    const double lo = std::max(a, x - 16.0 * w);
    const double hi = std::min(b, x + 16.0 * w);
    if (lo >= hi) return 0.0;
    const int panels =
        std::max(1, std::min(24, static_cast<int>(std::ceil((hi - lo) / w))));
    const GaussRule& g = gauss_legendre(gp);
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = lo + (hi - lo) * p / panels;
        const double pb = lo + (hi - lo) * (p + 1) / panels;
        const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int i = 0; i < gp; ++i) {
            const double y = mid + half * g.nodes[i];
            s += g.weights[i] * half *
                 std::exp(log_kernel_1d(ax.kernel, t, x, y) +
                          ax.inner_exp * std::log(y));
        }
    }
    return s;
}

// (x-node) x (cell) matrix of per-cell kernel integrals on one axis.
inline std::vector<double> axis_matrix(const RouteAxis& ax, double t,
                                       const std::vector<double>& x_nodes,
                                       const GridFunction& f, std::size_t f_ax,
                                       int gp) {
    const int nc = f.cells[f_ax];
    std::vector<double> m(x_nodes.size() * nc, 0.0);
    for (std::size_t i = 0; i < x_nodes.size(); ++i)
        for (int c = 0; c < nc; ++c)
            m[i * nc + c] = cell_kernel_integral(
                ax, t, x_nodes[i], f.axis_lower(f_ax, c),
                f.axis_lower(f_ax, c + 1), gp);
    return m;
}

// Contract the per-axis matrices with f's value tensor: out has one entry
// per tensor x-node, axis 0 slowest.
inline std::vector<double> contract(
    const std::vector<std::vector<double>>& mats,
    const std::vector<std::size_t>& n_nodes, const GridFunction& f) {
    std::vector<double> cur = f.values;  // row-major over cells
    std::vector<std::size_t> shape(f.cells.begin(), f.cells.end());
    for (std::size_t ax = 0; ax < f.dim(); ++ax) {
        // replace axis `ax` (currently of size f.cells[ax]) by n_nodes[ax]
        std::size_t before = 1, after = 1;
        for (std::size_t i = 0; i < ax; ++i) before *= shape[i];
        for (std::size_t i = ax + 1; i < shape.size(); ++i) after *= shape[i];
        const std::size_t nc = shape[ax], nn = n_nodes[ax];
        std::vector<double> next(before * nn * after, 0.0);
        const std::vector<double>& m = mats[ax];
        for (std::size_t b = 0; b < before; ++b)
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t c = 0; c < nc; ++c) {
                    const double mv = m[i * nc + c];
                    if (mv == 0.0) continue;
                    const double* src = cur.data() + (b * nc + c) * after;
                    double* dst = next.data() + (b * nn + i) * after;
                    for (std::size_t a = 0; a < after; ++a) dst[a] += mv * src[a];
                }
        cur = std::move(next);
        shape[ax] = nn;
    }
    return cur;
}

struct AxisMesh {
    std::vector<double> nodes;
    std::vector<double> weights;  // Gauss weight times x^{outer_exp}
    std::size_t tail_begin = 0;   // node index where the outer tail bands start
};

inline AxisMesh mesh_from_breaks(const std::vector<double>& breaks, int gp,
                                 double outer_exp, std::size_t tail_panels) {
    AxisMesh mesh;
    const GaussRule& g = gauss_legendre(gp);
    const std::size_t panels = breaks.size() - 1;
    const std::size_t tail_from = panels > tail_panels ? panels - tail_panels : 0;
    for (std::size_t p = 0; p < panels; ++p) {
        if (p == tail_from) mesh.tail_begin = mesh.nodes.size();
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        for (int i = 0; i < gp; ++i) {
            const double x = mid + half * g.nodes[i];
            mesh.nodes.push_back(x);
            mesh.weights.push_back(g.weights[i] * half *
                                   std::pow(x, outer_exp));
        }
    }
    if (tail_from == 0) mesh.tail_begin = mesh.nodes.size();
    return mesh;
}

// Outer integration mesh on one axis: log grading below the support, one
// panel per f-cell across it, and a tail limited by the Gaussian reach when
// t is capped or stretched geometrically otherwise.
inline AxisMesh outer_mesh(const GridFunction& f, std::size_t ax,
                           double outer_exp, double t_hi, bool t_capped,
                           int gp, int tail_octaves) {
    const double lo = f.domain.lower(ax), hi = f.domain.upper(ax);
    std::vector<double> breaks;

    double left = lo * std::ldexp(1.0, -16);
    if (t_capped) {
        const double reach = lo - 12.0 * std::sqrt(t_hi);
        if (reach > left) left = reach;
    }
    auto head = log_breaks(left, lo, 14);
    breaks.insert(breaks.end(), head.begin(), head.end());

    for (int c = 1; c <= f.cells[ax]; ++c)
        breaks.push_back(f.axis_lower(ax, c));

    double right;
    std::size_t tail_panels;
    if (t_capped) {
        right = hi + 12.0 * std::sqrt(t_hi);
        auto tail = linear_breaks(hi, right, 10);
        breaks.insert(breaks.end(), tail.begin() + 1, tail.end());
        tail_panels = 2;
    } else {
        right = hi * std::ldexp(1.0, tail_octaves);
        auto tail = log_breaks(hi, right, 2 * tail_octaves);
        breaks.insert(breaks.end(), tail.begin() + 1, tail.end());
        tail_panels = 4;
    }
    return mesh_from_breaks(breaks, gp, outer_exp, tail_panels);
}

}  // namespace detail

// T_t f(x) for the product kernel implied by the route, quadrature-exact in
// f (panels aligned to cells) up to the Gauss error of the kernel factor.
inline double apply_semigroup(const Route& route, double t,
                              const GridFunction& f, const Point& x,
                              const QuadratureSpec& quad = {}) {
    if (route.dim() != f.dim())
        throw std::invalid_argument("apply_semigroup: dimension mismatch");
    std::vector<std::vector<double>> mats(f.dim());
    std::vector<std::size_t> n_nodes(f.dim(), 1);
    for (std::size_t ax = 0; ax < f.dim(); ++ax)
        mats[ax] = detail::axis_matrix(route.axes[ax], t, {x[ax]}, f, ax,
                                       quad.gauss_points);
    return detail::contract(mats, n_nodes, f)[0];
}

inline double apply_semigroup(const KernelSpec& spec, double t,
                              const GridFunction& f, const Point& x,
                              const QuadratureSpec& quad = {}) {
    Route r;
    for (std::size_t i = 0; i < spec.dim(); ++i) {
        const double w = f.nu.axes[i].weight_exponent();
        r.axes.push_back({spec.axes[i], w, w});
    }
    return apply_semigroup(r, t, f, x, quad);
}

inline std::vector<double> maximal_t_grid(const GridFunction& f,
                                          const QuadratureSpec& quad,
                                          double t_cap) {
    const double s = f.domain.diameter();
    double t_lo = quad.t_min_factor * s * s;
    double t_hi = quad.t_max_factor * s * s;
    if (t_cap < t_hi) t_hi = t_cap;
    if (t_lo >= t_hi) t_lo = t_hi * 1e-6;
    return log_t_grid(t_lo, t_hi, quad.t_per_decade);
}

struct MaxResult {
    double value = 0.0;
    double t_argmax = 0.0;
};

inline MaxResult maximal_function(
    const Route& route, const GridFunction& f, const Point& x,
    const QuadratureSpec& quad = {},
    double t_cap = std::numeric_limits<double>::infinity()) {
    MaxResult res;
    for (double t : maximal_t_grid(f, quad, t_cap)) {
        const double v = std::abs(apply_semigroup(route, t, f, x, quad));
        if (v > res.value) {
            res.value = v;
            res.t_argmax = t;
        }
    }
    return res;
}

inline MaxResult maximal_function(
    const KernelSpec& spec, const GridFunction& f, const Point& x,
    const QuadratureSpec& quad = {},
    double t_cap = std::numeric_limits<double>::infinity()) {
    Route r;
    for (std::size_t i = 0; i < spec.dim(); ++i) {
        const double w = f.nu.axes[i].weight_exponent();
        r.axes.push_back({spec.axes[i], w, w});
    }
    return maximal_function(r, f, x, quad, t_cap);
}

inline double l1_norm(const GridFunction& f) { return f.l1_mu(); }

struct MaximalL1 {
    double value = 0.0;
    double tail = 0.0;       // contribution of the outermost mesh bands
    bool converged = false;  // tail below eps_tail * value
    double t_lo = 0.0, t_hi = 0.0;
};

// || sup_t |T_t f| ||_{L1} over the route's outer measure, t on the log grid
// (capped at t_cap for the local variant).
inline MaximalL1 maximal_l1_norm(
    const Route& route, const GridFunction& f, const QuadratureSpec& quad = {},
    double t_cap = std::numeric_limits<double>::infinity(),
    int tail_octaves = 26) {
    const std::vector<double> t_grid = maximal_t_grid(f, quad, t_cap);
    const bool capped = std::isfinite(t_cap);

    std::vector<detail::AxisMesh> meshes(f.dim());
    std::vector<std::size_t> n_nodes(f.dim());
    std::size_t total = 1;
    for (std::size_t ax = 0; ax < f.dim(); ++ax) {
        meshes[ax] = detail::outer_mesh(f, ax, route.axes[ax].outer_exp,
                                        t_grid.back(), capped,
                                        quad.gauss_points, tail_octaves);
        n_nodes[ax] = meshes[ax].nodes.size();
        total *= n_nodes[ax];
    }

    std::vector<double> sup_field(total, 0.0);
    const int nthreads = detail::thread_count();
    std::vector<std::vector<double>> partial(nthreads);
    std::vector<std::thread> workers;
    for (int w = 0; w < nthreads; ++w) {
        workers.emplace_back([&, w]() {
            std::vector<double> local(total, 0.0);
            for (std::size_t k = w; k < t_grid.size(); k += nthreads) {
                const double t = t_grid[k];
                std::vector<std::vector<double>> mats(f.dim());
                for (std::size_t ax = 0; ax < f.dim(); ++ax)
                    mats[ax] = detail::axis_matrix(route.axes[ax], t,
                                                   meshes[ax].nodes, f, ax,
                                                   quad.gauss_points);
                std::vector<double> field = detail::contract(mats, n_nodes, f);
                for (std::size_t i = 0; i < total; ++i)
                    local[i] = std::max(local[i], std::abs(field[i]));
            }
            partial[w] = std::move(local);
        });
    }
    for (auto& th : workers) th.join();
    for (int w = 0; w < nthreads; ++w)
        for (std::size_t i = 0; i < total; ++i)
            sup_field[i] = std::max(sup_field[i], partial[w][i]);

    MaximalL1 out;
    out.t_lo = t_grid.front();
    out.t_hi = t_grid.back();
    std::vector<std::size_t> idx(f.dim(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        double w = 1.0;
        bool in_tail = false;
        std::size_t rem = flat;
        for (std::size_t ax = f.dim(); ax-- > 0;) {
            const std::size_t i = rem % n_nodes[ax];
            rem /= n_nodes[ax];
            w *= meshes[ax].weights[i];
            in_tail = in_tail || i >= meshes[ax].tail_begin;
        }
        const double contrib = w * sup_field[flat];
        out.value += contrib;
        if (in_tail) out.tail += contrib;
    }
    out.converged = out.tail <= quad.eps_tail * std::max(out.value, 1e-300);
    return out;
}

struct H1Estimate {
    MaximalL1 direct;
    MaximalL1 conjugated;
    bool has_conjugated = false;
};

// H1 norm of f via the maximal operator of the product semigroup given by
// f's flavors; for mixed classical/exotic also via the conjugated kernels.
inline H1Estimate h1_norm_estimate(const GridFunction& f,
                                   const QuadratureSpec& quad = {}) {
    H1Estimate est;
    est.direct = maximal_l1_norm(direct_route(f.nu), f, quad);
    for (const auto& ax : f.nu.axes)
        if (ax.flavor == AxisFlavor::Exotic) est.has_conjugated = true;
    if (est.has_conjugated)
        est.conjugated = maximal_l1_norm(conjugated_route(f.nu), f, quad);
    return est;
}

}  // namespace bessel_hardy
