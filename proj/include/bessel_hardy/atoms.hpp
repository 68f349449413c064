#pragma once

// (Q, mu_nu)-atoms: validation, the mean-split of a localized piece into a
// local atom plus a mean-zero remainder, a constructive martingale-difference
// decomposition of the remainder, and the conjugation transport between the
// exotic measure and the measure of the conjugated kernel.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bessel_hardy/covering.hpp"
#include "bessel_hardy/grid.hpp"

namespace bessel_hardy {

enum class AtomKind { Cancellative, Local };

struct Atom {
    AtomKind kind = AtomKind::Local;
    Cuboid host;              // Q
    NuVector nu;
    // Cancellative: piecewise-constant values with support K = grid.domain.
    // Local: a = mu_nu(Q)^{-1} 1_Q, grid unused.
    GridFunction grid;

    static Atom local(Cuboid q, NuVector measure) {
        Atom a;
        a.kind = AtomKind::Local;
        a.host = std::move(q);
        a.nu = std::move(measure);
        return a;
    }

    static Atom cancellative(Cuboid host_q, GridFunction g) {
        Atom a;
        a.kind = AtomKind::Cancellative;
        a.host = std::move(host_q);
        a.nu = g.nu;
        a.grid = std::move(g);
        return a;
    }

    const Cuboid& support() const {
        return kind == AtomKind::Local ? host : grid.domain;
    }

    double evaluate(const Point& x) const {
        if (kind == AtomKind::Local)
            return host.contains(x) ? 1.0 / measure_cuboid(nu, host) : 0.0;
        return grid.value_at(x);
    }
};

struct AtomCertificate {
    std::vector<std::string> violations;
    double size_product = 0.0;       // sup-norm * mu_nu(K)
    double integral_residual = 0.0;  // |int a dmu| (cancellative only)
    bool valid() const { return violations.empty(); }
};

inline AtomCertificate validate_atom(const Atom& a, double kappa,
                                     double size_tol = 1e-12,
                                     double cancel_tol = 1e-10) {
    AtomCertificate cert;
    if (a.kind == AtomKind::Local) {
        cert.size_product = 1.0;  // mu(Q)^{-1} * mu(Q) exactly
        return cert;
    }
    const Cuboid qstar = a.host.star(kappa);
    const Cuboid& k = a.grid.domain;
    for (std::size_t i = 0; i < k.dim(); ++i) {
        const double tol = 1e-12 * qstar.radii[i];
        if (k.lower(i) < qstar.lower(i) - tol ||
            k.upper(i) > qstar.upper(i) + tol) {
            cert.violations.push_back("support: K not contained in Q*");
            break;
        }
    }
    const double mu_k = measure_cuboid(a.nu, k);
    cert.size_product = a.grid.sup_norm() * mu_k;
    if (cert.size_product > 1.0 + size_tol)
        cert.violations.push_back("size: sup-norm exceeds mu_nu(K)^{-1}");
    cert.integral_residual = std::abs(a.grid.integral_mu());
    if (cert.integral_residual > cancel_tol * std::max(a.grid.l1_mu(), 1e-300))
        cert.violations.push_back("cancellation: nonzero mu_nu integral");
    return cert;
}

struct AtomicDecomposition {
    std::vector<std::pair<double, Atom>> terms;

    double total_l1() const {
        double s = 0.0;
        for (const auto& [l, a] : terms) s += std::abs(l);
        return s;
    }
    double evaluate(const Point& x) const {
        double s = 0.0;
        for (const auto& [l, a] : terms) s += l * a.evaluate(x);
        return s;
    }
};

// lambda0 = int f dmu, g = f - lambda0 mu(Q)^{-1} 1_Q.  Q must be a union of
// grid cells of f (checked cell by cell).
inline std::pair<double, GridFunction> mean_split(const GridFunction& f,
                                                  const Cuboid& q) {
    const double lambda0 = f.integral_mu();
    const double mu_q = measure_cuboid(f.nu, q);
    GridFunction g = f;
    for (std::size_t c = 0; c < g.size(); ++c) {
        if (!q.contains(g.cell_center(c))) continue;
        const auto idx = g.unflat(c);
        for (std::size_t ax = 0; ax < g.dim(); ++ax) {
            const double tol = 1e-10 * q.radii[ax];
            if (g.axis_lower(ax, idx[ax]) < q.lower(ax) - tol ||
                g.axis_lower(ax, idx[ax] + 1) > q.upper(ax) + tol)
                throw std::invalid_argument(
                    "mean_split: Q is not aligned with the grid of f");
        }
        g.values[c] -= lambda0 / mu_q;
    }
    return {lambda0, std::move(g)};
}

namespace detail {

struct Region {
    std::vector<int> lo, hi;  // inclusive per-axis cell ranges
};

inline double region_integral(const GridFunction& g, const Region& r,
                              double& mu_out) {
    std::vector<int> idx = r.lo;
    double integral = 0.0, mu = 0.0;
    while (true) {
        const std::size_t f = g.flat(idx);
        const double m = g.cell_measure(f);
        integral += g.values[f] * m;
        mu += m;
        std::size_t ax = g.dim();
        bool done = true;
        while (ax-- > 0) {
            if (++idx[ax] <= r.hi[ax]) {
                done = false;
                break;
            }
            idx[ax] = r.lo[ax];
        }
        if (done) break;
    }
    mu_out = mu;
    return integral;
}

inline Cuboid region_box(const GridFunction& g, const Region& r) {
    Point a(g.dim()), b(g.dim());
    for (std::size_t ax = 0; ax < g.dim(); ++ax) {
        a[ax] = g.axis_lower(ax, r.lo[ax]);
        b[ax] = g.axis_lower(ax, r.hi[ax] + 1);
    }
    return Cuboid::from_corners(a, b);
}

// Two-valued step on the region box: v1 on the first child, v2 on the rest.
// Child boundaries are cell boundaries, so the grid represents it exactly.
inline GridFunction two_block(const GridFunction& g, const Region& r,
                              const Region& r1, double v1, double v2) {
    std::vector<int> counts(g.dim());
    for (std::size_t ax = 0; ax < g.dim(); ++ax)
        counts[ax] = r.hi[ax] - r.lo[ax] + 1;
    GridFunction a(region_box(g, r), counts, g.nu);
    for (std::size_t f = 0; f < a.size(); ++f) {
        const auto local = a.unflat(f);
        bool in_first = true;
        for (std::size_t ax = 0; ax < g.dim(); ++ax)
            if (local[ax] + r.lo[ax] > r1.hi[ax]) in_first = false;
        a.values[f] = in_first ? v1 : v2;
    }
    return a;
}

inline void haar_recurse(const GridFunction& g, const Cuboid& host,
                         const Region& r, double avg, double scale,
                         AtomicDecomposition& out) {
    // split the axis with the most cells at the median cell boundary
    std::size_t axis = 0;
    int best = 0;
    for (std::size_t ax = 0; ax < g.dim(); ++ax) {
        const int n = r.hi[ax] - r.lo[ax] + 1;
        if (n > best) {
            best = n;
            axis = ax;
        }
    }
    if (best <= 1) return;

    Region r1 = r, r2 = r;
    const int mid = r.lo[axis] + best / 2;
    r1.hi[axis] = mid - 1;
    r2.lo[axis] = mid;

    double mu1 = 0.0, mu2 = 0.0;
    const double i1 = region_integral(g, r1, mu1);
    const double i2 = region_integral(g, r2, mu2);
    const double a1 = i1 / mu1, a2 = i2 / mu2;

    const double d1 = a1 - avg, d2 = a2 - avg;
    const double dmax = std::max(std::abs(d1), std::abs(d2));
    if (dmax > 1e-14 * scale) {
        const double lambda = dmax * (mu1 + mu2);
        GridFunction av = two_block(g, r, r1, d1 / lambda, d2 / lambda);
        out.terms.push_back({lambda, Atom::cancellative(host, std::move(av))});
    }
    haar_recurse(g, host, r1, a1, scale, out);
    haar_recurse(g, host, r2, a2, scale, out);
}

}  // namespace detail

// Decompose a mean-zero piecewise-constant g into cancellative atoms via
// mu_nu-weighted martingale differences.  The differences telescope, so the
// weighted atom sum reconstructs g exactly at grid cells up to drops of size
// 1e-14 * sup|g|.  host is the covering cuboid the atoms certify against.
inline AtomicDecomposition haar_decompose(const GridFunction& g,
                                          const Cuboid& host) {
    if (std::abs(g.integral_mu()) > 1e-9 * std::max(g.l1_mu(), 1e-300))
        throw std::invalid_argument("haar_decompose: input is not mean zero");
    AtomicDecomposition out;
    detail::Region root;
    root.lo.assign(g.dim(), 0);
    root.hi.resize(g.dim());
    for (std::size_t ax = 0; ax < g.dim(); ++ax) root.hi[ax] = g.cells[ax] - 1;
    const double scale = std::max(g.sup_norm(), 1e-300);
    detail::haar_recurse(g, host, root, 0.0, scale, out);
    return out;
}

inline AtomicDecomposition haar_decompose(const GridFunction& g) {
    return haar_decompose(g, g.domain);
}

// Cells per axis over Q* such that the collar Q* \ Q is a whole number of
// cells on each side and Q holds at least 2^depth cells per axis.
inline int aligned_cell_count(double kappa, int depth) {
    for (int n = 2; n <= (1 << 16); ++n) {
        const double c = n * (kappa - 1.0) / (2.0 * kappa);
        const double cr = std::round(c);
        if (cr < 1.0 || std::abs(c - cr) > 1e-9) continue;
        int m = n;
        while (m - 2 * static_cast<int>(cr) * (m / n) < (1 << depth)) {
            if (m > (1 << 20))
                throw std::domain_error("aligned_cell_count: grid too large");
            m *= 2;
        }
        return m;
    }
    throw std::domain_error("aligned_cell_count: no grid aligns with kappa");
}

// Localize f with the partition of unity over the covering, mean-split each
// piece on its host Q, and expand the remainders into cancellative atoms.
inline AtomicDecomposition localize_and_decompose(const GridFunction& f,
                                                  const Covering& cov,
                                                  int depth = 5) {
    Cuboid supp;
    if (!f.support_box(supp)) return {};
    const int n_cells = aligned_cell_count(cov.kappa(), depth);

    // any Q with psi_Q f not identically 0 has Q* meeting supp f
    Point lo(f.dim()), hi(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        lo[i] = std::max(supp.lower(i) / cov.kappa() -
                             (cov.kappa() - 1.0) * supp.upper(i),
                         1e-300);
        hi[i] = supp.upper(i) * cov.kappa();
    }
    std::vector<Cell> hosts = cov.cells_in(Cuboid::from_corners(lo, hi));

    AtomicDecomposition out;
    for (const auto& q : hosts) {
        const Cuboid qstar = q.box.star(cov.kappa());
        GridFunction piece(qstar, std::vector<int>(f.dim(), n_cells), f.nu);
        bool any = false;
        for (std::size_t c = 0; c < piece.size(); ++c) {
            const Point ctr = piece.cell_center(c);
            const double v = cov.psi(q, ctr) * f.value_at(ctr);
            piece.values[c] = v;
            any = any || v != 0.0;
        }
        if (!any) continue;
        auto [lambda0, g] = mean_split(piece, q.box);
        if (lambda0 != 0.0)
            out.terms.push_back({lambda0, Atom::local(q.box, f.nu)});
        auto rest = haar_decompose(g, q.box);
        for (auto& term : rest.terms) out.terms.push_back(std::move(term));
    }
    return out;
}

// Transport of an atom for the measure with exponents (nu_c, +nu_e) to the
// exotic measure (nu_c, -nu_e): a(y) = prod_{exotic j} y_j^{4 nu_j} a~(y).
// The multiplicative factor, normalized by the measure ratio of the support
// box on those axes, is comparable to 1 uniformly over the covering;
// factor_min/max report the measured range.  Cancellation transports
// exactly: y^{4 nu} against the weight y^{-2nu+1} reproduces the y^{2nu+1}
// weight, so the transported integral equals the original one cell by cell.
struct ConjugatedAtom {
    Atom base;           // a~
    std::size_t d1 = 0;  // leading axes that stay classical
    double factor_min = 0.0, factor_max = 0.0;
    double integral_residual = 0.0;

    double evaluate(const Point& y) const {
        double f = 1.0;
        for (std::size_t i = d1; i < base.nu.dim(); ++i)
            f *= std::pow(y[i], 4.0 * base.nu.axes[i].nu);
        return f * base.evaluate(y);
    }
};

inline ConjugatedAtom conjugate_atom(const Atom& a_tilde, std::size_t d1) {
    ConjugatedAtom out;
    out.base = a_tilde;
    out.d1 = d1;
    const NuVector& nu = a_tilde.nu;
    const std::size_t d = nu.dim();
    if (d1 >= d)
        throw std::invalid_argument("conjugate_atom: need an exotic axis");

    const Cuboid& k = a_tilde.support();
    double ratio = 1.0, pow_lo = 1.0, pow_hi = 1.0;
    for (std::size_t i = d1; i < d; ++i) {
        const double ne = nu.axes[i].nu;
        if (!(ne > 0.0))
            throw std::domain_error("conjugate_atom: exotic axes need nu > 0");
        const Interval iv{k.lower(i), k.upper(i)};
        ratio *= measure_interval(-ne, iv) / measure_interval(ne, iv);
        pow_lo *= std::pow(k.lower(i), 4.0 * ne);
        pow_hi *= std::pow(k.upper(i), 4.0 * ne);
    }
    out.factor_min = ratio * pow_lo;
    out.factor_max = ratio * pow_hi;

    if (a_tilde.kind == AtomKind::Cancellative) {
        const GridFunction& g = a_tilde.grid;
        double s = 0.0;
        for (std::size_t c = 0; c < g.size(); ++c) {
            const auto idx = g.unflat(c);
            double m = 1.0;
            for (std::size_t ax = 0; ax < d; ++ax)
                m *= measure_interval(nu.axes[ax].nu,
                                      {g.axis_lower(ax, idx[ax]),
                                       g.axis_lower(ax, idx[ax] + 1)});
            s += g.values[c] * m;
        }
        out.integral_residual = std::abs(s);
    }
    return out;
}

}  // namespace bessel_hardy
