#pragma once

// Admissible coverings of the positive orthant: the dyadic covering of R_+,
// the box product (re-tiling the coarser factor to the finer factor's
// diameter), cylinder coverings R_+^{d1} x Q2, and the partition of unity
// subordinate to the kappa-enlargements.
//
// Coverings are countably infinite; all queries work through bounded
// windows.  Cells carry an integer key; boundary ties in locate() go to the
// lexicographically smallest key.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bessel_hardy/geometry.hpp"

namespace bessel_hardy {

using CellKey = std::vector<long long>;

struct Cell {
    CellKey key;
    Cuboid box;
};

inline bool operator==(const Cell& a, const Cell& b) { return a.key == b.key; }

class Covering {
public:
    virtual ~Covering() = default;

    virtual std::size_t dim() const = 0;
    virtual std::size_t key_size() const = 0;
    virtual Cell locate(const Point& x) const = 0;
    // All cells whose closed box meets the closed box [lo, hi].
    virtual void cells_intersecting(const Point& lo, const Point& hi,
                                    std::vector<Cell>& out) const = 0;

    double kappa() const { return kappa_; }
    void set_kappa(double k) {
        if (!(k > 1.0)) throw std::domain_error("Covering: kappa > 1");
        kappa_ = k;
    }

    std::vector<Cell> cells_in(const Cuboid& window) const {
        Point lo(window.dim()), hi(window.dim());
        for (std::size_t i = 0; i < window.dim(); ++i) {
            lo[i] = window.lower(i);
            hi[i] = window.upper(i);
        }
        std::vector<Cell> out;
        cells_intersecting(lo, hi, out);
        return out;
    }

    // N(Q) = { C : C*** meets Q*** }; finite, contains Q.
    std::vector<Cell> neighbors(const Cell& q) const {
        const double k3 = std::pow(kappa_, 3);
        const Cuboid qs = q.box.star(kappa_, 3);
        Point lo(dim()), hi(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            const double margin = (k3 - 1.0) * 8.0 * q.box.radii[i];
            lo[i] = std::max(qs.lower(i) - margin, 1e-15 * q.box.radii[i]);
            hi[i] = qs.upper(i) + margin;
        }
        std::vector<Cell> cand;
        cells_intersecting(lo, hi, cand);
        std::vector<Cell> out;
        for (auto& c : cand)
            if (c.box.star(kappa_, 3).intersects(qs)) out.push_back(std::move(c));
        return out;
    }

    // Cells whose kappa-enlargement contains x (the psi_Q supporters).
    std::vector<Cell> supporters(const Point& x) const {
        const Cell q0 = locate(x);
        // x in Q* needs dist(x, Q) <= (kappa-1) r_Q; neighbor radii are
        // comparable to q0's, so a small collar box finds every candidate
        Point lo(dim()), hi(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            const double margin = (kappa_ - 1.0) * 8.0 * q0.box.radii[i];
            lo[i] = std::max(x[i] - margin, 1e-15 * q0.box.radii[i]);
            hi[i] = x[i] + margin;
        }
        std::vector<Cell> cand;
        cells_intersecting(lo, hi, cand);
        std::vector<Cell> out;
        for (auto& c : cand)
            if (c.box.star(kappa_).contains(x)) out.push_back(std::move(c));
        return out;
    }

    // C^1 plateau bump: 1 on Q, smoothstep ramp down across the kappa-collar.
    double bump(const Cell& q, const Point& x) const {
        double v = 1.0;
        for (std::size_t i = 0; i < dim(); ++i) {
            const double lo = q.box.lower(i), hi = q.box.upper(i);
            const double w = (kappa_ - 1.0) * q.box.radii[i];
            double u;
            if (x[i] >= lo && x[i] <= hi) {
                continue;
            } else if (x[i] > hi && x[i] <= hi + w) {
                u = (hi + w - x[i]) / w;
            } else if (x[i] < lo && x[i] >= lo - w) {
                u = (x[i] - (lo - w)) / w;
            } else {
                return 0.0;
            }
            v *= u * u * (3.0 - 2.0 * u);
        }
        return v;
    }

    // psi_Q(x) = bump_Q(x) / sum of supporter bumps.  The denominator is
    // >= 1 because x lies inside its own cell, so the family sums to 1.
    double psi(const Cell& q, const Point& x) const {
        const double b = bump(q, x);
        if (b == 0.0) return 0.0;
        double denom = 0.0;
        for (const auto& c : supporters(x)) denom += bump(c, x);
        return b / denom;
    }

protected:
    double kappa_ = 17.0 / 16.0;
};

using CoveringPtr = std::shared_ptr<const Covering>;

// ---------------------------------------------------------------------------
// D = { [2^n, 2^{n+1}] : n in Z }
// ---------------------------------------------------------------------------

class DyadicCovering1D final : public Covering {
public:
    std::size_t dim() const override { return 1; }
    std::size_t key_size() const override { return 1; }

    static Cell make_cell(long long n) {
        const double lo = std::ldexp(1.0, static_cast<int>(n));
        return {{n}, Cuboid({1.5 * lo}, {0.5 * lo})};
    }

    Cell locate(const Point& x) const override {
        if (!(x[0] > 0.0)) throw std::domain_error("locate: x > 0");
        int e;
        const double m = std::frexp(x[0], &e);  // x = m 2^e, m in [0.5, 1)
        long long n = e - 1;
        if (m == 0.5 && n > std::numeric_limits<int>::min()) --n;  // boundary tie
        return make_cell(n);
    }

    void cells_intersecting(const Point& lo, const Point& hi,
                            std::vector<Cell>& out) const override {
        double a = lo[0], b = hi[0];
        if (!(b > 0.0)) return;
        a = std::max(a, b * 0x1p-62);
        const long long n0 = static_cast<long long>(std::floor(std::log2(a))) - 1;
        const long long n1 = static_cast<long long>(std::floor(std::log2(b))) + 1;
        for (long long n = n0; n <= n1; ++n) {
            Cell c = make_cell(n);
            if (c.box.upper(0) >= a && c.box.lower(0) <= b) out.push_back(std::move(c));
        }
    }
};

inline CoveringPtr dyadic_covering_1d() {
    return std::make_shared<DyadicCovering1D>();
}

// ---------------------------------------------------------------------------
// Box product Q1 (x) Q2: per pair of factor cells the coarser one is re-tiled
// into congruent pieces of per-axis width <= the finer diameter.
// ---------------------------------------------------------------------------

class BoxProductCovering final : public Covering {
public:
    BoxProductCovering(CoveringPtr a, CoveringPtr b)
        : a_(std::move(a)), b_(std::move(b)) {}

    std::size_t dim() const override { return a_->dim() + b_->dim(); }
    std::size_t key_size() const override {
        return a_->key_size() + b_->key_size() + dim();
    }

    Cell locate(const Point& x) const override {
        const auto [xa, xb] = split_point(x);
        const Cell ca = a_->locate(xa), cb = b_->locate(xb);
        const Split s = split_of(ca, cb);
        std::vector<long long> j(dim(), 0);
        const Cuboid& coarse = s.coarse_is_a ? ca.box : cb.box;
        const std::size_t off = s.coarse_is_a ? 0 : a_->dim();
        for (std::size_t i = 0; i < coarse.dim(); ++i) {
            const double w = 2.0 * coarse.radii[i] / s.pieces[i];
            double t = (x[off + i] - coarse.lower(i)) / w;
            long long ji = static_cast<long long>(std::floor(t));
            if (ji > 0 && static_cast<double>(ji) == t) --ji;  // boundary tie
            j[off + i] = std::clamp(ji, 0LL, s.pieces[i] - 1);
        }
        return assemble(ca, cb, s, j);
    }

    void cells_intersecting(const Point& lo, const Point& hi,
                            std::vector<Cell>& out) const override {
        const auto [loa, lob] = split_point(lo);
        const auto [hia, hib] = split_point(hi);
        std::vector<Cell> ca, cb;
        a_->cells_intersecting(loa, hia, ca);
        b_->cells_intersecting(lob, hib, cb);
        for (const auto& qa : ca) {
            for (const auto& qb : cb) {
                const Split s = split_of(qa, qb);
                const Cuboid& coarse = s.coarse_is_a ? qa.box : qb.box;
                const std::size_t off = s.coarse_is_a ? 0 : a_->dim();
                // j ranges per coarse axis clipped to the query box
                std::vector<long long> jlo(coarse.dim()), jhi(coarse.dim());
                bool empty = false;
                for (std::size_t i = 0; i < coarse.dim(); ++i) {
                    const double w = 2.0 * coarse.radii[i] / s.pieces[i];
                    long long l = static_cast<long long>(
                        std::floor((lo[off + i] - coarse.lower(i)) / w));
                    long long h = static_cast<long long>(
                        std::ceil((hi[off + i] - coarse.lower(i)) / w));
                    l = std::clamp(l, 0LL, s.pieces[i] - 1);
                    h = std::clamp(h, 0LL, s.pieces[i] - 1);
                    if (l > h) empty = true;
                    jlo[i] = l;
                    jhi[i] = h;
                }
                if (empty) continue;
                std::vector<long long> j(dim(), 0);
                enumerate(qa, qb, s, jlo, jhi, 0, j, lo, hi, out);
            }
        }
    }

private:
    struct Split {
        bool coarse_is_a;
        std::vector<long long> pieces;  // per coarse axis
    };

    std::pair<Point, Point> split_point(const Point& x) const {
        Point xa(x.begin(), x.begin() + a_->dim());
        Point xb(x.begin() + a_->dim(), x.end());
        return {std::move(xa), std::move(xb)};
    }

    Split split_of(const Cell& qa, const Cell& qb) const {
        const double da = qa.box.diameter(), db = qb.box.diameter();
        Split s;
        s.coarse_is_a = da > db * (1.0 + 1e-12);
        const Cuboid& coarse = s.coarse_is_a ? qa.box : qb.box;
        const double target = s.coarse_is_a ? db : da;
        const bool no_split =
            !s.coarse_is_a && !(db > da * (1.0 + 1e-12));  // equal diameters
        s.pieces.resize(coarse.dim());
        for (std::size_t i = 0; i < coarse.dim(); ++i) {
            const double w = 2.0 * coarse.radii[i];
            const long long need = no_split
                                       ? 1
                                       : std::max<long long>(
                                             1, static_cast<long long>(
                                                    std::ceil(w / target - 1e-9)));
            // round up to a power of two so splits of the same coarse cell
            // against different partners have nested piece boundaries; gaps
            // between disjoint pieces then stay comparable to piece widths
            s.pieces[i] = static_cast<long long>(
                std::bit_ceil(static_cast<unsigned long long>(need)));
        }
        return s;
    }

    Cell assemble(const Cell& qa, const Cell& qb, const Split& s,
                  const std::vector<long long>& j) const {
        CellKey key;
        key.reserve(key_size());
        key.insert(key.end(), qa.key.begin(), qa.key.end());
        key.insert(key.end(), qb.key.begin(), qb.key.end());
        key.insert(key.end(), j.begin(), j.end());
        Point z;
        std::vector<double> r;
        z.reserve(dim());
        r.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            const bool in_a = i < a_->dim();
            const Cuboid& src = in_a ? qa.box : qb.box;
            const std::size_t li = in_a ? i : i - a_->dim();
            const bool split_here = (s.coarse_is_a == in_a);
            if (split_here) {
                const long long m = s.pieces[li];
                const double w = 2.0 * src.radii[li] / m;
                z.push_back(src.lower(li) + (j[i] + 0.5) * w);
                r.push_back(0.5 * w);
            } else {
                z.push_back(src.center[li]);
                r.push_back(src.radii[li]);
            }
        }
        return {std::move(key), Cuboid(std::move(z), std::move(r))};
    }

    void enumerate(const Cell& qa, const Cell& qb, const Split& s,
                   const std::vector<long long>& jlo,
                   const std::vector<long long>& jhi, std::size_t axis,
                   std::vector<long long>& j, const Point& lo, const Point& hi,
                   std::vector<Cell>& out) const {
        const std::size_t off = s.coarse_is_a ? 0 : a_->dim();
        if (axis == jlo.size()) {
            Cell c = assemble(qa, qb, s, j);
            bool ok = true;
            for (std::size_t i = 0; i < dim() && ok; ++i)
                ok = c.box.upper(i) >= lo[i] && c.box.lower(i) <= hi[i];
            if (ok) out.push_back(std::move(c));
            return;
        }
        for (long long v = jlo[axis]; v <= jhi[axis]; ++v) {
            j[off + axis] = v;
            enumerate(qa, qb, s, jlo, jhi, axis + 1, j, lo, hi, out);
        }
    }

    CoveringPtr a_, b_;
};

inline CoveringPtr box_product(CoveringPtr a, CoveringPtr b) {
    return std::make_shared<BoxProductCovering>(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Cylinder covering: each R_+^{d1} x Q2 is tiled by cubes of side d_{Q2}.
// ---------------------------------------------------------------------------

class CylinderCovering final : public Covering {
public:
    CylinderCovering(std::size_t d1, CoveringPtr inner)
        : d1_(d1), inner_(std::move(inner)) {
        if (d1_ == 0)
            throw std::invalid_argument(
                "CylinderCovering: use cylinder_covering() for d1 = 0");
    }

    std::size_t dim() const override { return d1_ + inner_->dim(); }
    std::size_t key_size() const override { return d1_ + inner_->key_size(); }

    Cell locate(const Point& x) const override {
        const Point x2(x.begin() + d1_, x.end());
        const Cell c2 = inner_->locate(x2);
        const double s = c2.box.diameter();
        std::vector<long long> k(d1_);
        for (std::size_t i = 0; i < d1_; ++i) {
            const double t = x[i] / s;
            long long ki = static_cast<long long>(std::floor(t));
            if (ki > 0 && static_cast<double>(ki) == t) --ki;
            k[i] = std::max(ki, 0LL);
        }
        return assemble(k, c2);
    }

    void cells_intersecting(const Point& lo, const Point& hi,
                            std::vector<Cell>& out) const override {
        const Point lo2(lo.begin() + d1_, lo.end());
        const Point hi2(hi.begin() + d1_, hi.end());
        std::vector<Cell> inner_cells;
        inner_->cells_intersecting(lo2, hi2, inner_cells);
        for (const auto& c2 : inner_cells) {
            const double s = c2.box.diameter();
            std::vector<long long> klo(d1_), khi(d1_);
            bool empty = false;
            for (std::size_t i = 0; i < d1_; ++i) {
                klo[i] = std::max<long long>(
                    0, static_cast<long long>(std::floor(lo[i] / s)));
                khi[i] = std::max<long long>(
                    0, static_cast<long long>(std::floor(hi[i] / s)));
                if (static_cast<double>(khi[i]) * s == hi[i] && khi[i] > 0)
                    --khi[i];
                if (klo[i] > khi[i]) empty = true;
            }
            if (empty) continue;
            std::vector<long long> k(d1_);
            enumerate(c2, klo, khi, 0, k, out);
        }
    }

private:
    Cell assemble(const std::vector<long long>& k, const Cell& c2) const {
        const double s = c2.box.diameter();
        CellKey key;
        key.reserve(key_size());
        key.insert(key.end(), k.begin(), k.end());
        key.insert(key.end(), c2.key.begin(), c2.key.end());
        Point z;
        std::vector<double> r;
        for (std::size_t i = 0; i < d1_; ++i) {
            z.push_back((k[i] + 0.5) * s);
            r.push_back(0.5 * s);
        }
        for (std::size_t i = 0; i < inner_->dim(); ++i) {
            z.push_back(c2.box.center[i]);
            r.push_back(c2.box.radii[i]);
        }
        return {std::move(key), Cuboid(std::move(z), std::move(r))};
    }

    void enumerate(const Cell& c2, const std::vector<long long>& klo,
                   const std::vector<long long>& khi, std::size_t axis,
                   std::vector<long long>& k, std::vector<Cell>& out) const {
        if (axis == d1_) {
            out.push_back(assemble(k, c2));
            return;
        }
        for (long long v = klo[axis]; v <= khi[axis]; ++v) {
            k[axis] = v;
            enumerate(c2, klo, khi, axis + 1, k, out);
        }
    }

    std::size_t d1_;
    CoveringPtr inner_;
};

inline CoveringPtr cylinder_covering(std::size_t d1, CoveringPtr inner) {
    if (d1 == 0) return inner;
    return std::make_shared<CylinderCovering>(d1, std::move(inner));
}

// The covering Q_B for the mixed classical/exotic operator: cylinders over
// the d2-fold dyadic box product, tiled into cubes.
inline CoveringPtr qb_covering(std::size_t d1, std::size_t d2) {
    if (d2 == 0) throw std::invalid_argument("qb_covering: d2 >= 1");
    CoveringPtr q = dyadic_covering_1d();
    for (std::size_t i = 1; i < d2; ++i) q = box_product(q, dyadic_covering_1d());
    return cylinder_covering(d1, q);
}

}  // namespace bessel_hardy
