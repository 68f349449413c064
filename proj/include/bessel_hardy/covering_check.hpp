#pragma once

// Numerical validation of the admissible-covering axioms over a bounded
// window: covered sampling, interior disjointness, radius comparability
// within a cuboid (C1), diameter comparability of intersecting cuboids (C2),
// the star-3 intersection equivalence, bounded overlap of the triple
// enlargements, and the partition-of-unity sum.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "bessel_hardy/covering.hpp"

namespace bessel_hardy {

struct CoveringReport {
    std::vector<std::string> violations;
    double c1 = 1.0;             // max r_i / r_j within a cuboid
    double c2 = 1.0;             // max diameter ratio over intersecting pairs
    int max_overlap = 0;         // max count of triple enlargements at a point
    int max_neighbors = 0;
    double partition_error = 0.0;  // max |sum psi - 1| over sampled points
    std::size_t cells_checked = 0;
    bool pairs_exhaustive = true;  // false when the pair sweep was strided
    bool valid() const { return violations.empty(); }
};

namespace detail {

// Largest per-axis gap between closed boxes; <= 0 means they intersect.
inline double box_gap(const Cuboid& a, const Cuboid& b) {
    double g = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.dim(); ++i)
        g = std::max(g, std::max(b.lower(i) - a.upper(i),
                                 a.lower(i) - b.upper(i)));
    return g;
}

}  // namespace detail

inline CoveringReport check_covering(const Covering& cov, const Cuboid& window,
                                     const std::vector<Cell>& cells,
                                     int n_points = 10000,
                                     std::uint64_t seed = 1) {
    CoveringReport rep;
    const std::size_t d = cov.dim();
    rep.cells_checked = cells.size();
    if (cells.empty()) {
        rep.violations.push_back("window: no cells found");
        return rep;
    }

    double min_radius = std::numeric_limits<double>::infinity();
    for (const auto& q : cells) {
        double rmin = q.box.radii[0], rmax = q.box.radii[0];
        for (double r : q.box.radii) {
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        rep.c1 = std::max(rep.c1, rmax / rmin);
        min_radius = std::min(min_radius, rmin);
    }
    const double tol = 1e-9 * min_radius;

    // Pair checks run against each cell's star-3 neighborhood: any pair that
    // could violate disjointness, C2, or the star-3 equivalence is a neighbor
    // pair, so this sweep is exhaustive yet linear in the cell count.
    const std::size_t stride =
        cells.size() > 50000 ? cells.size() / 50000 + 1 : 1;
    rep.pairs_exhaustive = stride == 1;
    for (std::size_t i = 0; i < cells.size(); i += stride) {
        for (const auto& nb : cov.neighbors(cells[i])) {
            if (!(cells[i].key < nb.key)) continue;  // each pair once
            const Cuboid& a = cells[i].box;
            const Cuboid& b = nb.box;
            const double gap = detail::box_gap(a, b);
            if (gap <= tol) {
                // touching or overlapping: interiors must stay disjoint and
                // diameters comparable
                const double va = a.intersection_volume(b);
                double vol_tol = tol;
                for (std::size_t ax = 1; ax < d; ++ax)
                    vol_tol *= 2.0 * std::max(a.radii[ax], b.radii[ax]);
                if (va > vol_tol && rep.violations.size() < 32)
                    rep.violations.push_back("disjointness: interiors overlap");
                const double r = a.diameter() / b.diameter();
                rep.c2 = std::max(rep.c2, std::max(r, 1.0 / r));
            }
            // star-3 equivalence: enlargements may meet only if the cuboids do
            const double gap3 =
                detail::box_gap(a.star(cov.kappa(), 3), b.star(cov.kappa(), 3));
            if (gap > tol && gap3 <= -tol && rep.violations.size() < 32)
                rep.violations.push_back(
                    "star-3: enlargements of disjoint cuboids intersect");
            if (gap <= -tol && gap3 > tol && rep.violations.size() < 32)
                rep.violations.push_back(
                    "star-3: enlargements of intersecting cuboids are disjoint");
        }
    }

    // shrink the sampling window so enlargements reaching a sample point
    // always come from cells inside the enumeration window
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int p = 0; p < n_points; ++p) {
        Point x(d);
        for (std::size_t i = 0; i < d; ++i)
            x[i] = window.lower(i) +
                   unif(rng) * (window.upper(i) - window.lower(i));

        const Cell home = cov.locate(x);
        if (!home.box.contains(x, tol))
            rep.violations.push_back("covered: locate() misses the point");

        // neighbor enumeration dominates the cost; bound it separately
        if (p < 2000) {
            const auto nbs = cov.neighbors(home);
            int overlap = 0;
            for (const auto& n : nbs)
                if (n.box.star(cov.kappa(), 3).contains(x)) ++overlap;
            rep.max_overlap = std::max(rep.max_overlap, overlap);
            rep.max_neighbors =
                std::max(rep.max_neighbors, static_cast<int>(nbs.size()));
        }

        // psi_Q = bump_Q / (sum of supporter bumps); evaluate all supporters
        // against one shared denominator, as psi() itself does
        const auto sup = cov.supporters(x);
        double denom = 0.0;
        for (const auto& q : sup) denom += cov.bump(q, x);
        if (!(denom > 0.0)) {
            if (rep.violations.size() < 32)
                rep.violations.push_back("partition: no supporter at a point");
            continue;
        }
        double s = 0.0;
        for (const auto& q : sup) s += cov.bump(q, x) / denom;
        rep.partition_error = std::max(rep.partition_error, std::abs(s - 1.0));
    }
    return rep;
}

inline CoveringReport check_covering(const Covering& cov, const Cuboid& window,
                                     int n_points = 10000,
                                     std::uint64_t seed = 1) {
    return check_covering(cov, window, cov.cells_in(window), n_points, seed);
}

}  // namespace bessel_hardy
