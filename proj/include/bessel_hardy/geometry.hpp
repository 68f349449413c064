#pragma once

// Axis-aligned cuboids in the closed positive orthant, with the enlargement
// calculus used by admissible coverings.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bessel_hardy {

using Point = std::vector<double>;

struct Cuboid {
    Point center;
    std::vector<double> radii;

    Cuboid() = default;
    Cuboid(Point z, std::vector<double> r) : center(std::move(z)), radii(std::move(r)) {
        if (center.size() != radii.size())
            throw std::invalid_argument("Cuboid: center/radii size mismatch");
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!(radii[i] > 0.0)) throw std::invalid_argument("Cuboid: radii > 0");
            if (lower(i) < -1e-12 * radii[i])
                throw std::invalid_argument("Cuboid: must lie in closed orthant");
        }
    }

    static Cuboid from_corners(const Point& lo, const Point& hi) {
        Point z(lo.size());
        std::vector<double> r(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            z[i] = 0.5 * (lo[i] + hi[i]);
            r[i] = 0.5 * (hi[i] - lo[i]);
        }
        return Cuboid(std::move(z), std::move(r));
    }

    std::size_t dim() const { return center.size(); }
    double lower(std::size_t i) const { return center[i] - radii[i]; }
    double upper(std::size_t i) const { return center[i] + radii[i]; }

    // Euclidean diameter 2 |r|.
    double diameter() const {
        double s = 0.0;
        for (double r : radii) s += r * r;
        return 2.0 * std::sqrt(s);
    }

    // Q^{*k}: every radius scaled by kappa^k.
    Cuboid star(double kappa, int k = 1) const {
        Cuboid q = *this;
        const double f = std::pow(kappa, k);
        for (auto& r : q.radii) r *= f;
        return q;
    }

    bool contains(const Point& x, double tol = 0.0) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (x[i] < lower(i) - tol || x[i] > upper(i) + tol) return false;
        return true;
    }

    bool intersects(const Cuboid& o) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (upper(i) < o.lower(i) || o.upper(i) < lower(i)) return false;
        return true;
    }

    // Positive iff the closed intersection has nonempty interior.
    double intersection_volume(const Cuboid& o) const {
        double v = 1.0;
        for (std::size_t i = 0; i < dim(); ++i) {
            const double w = std::min(upper(i), o.upper(i)) -
                             std::max(lower(i), o.lower(i));
            if (w <= 0.0) return 0.0;
            v *= w;
        }
        return v;
    }
};

inline double sq_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

}  // namespace bessel_hardy
