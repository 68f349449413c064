#pragma once

// Piecewise-constant grid functions on a cuboid, uniform cells per axis.
// Quadrature against mu_nu is exact cell-by-cell via the antiderivative, so
// atoms built from these carry no sampling error in their certificates.

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bessel_hardy/geometry.hpp"
#include "bessel_hardy/measure.hpp"

namespace bessel_hardy {

struct GridFunction {
    Cuboid domain;
    std::vector<int> cells;       // per-axis cell count
    NuVector nu;
    std::vector<double> values;   // row-major, axis 0 slowest

    GridFunction() = default;
    GridFunction(Cuboid dom, std::vector<int> n, NuVector measure)
        : domain(std::move(dom)), cells(std::move(n)), nu(std::move(measure)) {
        if (cells.size() != domain.dim() || nu.dim() != domain.dim())
            throw std::invalid_argument("GridFunction: dimension mismatch");
        std::size_t total = 1;
        for (int c : cells) {
            if (c <= 0) throw std::invalid_argument("GridFunction: cells > 0");
            total *= static_cast<std::size_t>(c);
        }
        values.assign(total, 0.0);
        cache_axis_measures();
    }

    std::size_t dim() const { return domain.dim(); }
    std::size_t size() const { return values.size(); }

    double axis_width(std::size_t ax) const {
        return 2.0 * domain.radii[ax] / cells[ax];
    }
    double axis_lower(std::size_t ax, int i) const {
        return domain.lower(ax) + i * axis_width(ax);
    }
    double axis_center(std::size_t ax, int i) const {
        return domain.lower(ax) + (i + 0.5) * axis_width(ax);
    }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (std::size_t ax = 0; ax < dim(); ++ax)
            f = f * cells[ax] + idx[ax];
        return f;
    }
    std::vector<int> unflat(std::size_t f) const {
        std::vector<int> idx(dim());
        for (std::size_t ax = dim(); ax-- > 0;) {
            idx[ax] = static_cast<int>(f % cells[ax]);
            f /= cells[ax];
        }
        return idx;
    }

    Cuboid cell_box(const std::vector<int>& idx) const {
        Point z(dim());
        std::vector<double> r(dim());
        for (std::size_t ax = 0; ax < dim(); ++ax) {
            r[ax] = 0.5 * axis_width(ax);
            z[ax] = axis_center(ax, idx[ax]);
        }
        return Cuboid(std::move(z), std::move(r));
    }

    Point cell_center(std::size_t f) const {
        const auto idx = unflat(f);
        Point p(dim());
        for (std::size_t ax = 0; ax < dim(); ++ax) p[ax] = axis_center(ax, idx[ax]);
        return p;
    }

    double cell_measure(std::size_t f) const {
        const auto idx = unflat(f);
        double m = 1.0;
        for (std::size_t ax = 0; ax < dim(); ++ax)
            m *= axis_measures_[ax][idx[ax]];
        return m;
    }

    // Piecewise-constant evaluation; 0 outside the domain.  Points exactly on
    // an interior cell boundary read from the lower cell.
    double value_at(const Point& x) const {
        std::vector<int> idx(dim());
        for (std::size_t ax = 0; ax < dim(); ++ax) {
            if (x[ax] < domain.lower(ax) || x[ax] > domain.upper(ax)) return 0.0;
            const double t = (x[ax] - domain.lower(ax)) / axis_width(ax);
            int i = static_cast<int>(std::floor(t));
            if (i > 0 && static_cast<double>(i) == t) --i;
            idx[ax] = std::min(i, cells[ax] - 1);
        }
        return values[flat(idx)];
    }

    double integral_mu() const {
        double s = 0.0;
        for (std::size_t f = 0; f < size(); ++f)
            s += values[f] * cell_measure(f);
        return s;
    }

    double l1_mu() const {
        double s = 0.0;
        for (std::size_t f = 0; f < size(); ++f)
            s += std::abs(values[f]) * cell_measure(f);
        return s;
    }

    double sup_norm() const {
        double s = 0.0;
        for (double v : values) s = std::max(s, std::abs(v));
        return s;
    }

    // Bounding box of nonzero cells; nullopt-like false when identically 0.
    bool support_box(Cuboid& out) const {
        std::vector<int> lo(dim(), std::numeric_limits<int>::max());
        std::vector<int> hi(dim(), -1);
        for (std::size_t f = 0; f < size(); ++f) {
            if (values[f] == 0.0) continue;
            const auto idx = unflat(f);
            for (std::size_t ax = 0; ax < dim(); ++ax) {
                lo[ax] = std::min(lo[ax], idx[ax]);
                hi[ax] = std::max(hi[ax], idx[ax]);
            }
        }
        if (hi[0] < 0) return false;
        Point a(dim()), b(dim());
        for (std::size_t ax = 0; ax < dim(); ++ax) {
            a[ax] = axis_lower(ax, lo[ax]);
            b[ax] = axis_lower(ax, hi[ax] + 1);
        }
        out = Cuboid::from_corners(a, b);
        return true;
    }

private:
    void cache_axis_measures() {
        axis_measures_.resize(dim());
        for (std::size_t ax = 0; ax < dim(); ++ax) {
            axis_measures_[ax].resize(cells[ax]);
            for (int i = 0; i < cells[ax]; ++i)
                axis_measures_[ax][i] = measure_interval(
                    nu.axes[ax].effective(),
                    {axis_lower(ax, i), axis_lower(ax, i + 1)});
        }
    }

    std::vector<std::vector<double>> axis_measures_;
};

}  // namespace bessel_hardy
