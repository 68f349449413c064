#pragma once

// Power-weight measures mu_nu, d mu_nu(x) = x^{2 nu + 1} dx per axis.
// +infinity is a first-class value here: in the exotic range the measure is
// not locally finite near the origin, and queries must report that rather
// than truncate.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bessel_hardy/geometry.hpp"

namespace bessel_hardy {

enum class AxisFlavor { Classical, Exotic };

struct NuAxis {
    double nu;  // Classical: nu > -1.  Exotic: stores nu_e > 0.
    AxisFlavor flavor = AxisFlavor::Classical;

    // Exponent actually weighting the axis measure: nu for classical axes,
    // -nu_e for exotic ones.
    double effective() const {
        return flavor == AxisFlavor::Classical ? nu : -nu;
    }
    double weight_exponent() const { return 2.0 * effective() + 1.0; }
};

struct NuVector {
    std::vector<NuAxis> axes;

    NuVector() = default;
    explicit NuVector(std::vector<NuAxis> a) : axes(std::move(a)) { validate(); }

    static NuVector classical(std::vector<double> nus) {
        NuVector v;
        for (double n : nus) v.axes.push_back({n, AxisFlavor::Classical});
        v.validate();
        return v;
    }

    void validate() const {
        for (const auto& ax : axes) {
            if (ax.flavor == AxisFlavor::Classical && !(ax.nu > -1.0))
                throw std::domain_error(
                    "NuVector: classical axis requires nu > -1, got " +
                    std::to_string(ax.nu));
            if (ax.flavor == AxisFlavor::Exotic && !(ax.nu > 0.0))
                throw std::domain_error(
                    "NuVector: exotic axis requires nu_e > 0, got " +
                    std::to_string(ax.nu));
        }
    }

    std::size_t dim() const { return axes.size(); }
};

struct Interval {
    double a, b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!(a >= 0.0) || !(b > a))
            throw std::domain_error("Interval: need 0 <= a < b");
    }
};

constexpr double kInfMeasure = std::numeric_limits<double>::infinity();

// integral of x^{2nu+1} over [a,b], by the antiderivative.  Infinite exactly
// when a = 0 and 2nu+2 <= 0.
inline double measure_interval(double nu, const Interval& iv) {
    const double p = 2.0 * nu + 2.0;
    if (iv.a == 0.0 && p <= 0.0) return kInfMeasure;
    if (nu == -1.0) return std::log(iv.b / iv.a);
    return (std::pow(iv.b, p) - std::pow(iv.a, p)) / p;
}

inline double measure_cuboid(const NuVector& nu, const Cuboid& q) {
    if (nu.dim() != q.dim())
        throw std::invalid_argument("measure_cuboid: dimension mismatch");
    double m = 1.0;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        const double v =
            measure_interval(nu.axes[i].effective(), {q.lower(i), q.upper(i)});
        if (std::isinf(v)) return kInfMeasure;
        m *= v;
    }
    return m;
}

// mu_nu(B(x,r) \cap R_+) in one dimension.
inline double measure_ball_exact(double nu, double x, double r) {
    if (!(x > 0.0) || !(r > 0.0))
        throw std::domain_error("measure_ball_exact: need x, r > 0");
    return measure_interval(nu, {std::max(x - r, 0.0), x + r});
}

// The comparable quantity from the ball-measure estimates:
//   nu > -1 : (1 ^ r/x)(x+r)^{2nu+2}
//   nu = -1 : log((x+r)/(x-r))          (needs r < x)
//   nu < -1 : (1 ^ r/x)(x-r)^{2nu+2}    (needs r < x)
inline double measure_ball_comparable(double nu, double x, double r) {
    if (!(x > 0.0) || !(r > 0.0))
        throw std::domain_error("measure_ball_comparable: need x, r > 0");
    if (nu <= -1.0 && !(r < x))
        throw std::domain_error(
            "measure_ball_comparable: case nu <= -1 requires r < x");
    const double cap = std::min(1.0, r / x);
    if (nu > -1.0) return cap * std::pow(x + r, 2.0 * nu + 2.0);
    if (nu == -1.0) return std::log((x + r) / (x - r));
    return cap * std::pow(x - r, 2.0 * nu + 2.0);
}

// Multidimensional comparable ball measure.  First regime (any nu):
// r^d prod x_j^{2nu_j+1}, valid for r < min_j x_j / 2.  Second regime
// (all axes classical): r^d prod (x_j+r)^{2nu_j+1}, valid for all r > 0.
inline double measure_ball_multidim_comparable(const NuVector& nu,
                                               const std::vector<double>& x,
                                               double r) {
    if (nu.dim() != x.size())
        throw std::invalid_argument(
            "measure_ball_multidim_comparable: dimension mismatch");
    if (!(r > 0.0))
        throw std::domain_error("measure_ball_multidim_comparable: r > 0");
    double xmin = kInfMeasure;
    bool all_classical = true;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0))
            throw std::domain_error(
                "measure_ball_multidim_comparable: x in open orthant");
        xmin = std::min(xmin, x[j]);
        if (nu.axes[j].effective() <= -1.0) all_classical = false;
    }
    double m = std::pow(r, static_cast<double>(x.size()));
    if (2.0 * r < xmin) {
        for (std::size_t j = 0; j < x.size(); ++j)
            m *= std::pow(x[j], nu.axes[j].weight_exponent());
        return m;
    }
    if (!all_classical)
        throw std::domain_error(
            "measure_ball_multidim_comparable: r >= min(x)/2 requires all "
            "classical axes");
    for (std::size_t j = 0; j < x.size(); ++j)
        m *= std::pow(x[j] + r, nu.axes[j].weight_exponent());
    return m;
}

}  // namespace bessel_hardy
