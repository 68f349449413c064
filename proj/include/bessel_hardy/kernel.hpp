#pragma once

// One-dimensional Bessel heat kernels (classical W, exotic W, conjugated K),
// their multidimensional products, and the Gaussian envelope used by the
// condition checkers.
//
// Every branch folds the e^{+xy/2t} factor hidden in I_nu into the Gaussian
// analytically, so the exponent evaluated is -(x-y)^2/4t and nothing
// overflows on large grids.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bessel_hardy/measure.hpp"
#include "bessel_hardy/specfun.hpp"

namespace bessel_hardy {

enum class KernelBranch { ClassicalW, ExoticW, ConjugatedK };

struct KernelAxis {
    double nu;  // ClassicalW: nu > -1.  ExoticW / ConjugatedK: nu > 0.
    KernelBranch branch = KernelBranch::ClassicalW;
};

struct KernelSpec {
    std::vector<KernelAxis> axes;

    KernelSpec() = default;
    explicit KernelSpec(std::vector<KernelAxis> a) : axes(std::move(a)) {
        for (const auto& ax : axes) {
            if (ax.branch == KernelBranch::ClassicalW && !(ax.nu > -1.0))
                throw std::domain_error("KernelSpec: classical axis needs nu > -1");
            if (ax.branch != KernelBranch::ClassicalW && !(ax.nu > 0.0))
                throw std::domain_error("KernelSpec: exotic/conjugated axis needs nu > 0");
        }
    }

    static KernelSpec classical_1d(double nu) {
        return KernelSpec({{nu, KernelBranch::ClassicalW}});
    }
    static KernelSpec conjugated_1d(double nu) {
        return KernelSpec({{nu, KernelBranch::ConjugatedK}});
    }

    std::size_t dim() const { return axes.size(); }

    // Measure each branch integrates against: nu for classical axes,
    // -nu_e for exotic ones, +nu_e for the conjugated kernel.
    NuVector measure_nu() const {
        NuVector v;
        for (const auto& ax : axes) {
            if (ax.branch == KernelBranch::ExoticW)
                v.axes.push_back({ax.nu, AxisFlavor::Exotic});
            else
                v.axes.push_back({ax.nu, AxisFlavor::Classical});
        }
        return v;
    }
};

namespace detail {
inline void check_kernel_args(double t, double x, double y) {
    if (!(t > 0.0) || !(x > 0.0) || !(y > 0.0))
        throw std::domain_error("kernel: t, x, y must be > 0");
}
}  // namespace detail

// log W^cls_{t,nu}(x,y) = log[(2t)^{-1} (xy)^{-nu} I_nu(xy/2t) e^{-(x^2+y^2)/4t}]
inline double log_w_classical_1d(double nu, double t, double x, double y) {
    detail::check_kernel_args(t, x, y);
    const double z = x * y / (2.0 * t);
    const double d = x - y;
    return -std::log(2.0 * t) - nu * std::log(x * y) +
           log_bessel_i_scaled(nu, z) - d * d / (4.0 * t);
}

inline double w_classical_1d(double nu, double t, double x, double y) {
    return std::exp(log_w_classical_1d(nu, t, x, y));
}

// W^exo_{t,-nu_e}(x,y) = (xy)^{2 nu_e} W^cls_{t,nu_e}(x,y)
inline double log_w_exotic_1d(double nu_e, double t, double x, double y) {
    if (!(nu_e > 0.0)) throw std::domain_error("w_exotic_1d: nu_e > 0");
    return 2.0 * nu_e * std::log(x * y) + log_w_classical_1d(nu_e, t, x, y);
}

inline double w_exotic_1d(double nu_e, double t, double x, double y) {
    return std::exp(log_w_exotic_1d(nu_e, t, x, y));
}

// K_{t,nu}(x,y) = (2t)^{-1} y^nu x^{-3nu} I_nu(xy/2t) e^{-(x^2+y^2)/4t}
//              = (y/x)^{2nu} W^cls_{t,nu}(x,y)
inline double log_k_conjugated_1d(double nu, double t, double x, double y) {
    if (!(nu > 0.0)) throw std::domain_error("k_conjugated_1d: nu > 0");
    return 2.0 * nu * (std::log(y) - std::log(x)) +
           log_w_classical_1d(nu, t, x, y);
}

inline double k_conjugated_1d(double nu, double t, double x, double y) {
    return std::exp(log_k_conjugated_1d(nu, t, x, y));
}

inline double log_kernel_1d(const KernelAxis& ax, double t, double x, double y) {
    switch (ax.branch) {
        case KernelBranch::ClassicalW: return log_w_classical_1d(ax.nu, t, x, y);
        case KernelBranch::ExoticW: return log_w_exotic_1d(ax.nu, t, x, y);
        case KernelBranch::ConjugatedK: return log_k_conjugated_1d(ax.nu, t, x, y);
    }
    throw std::logic_error("unreachable");
}

inline double kernel_1d(const KernelAxis& ax, double t, double x, double y) {
    return std::exp(log_kernel_1d(ax, t, x, y));
}

inline double kernel_product(const KernelSpec& spec, double t, const Point& x,
                             const Point& y) {
    if (spec.dim() != x.size() || spec.dim() != y.size())
        throw std::invalid_argument("kernel_product: dimension mismatch");
    double lg = 0.0;
    for (std::size_t i = 0; i < spec.dim(); ++i)
        lg += log_kernel_1d(spec.axes[i], t, x[i], y[i]);
    return std::exp(lg);
}

struct GaussianEnvelope {
    double bigC;    // C
    double littleC; // c

    GaussianEnvelope(double C, double c) : bigC(C), littleC(c) {
        if (!(C > 0.0) || !(c > 0.0))
            throw std::domain_error("GaussianEnvelope: constants must be > 0");
    }
};

struct EnvelopeValue {
    double value = 0.0;
    bool infinite_measure = false;  // ball had infinite mu_nu measure
};

// C mu_nu(B(x, sqrt t))^{-1} exp(-|x-y|^2 / (c t)), with the ball measure
// taken exactly per axis.  An infinite-measure ball cannot bound anything;
// we return 0 with a flag.
inline EnvelopeValue gaussian_envelope(const NuVector& nu,
                                       const GaussianEnvelope& env, double t,
                                       const Point& x, const Point& y) {
    if (nu.dim() != x.size() || nu.dim() != y.size())
        throw std::invalid_argument("gaussian_envelope: dimension mismatch");
    if (!(t > 0.0)) throw std::domain_error("gaussian_envelope: t > 0");
    const double rt = std::sqrt(t);
    double log_ball = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double m = measure_ball_exact(nu.axes[i].effective(), x[i], rt);
        if (std::isinf(m)) return {0.0, true};
        log_ball += std::log(m);
    }
    const double v = std::exp(std::log(env.bigC) - log_ball -
                              sq_distance(x, y) / (env.littleC * t));
    return {v, false};
}

}  // namespace bessel_hardy
