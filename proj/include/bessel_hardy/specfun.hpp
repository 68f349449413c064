#pragma once

// Modified Bessel function of the first kind I_tau and the Gamma function.
// These are the only special functions the heat kernels need.  Everything is
// evaluated overflow-safely: kernel code should prefer the scaled/log
// variants and fold the exponential factors analytically.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bessel_hardy {

// Admissible Bessel order, tau > -1.
struct BesselOrder {
    double tau;

    explicit BesselOrder(double t) : tau(t) {
        if (!(t > -1.0))
            throw std::domain_error("BesselOrder: tau must be > -1, got " +
                                    std::to_string(t));
    }
};

inline double gamma_fn(double z) {
    if (z <= 0.0 && z == std::floor(z))
        throw std::domain_error("gamma_fn: pole at nonpositive integer z = " +
                                std::to_string(z));
    return std::tgamma(z);
}

namespace detail {

// Crossover between the ascending series and the large-argument expansion.
// The series keeps full accuracy for any x, but its term count grows like x;
// the Hankel expansion reaches ~1e-13 relative error once x is a safe factor
// above max(30, tau^2).
inline double series_crossover(double tau) {
    return std::max(30.0, 2.0 * tau * tau);
}

// log of e^{-x} I_tau(x) via the ascending series
//   I_tau(x) = (x/2)^tau sum_k (x^2/4)^k / (k! Gamma(tau+k+1)).
// All terms are positive, so there is no cancellation; the leading factor is
// kept in log form to survive tau*log(x/2) far outside the double range.
inline double log_bessel_i_scaled_series(double tau, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 2000; ++k) {
        term *= q / ((k + 1.0) * (tau + k + 1.0));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return tau * std::log(0.5 * x) - std::lgamma(tau + 1.0) + std::log(sum) - x;
}

// log of e^{-x} I_tau(x) via the Hankel asymptotic expansion
//   I_tau(x) ~ e^x (2 pi x)^{-1/2} sum_k (-1)^k a_k(tau) / x^k,
//   a_k(tau) = prod_{j=1..k} (4 tau^2 - (2j-1)^2) / (k! 8^k).
// Summed to the smallest term.
inline double log_bessel_i_scaled_asymptotic(double tau, double x) {
    const double mu = 4.0 * tau * tau;
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        if (std::abs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-17 * std::abs(sum)) break;
    }
    return -0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

inline void check_args(double tau, double x) {
    if (!(tau > -1.0))
        throw std::domain_error("bessel_i: order tau must be > -1");
    if (!(x > 0.0))
        throw std::domain_error("bessel_i: argument x must be > 0");
}

}  // namespace detail

enum class BesselRegime { Series, Asymptotic };

inline BesselRegime bessel_i_regime(double tau, double x) {
    return x <= detail::series_crossover(tau) ? BesselRegime::Series
                                              : BesselRegime::Asymptotic;
}

// log(e^{-x} I_tau(x)); finite for every x in the floating range.
inline double log_bessel_i_scaled(double tau, double x) {
    detail::check_args(tau, x);
    return bessel_i_regime(tau, x) == BesselRegime::Series
               ? detail::log_bessel_i_scaled_series(tau, x)
               : detail::log_bessel_i_scaled_asymptotic(tau, x);
}

// e^{-x} I_tau(x)
inline double bessel_i_scaled(double tau, double x) {
    return std::exp(log_bessel_i_scaled(tau, x));
}
inline double bessel_i_scaled(BesselOrder tau, double x) {
    return bessel_i_scaled(tau.tau, x);
}

// I_tau(x).  Signals overflow when the unscaled value exceeds the floating
// range; callers that hit this must switch to the scaled variant.
inline double bessel_i(double tau, double x) {
    const double lg = log_bessel_i_scaled(tau, x) + x;
    if (lg > 709.0)
        throw std::overflow_error("bessel_i: unscaled value overflows, use "
                                  "bessel_i_scaled");
    return std::exp(lg);
}
inline double bessel_i(BesselOrder tau, double x) { return bessel_i(tau.tau, x); }

}  // namespace bessel_hardy
