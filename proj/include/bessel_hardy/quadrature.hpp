#pragma once

// Composite Gauss-Legendre quadrature on panels, panel builders graded
// toward the origin (for the power-weight singularity) and toward the
// kernel's diagonal, and log-spaced t-grids for the maximal function.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace bessel_hardy {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Nodes by Newton iteration on P_n; plenty for n <= 64.
inline const GaussRule& gauss_legendre(int n) {
    static thread_local std::map<int, GaussRule> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

inline double integrate_interval(const std::function<double(double)>& f,
                                 double a, double b, int n = 16) {
    const GaussRule& g = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

// Integrate over consecutive panels given by breakpoints.
inline double integrate_panels(const std::function<double(double)>& f,
                               const std::vector<double>& breaks, int n = 16) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        s += integrate_interval(f, breaks[i], breaks[i + 1], n);
    return s;
}

// Uniform breakpoints on [a, b].
inline std::vector<double> linear_breaks(double a, double b, int panels) {
    std::vector<double> v(panels + 1);
    for (int i = 0; i <= panels; ++i)
        v[i] = a + (b - a) * i / panels;
    return v;
}

// Geometrically graded breakpoints from a down toward 0 (first point is
// a * ratio^panels), then up to b uniformly in log.
inline std::vector<double> log_breaks(double a, double b, int panels) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("log_breaks: 0 < a < b");
    std::vector<double> v(panels + 1);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i <= panels; ++i)
        v[i] = std::exp(la + (lb - la) * i / panels);
    return v;
}

// Panels suited to integrating y -> W_t(x,y) f(y) dmu(y): geometric grading
// from near 0 up to the Gaussian bump around x, fine linear panels across
// the bump, then geometric panels out to the truncation radius.
inline std::vector<double> semigroup_breaks(double x, double t, double lo,
                                            double hi, int bump_panels = 12,
                                            int tail_panels = 10) {
    const double w = std::sqrt(t);
    const double bl = std::max(lo, x - 8.0 * w), bh = std::min(hi, x + 8.0 * w);
    std::vector<double> v;
    if (bl > lo) {
        auto head = log_breaks(std::max(lo, 1e-14 * bl), bl, tail_panels);
        if (lo < head.front()) v.push_back(lo);
        v.insert(v.end(), head.begin(), head.end());
    } else {
        v.push_back(lo);
    }
    if (bh > v.back()) {
        auto bump = linear_breaks(v.back(), bh, bump_panels);
        v.insert(v.end(), bump.begin() + 1, bump.end());
    }
    if (hi > v.back()) {
        auto tail = log_breaks(v.back(), hi, tail_panels);
        v.insert(v.end(), tail.begin() + 1, tail.end());
    }
    return v;
}

// Log-spaced grid of time points, `per_decade` points per factor of 10.
inline std::vector<double> log_t_grid(double t_min, double t_max,
                                      int per_decade = 16) {
    if (!(0.0 < t_min && t_min < t_max))
        throw std::invalid_argument("log_t_grid: 0 < t_min < t_max");
    const double l0 = std::log10(t_min), l1 = std::log10(t_max);
    const int n = std::max(2, static_cast<int>(std::ceil((l1 - l0) * per_decade)) + 1);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
    return v;
}

struct QuadratureSpec {
    int gauss_points = 12;
    double panel_tolerance = 1e-8;
    double eps_tail = 1e-4;       // truncation: tail < eps_tail * partial sum
    double t_min_factor = 1e-6;   // t-grid spans [f_min s^2, f_max s^2]
    double t_max_factor = 1e6;
    int t_per_decade = 16;
};

}  // namespace bessel_hardy
